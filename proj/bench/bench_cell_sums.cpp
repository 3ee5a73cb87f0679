// Serial vs OpenMP lower/upper cell sums.
// Usage: bench_cell_sums [log2_float_cells=20] [log2_exact_cells=13] [repeats=3]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "hypercalc/integral.hpp"
#include "hypercalc/parser.hpp"

using namespace hypercalc;

namespace {

template <class F>
double best_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, const Integrand& f, unsigned log2_cells, ExactPolicy policy, int repeats) {
  const SimplePartition p = build_partition(Rational(0), Rational(1), Rational(1, 1L << log2_cells));
  LowerUpper s, q;
  const double ts = best_seconds(repeats, [&] { s = lower_upper_sums(f, p, Execution::serial, policy); });
  const double tp = best_seconds(repeats, [&] { q = lower_upper_sums(f, p, Execution::parallel, policy); });
  const bool exact = s.exact.has_value();
  const bool agree = exact ? (s.exact->lower == q.exact->lower && s.exact->upper == q.exact->upper)
                           : std::fabs(s.approx.lower - q.approx.lower) <= 1e-12 &&
                                 std::fabs(s.approx.upper - q.approx.upper) <= 1e-12;
  std::printf("%-22s %-6s 2^%-3u %10.4f %10.4f %8.2fx  %s\n", name, exact ? "exact" : "float", log2_cells, ts, tp,
              ts / tp, agree ? "agree" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const unsigned fcells = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 20;
  const unsigned ecells = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 13;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %-6s %-5s %10s %10s %9s\n", "integrand", "sums", "cells", "serial[s]", "openmp[s]", "speedup");

  const Integrand poly = Integrand::from_expr(parse_function("x^3-x/2+1"));
  const Integrand mono = Integrand::monotone(parse_function("exp(x)"), Direction::increasing);
  const Integrand general = Integrand::from_expr(parse_function("sin(7*x)+cos(3*x)"));

  row("x^3-x/2+1", poly, fcells, ExactPolicy::never, repeats);
  row("exp(x) monotone", mono, fcells, ExactPolicy::never, repeats);
  row("sin(7x)+cos(3x)", general, fcells, ExactPolicy::never, repeats);
  row("x^3-x/2+1", poly, ecells, ExactPolicy::require, repeats);
  return 0;
}
