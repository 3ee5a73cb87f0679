#include "hypercalc/cell_kernels.hpp"

#include <exception>
#include <vector>

#include <omp.h>

namespace hypercalc::kernels {

namespace {

double last_width_double(const SimplePartition& p) { return (p.b - p.point(p.n)).to_double(); }

// Exceptions may not cross an OpenMP region boundary; the first one is
// captured and rethrown by the calling thread.
class ErrorSlot {
 public:
  template <class F>
  void guard(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(hypercalc_error_slot)
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::exception_ptr first_;
};

}  // namespace

Sums<double> sum_cells_serial(const SimplePartition& p, const CellFn<double>& bounds) {
  double lo = 0, hi = 0;
  for (std::uint64_t i = 0; i < p.n; ++i) {
    const auto [m, M] = bounds(i);
    lo += m;
    hi += M;
  }
  const double d = p.delta.to_double();
  Sums<double> s{lo * d, hi * d};
  const double w = last_width_double(p);
  if (w > 0) {
    const auto [m, M] = bounds(p.n);
    s.lower += m * w;
    s.upper += M * w;
  }
  return s;
}

Sums<Rational> sum_cells_serial(const SimplePartition& p, const CellFn<Rational>& bounds) {
  Rational lo(0), hi(0);
  for (std::uint64_t i = 0; i < p.n; ++i) {
    const auto [m, M] = bounds(i);
    lo += m;
    hi += M;
  }
  Sums<Rational> s{lo * p.delta, hi * p.delta};
  const Rational w = p.width(p.n);
  if (!w.is_zero()) {
    const auto [m, M] = bounds(p.n);
    s.lower += m * w;
    s.upper += M * w;
  }
  return s;
}

Sums<double> sum_cells_parallel(const SimplePartition& p, const CellFn<double>& bounds) {
  double lo = 0, hi = 0;
  const auto n = static_cast<long long>(p.n);
  ErrorSlot err;
#pragma omp parallel for reduction(+ : lo, hi) schedule(static)
  for (long long i = 0; i < n; ++i) {
    err.guard([&] {
      const auto [m, M] = bounds(static_cast<std::uint64_t>(i));
      lo += m;
      hi += M;
    });
  }
  err.rethrow();
  const double d = p.delta.to_double();
  Sums<double> s{lo * d, hi * d};
  const double w = last_width_double(p);
  if (w > 0) {
    const auto [m, M] = bounds(p.n);
    s.lower += m * w;
    s.upper += M * w;
  }
  return s;
}

Sums<Rational> sum_cells_parallel(const SimplePartition& p, const CellFn<Rational>& bounds) {
  const auto n = static_cast<long long>(p.n);
  std::vector<Sums<Rational>> partial(static_cast<std::size_t>(omp_get_max_threads()));
  ErrorSlot err;
#pragma omp parallel
  {
    Sums<Rational> local{Rational(0), Rational(0)};
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      err.guard([&] {
        const auto [m, M] = bounds(static_cast<std::uint64_t>(i));
        local.lower += m;
        local.upper += M;
      });
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
  }
  err.rethrow();
  Rational lo(0), hi(0);
  for (const auto& s : partial) {
    lo += s.lower;
    hi += s.upper;
  }
  Sums<Rational> s{lo * p.delta, hi * p.delta};
  const Rational w = p.width(p.n);
  if (!w.is_zero()) {
    const auto [m, M] = bounds(p.n);
    s.lower += m * w;
    s.upper += M * w;
  }
  return s;
}

}  // namespace hypercalc::kernels
