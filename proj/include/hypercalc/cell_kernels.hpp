#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "hypercalc/integral.hpp"

namespace hypercalc::kernels {

/// Per-cell (infimum, supremum) for cell i of a partition.
template <class T>
using CellFn = std::function<std::pair<T, T>(std::uint64_t)>;

/// Reference implementation: cells summed left to right.
Sums<double> sum_cells_serial(const SimplePartition& p, const CellFn<double>& bounds);
Sums<Rational> sum_cells_serial(const SimplePartition& p, const CellFn<Rational>& bounds);

/// OpenMP implementation. Exact sums combine per-thread partial sums in
/// thread order; floating sums use a reduction and may differ from the
/// serial result in the last bits.
Sums<double> sum_cells_parallel(const SimplePartition& p, const CellFn<double>& bounds);
Sums<Rational> sum_cells_parallel(const SimplePartition& p, const CellFn<Rational>& bounds);

template <class T>
Sums<T> sum_cells(const SimplePartition& p, const CellFn<T>& bounds, Execution exec) {
  return exec == Execution::serial ? sum_cells_serial(p, bounds) : sum_cells_parallel(p, bounds);
}

}  // namespace hypercalc::kernels
