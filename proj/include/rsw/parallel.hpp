#pragma once

// Loop helpers shared by the kernels. Reductions go through a per-row
// partial array followed by a fixed pairwise tree, so results are
// bit-identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rsw {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Sum of f(j) over rows j in [0, rows).
template <class RowFn>
double sum_rows(int rows, RowFn&& f) {
  std::vector<double> partial(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) partial[static_cast<std::size_t>(j)] = f(j);
  return pairwise_sum(partial);
}

template <class RowFn>
double max_rows(int rows, RowFn&& f) {
  std::vector<double> partial(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) partial[static_cast<std::size_t>(j)] = f(j);
  double m = -INFINITY;
  for (double x : partial) m = std::max(m, x);
  return m;
}

template <class RowFn>
double min_rows(int rows, RowFn&& f) {
  std::vector<double> partial(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) partial[static_cast<std::size_t>(j)] = f(j);
  double m = INFINITY;
  for (double x : partial) m = std::min(m, x);
  return m;
}

} // namespace rsw
