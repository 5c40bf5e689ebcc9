#include "rsw/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rsw/errors.hpp"
#include "rsw/parallel.hpp"

namespace rsw {

StencilSystem::StencilSystem(int nx_, int ny_)
    : nx(nx_), ny(ny_), cols(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_)),
      coefs(cols.size()), rhs(cols.size(), 0.0) {
  for (std::size_t k = 0; k < cols.size(); ++k) {
    cols[k].fill(-1);
    cols[k][0] = static_cast<int>(k);
    coefs[k].fill(0.0);
  }
}

void StencilSystem::add(std::size_t row, int col, double c) {
  auto& cr = cols[row];
  for (int s = 0; s < kSlots; ++s) {
    if (cr[s] == col) {
      coefs[row][s] += c;
      return;
    }
    if (cr[s] < 0) {
      cr[s] = col;
      coefs[row][s] = c;
      return;
    }
  }
  throw std::logic_error("stencil row has more than nine entries");
}

void StencilSystem::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = rows();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (int t = 0; t < kSlots; ++t)
      if (cols[k][t] >= 0) s += coefs[k][t] * x[static_cast<std::size_t>(cols[k][t])];
    y[k] = s;
  }
}

double StencilSystem::residual_inf(std::span<const double> x) const {
  const std::size_t n = rows();
  const int chunks = ny > 0 ? ny : 1;
  const std::size_t per = (n + static_cast<std::size_t>(chunks) - 1) / static_cast<std::size_t>(chunks);
  return max_rows(chunks, [&](int c) {
    double m = 0.0;
    const std::size_t lo = static_cast<std::size_t>(c) * per, hi = std::min(n, lo + per);
    for (std::size_t k = lo; k < hi; ++k) {
      double s = -rhs[k];
      for (int t = 0; t < kSlots; ++t)
        if (cols[k][t] >= 0) s += coefs[k][t] * x[static_cast<std::size_t>(cols[k][t])];
      m = std::max(m, std::abs(s));
    }
    return m;
  });
}

double dominance_margin(const StencilSystem& sys) {
  double margin = INFINITY;
  for (std::size_t k = 0; k < sys.rows(); ++k) {
    const double d = std::abs(sys.coefs[k][0]);
    double off = 0.0;
    for (int t = 1; t < StencilSystem::kSlots; ++t)
      if (sys.cols[k][t] >= 0) off += std::abs(sys.coefs[k][t]);
    const double m = d > 0.0 ? (d - off) / d : -INFINITY;
    margin = std::min(margin, m);
  }
  return margin;
}

namespace {

// One colour half-sweep: Jacobi update of every row of colour c, reading the
// current iterate and committing afterwards so the result does not depend on
// the thread schedule.
void colour_sweep(const StencilSystem& sys, int c, std::vector<double>& x, std::vector<double>& tmp) {
  const int nx = sys.nx, ny = sys.ny;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = (c + j) % 2; i < nx; i += 2) {
      const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
      double s = sys.rhs[k];
      for (int t = 1; t < StencilSystem::kSlots; ++t)
        if (sys.cols[k][t] >= 0) s -= sys.coefs[k][t] * x[static_cast<std::size_t>(sys.cols[k][t])];
      tmp[k] = s / sys.coefs[k][0];
    }
  }
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = (c + j) % 2; i < nx; i += 2) {
      const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
      x[k] = tmp[k];
    }
  }
}

} // namespace

SolveResult solve(const StencilSystem& sys, std::span<const double> x0, const SolveOptions& opt) {
  if (x0.size() != sys.rows()) throw std::invalid_argument("initial guess has the wrong size");
  if (static_cast<std::size_t>(sys.nx) * static_cast<std::size_t>(sys.ny) != sys.rows())
    throw std::invalid_argument("stencil layout does not match the row count");

  SolveResult out;
  out.margin = dominance_margin(sys);
  if (!(out.margin > 0.0))
    throw DominanceViolation("elliptic system is not strictly diagonally dominant (margin " +
                                 std::to_string(out.margin) + ")",
                             out.margin);

  const int max_iter = opt.max_iter > 0 ? opt.max_iter : 20 * (sys.nx + sys.ny);
  double bnorm = 0.0;
  for (double b : sys.rhs) bnorm = std::max(bnorm, std::abs(b));
  const double scale = bnorm > 0.0 ? bnorm : 1.0;

  out.x.assign(x0.begin(), x0.end());
  std::vector<double> tmp(sys.rows(), 0.0);
  double res = sys.residual_inf(out.x) / scale;
  out.history.push_back(res);

  while (res > opt.tol) {
    if (out.iterations >= max_iter)
      throw NonConvergence("elliptic solve did not converge in " + std::to_string(max_iter) +
                               " sweeps (relative residual " + std::to_string(res) + ")",
                           res, out.iterations);
    colour_sweep(sys, 0, out.x, tmp);
    colour_sweep(sys, 1, out.x, tmp);
    ++out.iterations;
    res = sys.residual_inf(out.x) / scale;
    out.history.push_back(res);
  }

  if (opt.polish) {
    std::vector<double> prev;
    for (int extra = 0; extra < max_iter && res > 0.0; ++extra) {
      prev = out.x;
      colour_sweep(sys, 0, out.x, tmp);
      colour_sweep(sys, 1, out.x, tmp);
      const double next = sys.residual_inf(out.x) / scale;
      if (!(next < res)) {
        out.x.swap(prev);
        break;
      }
      res = next;
      ++out.iterations;
      out.history.push_back(res);
    }
  }
  out.residual = res;
  return out;
}

} // namespace rsw
