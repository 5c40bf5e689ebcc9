#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace rsw {

/// Sparse system with at most nine entries per row, one row per cell.
///
/// Slot 0 of every row holds the diagonal; unused slots have column -1.
/// Rows are numbered j-major on an nx by ny layout, which also fixes the
/// red-black colouring (i + j) % 2 used by the solver.
struct StencilSystem {
  static constexpr int kSlots = 9;

  int nx = 0, ny = 0;
  std::vector<std::array<int, kSlots>> cols;
  std::vector<std::array<double, kSlots>> coefs;
  std::vector<double> rhs;

  StencilSystem() = default;
  StencilSystem(int nx, int ny);

  std::size_t rows() const { return rhs.size(); }
  /// Adds c to entry (row, col), merging with an existing slot.
  void add(std::size_t row, int col, double c);
  double diag(std::size_t row) const { return coefs[row][0]; }

  void apply(std::span<const double> x, std::span<double> y) const;
  /// max_k |(A x - rhs)_k|
  double residual_inf(std::span<const double> x) const;
};

/// min over rows of (|diag| - sum |off|) / |diag|.
double dominance_margin(const StencilSystem& sys);

struct SolveOptions {
  double tol = 1e-12;
  /// <= 0 selects 20 (nx + ny).
  int max_iter = 0;
  /// Keep sweeping past tol while the residual still drops.
  bool polish = true;
};

struct SolveResult {
  std::vector<double> x;
  int iterations = 0;
  /// ||A x - rhs||_inf / ||rhs||_inf at return.
  double residual = 0.0;
  double margin = 0.0;
  std::vector<double> history;
};

/// Red-black stationary iteration from the initial guess x0.
/// Throws DominanceViolation when the system is not strictly dominant and
/// NonConvergence when the iteration budget runs out.
SolveResult solve(const StencilSystem& sys, std::span<const double> x0,
                  const SolveOptions& opt = {});

} // namespace rsw
