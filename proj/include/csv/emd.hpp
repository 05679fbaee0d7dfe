#pragma once

#include <span>
#include <vector>

namespace csv {

/// Dense row-major cost matrix for the transportation solve.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        cells_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int i, int j) {
    return cells_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double at(int i, int j) const {
    return cells_[static_cast<std::size_t>(i) * cols_ + j];
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

/// Minimal-cost transportation between two non-negative mass vectors with
/// equal totals (within 1e-6; larger mismatches throw). Solved exactly with
/// the transportation simplex; Bland's pivoting rule guarantees termination.
double emd(std::span<const double> supply, std::span<const double> demand,
           const CostMatrix& cost);

}  // namespace csv
