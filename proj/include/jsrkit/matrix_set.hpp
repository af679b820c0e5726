#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jsrkit/linalg.hpp"

namespace jsrkit {

/// A nonempty finite set {A₁, …, A_m} of real n×n matrices.
class MatrixSet {
 public:
  explicit MatrixSet(std::vector<Matrix> matrices, std::string name = {});

  std::size_t n() const noexcept { return matrices_.front().rows(); }
  std::size_t m() const noexcept { return matrices_.size(); }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const Matrix& operator[](std::size_t i) const { return matrices_.at(i); }
  const std::string& name() const noexcept { return name_; }

  /// {c·A_i}
  MatrixSet scaled(double c) const;
  /// {A_i^[d]}
  MatrixSet lifted(int d) const;

 private:
  std::vector<Matrix> matrices_;
  std::string name_;
};

/// Σ_i A_i^[degree].
Matrix lifted_sum(const MatrixSet& set, int degree);

}  // namespace jsrkit
