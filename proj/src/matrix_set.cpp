#include "jsrkit/matrix_set.hpp"

#include <utility>

#include "jsrkit/errors.hpp"
#include "jsrkit/symalg.hpp"

namespace jsrkit {

MatrixSet::MatrixSet(std::vector<Matrix> matrices, std::string name)
    : matrices_(std::move(matrices)), name_(std::move(name)) {
  if (matrices_.empty()) throw PreconditionError("matrix set is empty");
  const std::size_t n = matrices_.front().rows();
  if (n == 0) throw DimensionError("matrices must be at least 1x1");
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const Matrix& a = matrices_[i];
    if (a.rows() != n || a.cols() != n) {
      throw DimensionError("matrix " + std::to_string(i + 1) + " is " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!a.all_finite()) throw PreconditionError("matrix " + std::to_string(i + 1) + " has non-finite entries");
  }
}

MatrixSet MatrixSet::scaled(double c) const {
  std::vector<Matrix> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(a * c);
  return MatrixSet(std::move(out), name_);
}

MatrixSet MatrixSet::lifted(int d) const {
  std::vector<Matrix> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(induced_matrix(a, d));
  return MatrixSet(std::move(out), name_);
}

Matrix lifted_sum(const MatrixSet& set, int degree) {
  Matrix sum = induced_matrix(set[0], degree);
  for (std::size_t i = 1; i < set.m(); ++i) sum += induced_matrix(set[i], degree);
  return sum;
}

}  // namespace jsrkit
