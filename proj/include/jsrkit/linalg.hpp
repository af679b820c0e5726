#pragma once

// Dense real linear algebra used throughout jsrkit: a row-major matrix type,
// eigenvalues of general matrices (balancing + Hessenberg + Francis QR),
// symmetric eigen-decomposition, LU and Cholesky solves.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "jsrkit/errors.hpp"

namespace jsrkit {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `data`, interpreted row-major.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  Matrix transpose() const;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// y = Aᵀx without forming the transpose.
Vector transpose_times(const Matrix& a, std::span<const double> x);

double norm_inf(const Matrix& a);  // max row sum
double max_abs(const Matrix& a);
double max_abs(std::span<const double> x);
double norm2(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
/// Frobenius inner product ⟨A, B⟩ = trace(AᵀB).
double frobenius_dot(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);

/// Returns (A + Aᵀ)/2.
Matrix symmetrize(const Matrix& a);
double max_asymmetry(const Matrix& a);

/// All eigenvalues of a real square matrix, unordered.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

/// max |λ| over the eigenvalues of `m`.
///
/// `rel_tol` must lie in (0, 1e-2]. The QR iteration deflates at machine
/// precision, which meets any admissible tolerance for non-defective spectra;
/// for defective eigenvalues of multiplicity k the attainable accuracy is
/// about eps^(1/k).
double spectral_radius(const Matrix& m, double rel_tol = 1e-10);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column j is the eigenvector for values[j]
};

/// Cyclic Jacobi eigen-decomposition. Symmetry is required to 1e-12 relative.
SymmetricEigen eigen_symmetric(const Matrix& s);
double min_eig_symmetric(const Matrix& s);

/// LU with partial pivoting; throws SingularMatrixError when a pivot
/// vanishes relative to the matrix scale.
Vector solve_linear(const Matrix& m, std::span<const double> b);

class LuFactor {
 public:
  explicit LuFactor(Matrix m);
  Vector solve(std::span<const double> b) const;
  std::size_t size() const noexcept { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

/// Lower-triangular Cholesky factor; returns false if `s` is not
/// numerically positive definite.
bool cholesky(const Matrix& s, Matrix& lower);
/// Solves L Lᵀ x = b given the lower factor.
Vector cholesky_solve(const Matrix& lower, std::span<const double> b);
/// Inverse of a lower-triangular matrix.
Matrix lower_inverse(const Matrix& lower);

}  // namespace jsrkit
