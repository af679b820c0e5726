#pragma once

// Symmetric algebra of R^n: degree-d monomial bases, the norm-preserving
// lift x ↦ x^[d], induced matrices A^[d] with A^[d] x^[d] = (Ax)^[d], matrix
// permanents, and degree-2d forms stored in the scaled monomial basis.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "jsrkit/linalg.hpp"

namespace jsrkit {

/// Exponent multi-index α = (α₁, …, α_n).
using Exponents = std::vector<int>;

std::size_t binomial(std::size_t n, std::size_t k);  // throws CapExceededError on overflow
double factorial(int k);

/// Ordered basis of degree-d monomials in n variables.
///
/// Order is lexicographic descending on exponent tuples, so for n = 2, d = 2
/// it reads x₁², x₁x₂, x₂². Entry α carries the scaling √(d! / Πα_i!).
/// Instances are cheap to copy: the index tables are shared.
class LiftBasis {
 public:
  LiftBasis(int n, int d);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return data_->indices.size(); }

  const std::vector<Exponents>& indices() const noexcept { return data_->indices; }
  const Exponents& index(std::size_t k) const { return data_->indices.at(k); }
  const Vector& scalings() const noexcept { return data_->scalings; }
  double scaling(std::size_t k) const { return data_->scalings.at(k); }

  /// Position of `alpha` in the basis; throws DimensionError if absent.
  std::size_t position(const Exponents& alpha) const;

  friend bool operator==(const LiftBasis& a, const LiftBasis& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  struct Data {
    std::vector<Exponents> indices;
    Vector scalings;
    std::map<Exponents, std::size_t> lookup;
  };
  int n_;
  int d_;
  std::shared_ptr<const Data> data_;
};

LiftBasis enumerate_basis(int n, int d);

/// Entries scaling[α]·x^α over enumerate_basis(dim x, d).
Vector lift_vector(std::span<const double> x, int d);

enum class PermanentMethod { ryser, naive };

/// Ryser handles up to 20×20, the permutation sum up to 8×8.
double permanent(const Matrix& m, PermanentMethod method = PermanentMethod::ryser);

/// A^[d] computed entry-wise as per A(α,β) / √(μ(α)μ(β)).
Matrix induced_matrix(const Matrix& a, int d);

/// Homogeneous form p(x) = ⟨coeffs, x^[2d]⟩ in the scaled basis of its degree.
struct PolyCoeffs {
  LiftBasis basis{1, 1};
  Vector coeffs;

  int n() const noexcept { return basis.n(); }
  int degree() const noexcept { return basis.d(); }
};

PolyCoeffs zero_poly(int n, int degree);
/// Plain monomial coefficients (coefficient of x^α) to scaled coefficients.
PolyCoeffs from_monomial_coeffs(const LiftBasis& basis, std::span<const double> monomial);
/// Scaled coefficients to plain monomial coefficients.
Vector to_monomial_coeffs(const PolyCoeffs& p);
/// (Σ x_i²)^d as a degree-2d form.
PolyCoeffs sphere_power(int n, int d);

/// Coefficients of x ↦ p(Ax), i.e. (A^[deg])ᵀ p.coeffs.
PolyCoeffs compose_coeffs(const PolyCoeffs& p, const Matrix& a);
/// Same as compose_coeffs with a precomputed induced matrix of the form's degree.
PolyCoeffs compose_with_lift(const PolyCoeffs& p, const Matrix& lifted);

/// Coefficients of (x^[d])ᵀ Q x^[d] in the scaled degree-2d basis.
PolyCoeffs gram_to_coeffs(const Matrix& q, const LiftBasis& basis);

/// Plain monomial coefficients of mᵀ Q m for an arbitrary list of unscaled
/// monomials m (for example the list [x², y², xy]).
std::map<Exponents, double> gram_to_monomial_coeffs(const Matrix& q, std::span<const Exponents> monomials);

double eval_poly(const PolyCoeffs& p, std::span<const double> x);

/// Sparse form of the linear map Q ↦ gram_to_coeffs(Q). List k holds
/// upper-triangle positions (i ≤ j) with weights w such that
/// coeffs[k] = Σ_{i<j} 2w·Q_ij + Σ_{i=j} w·Q_ii for symmetric Q.
struct GramMapEntry {
  std::size_t i;
  std::size_t j;
  double weight;
};
std::vector<std::vector<GramMapEntry>> gram_coefficient_map(const LiftBasis& gram_basis);

}  // namespace jsrkit
