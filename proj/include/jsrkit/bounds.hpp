#pragma once

// Upper and lower bounds on the joint spectral radius ρ(A₁, …, A_m):
//
//   lower products  max over short words w of ρ(A_w)^{1/|w|}
//   ρ_SOS,2d        SOS Lyapunov form of degree 2d (bisection over SDPs)
//   ρ_CQ,2d         common quadratic Lyapunov function of the d-lifted set
//   ρ_SR,2d         ρ(Σ A_i^[2d])^{1/2d}
//
// satisfying lower ≤ ρ ≤ ρ_SOS,2d ≤ ρ_CQ,2d ≤ ρ_SR,2d.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "jsrkit/certificate.hpp"
#include "jsrkit/matrix_set.hpp"
#include "jsrkit/sdp.hpp"

namespace jsrkit {

enum class BoundMethod { lower_products, sos, cq, sr };
const char* to_string(BoundMethod method);

struct BoundOptions {
  double tol = 1e-6;  // relative bisection width, hi − lo ≤ tol·(1 + lo)
  double eps_feas = 1e-8;
  double eig_rel_tol = 1e-10;
  std::size_t dimension_cap = 20000;
  /// Adds inflation·(Σx_i²)^d to p in the SOS program; 0 disables it.
  double inflation = 0.0;
  int max_iterations = 200;
  int bracket_product_length = 2;
};

struct BoundReport {
  BoundMethod method = BoundMethod::sr;
  std::optional<int> two_d;
  double value = 0.0;
  std::optional<std::pair<double, double>> bracket;
  std::optional<double> quality_factor;
  std::optional<SosCertificate> sos_certificate;
  std::optional<Matrix> cq_matrix;  // P with γ^{2d}P − (A_i^[d])ᵀ P A_i^[d] ⪰ 0
  std::vector<int> witness;         // 1-based word for lower_products
  double tol = 0.0;
  double eps_feas = 0.0;
  int probes = 0;
  /// True when an SDP solution at `value` backs the bound; false when the
  /// value is the ρ_SR,2d upper bracket that no probe improved on.
  bool certified = false;
};

double rho_sr(const MatrixSet& set, int two_d, const BoundOptions& options = {});

BoundReport rho_cq(const MatrixSet& set, int two_d, const BoundOptions& options = {});

/// Feasibility program for "p SOS and γ^{2d}p − p∘A_i SOS for all i": m+1 Gram
/// blocks of size binom(n+d−1, d), the coefficients of p eliminated as
/// Λ(Q₀), trace(Q₀) = size(Q₀), and A_i pre-scaled by 1/γ.
sdp::LinearMatrixProgram build_sos_feasibility(const MatrixSet& set, int two_d, double gamma, double inflation = 0.0);

BoundReport rho_sos(const MatrixSet& set, int two_d, const BoundOptions& options = {});

struct ProductBound {
  double value = 0.0;
  std::vector<int> witness;  // 1-based, A_{w_k} ⋯ A_{w_1}
};

/// Enumerates words up to length k_max, one per cyclic class (its
/// lexicographically least rotation).
ProductBound lower_bound_products(const MatrixSet& set, int k_max, std::size_t word_cap = 1'000'000,
                                  double eig_rel_tol = 1e-10);
BoundReport lower_bound_report(const MatrixSet& set, int k_max, std::size_t word_cap = 1'000'000);

/// η^{−1/2d} with η = min{m, binom(n+d−1, d)}.
double quality_factor(int n, int m, int d);

struct LiftingSizes {
  int steps = 0;
  boost::multiprecision::cpp_int two_d;
  boost::multiprecision::cpp_int kronecker;     // n^{2d}
  boost::multiprecision::cpp_int semidefinite;  // s_{2k} = binom(s_k + 1, 2), s_1 = n
  boost::multiprecision::cpp_int symmetric;     // binom(n + 2d − 1, 2d)
};
std::vector<LiftingSizes> lifting_size_table(int n, int steps);

}  // namespace jsrkit
