#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gram_rows.hpp"
#include "jsrkit/errors.hpp"
#include "jsrkit/lyapunov.hpp"

namespace jsrkit {

namespace {

void check_beta(double beta) {
  if (!(std::isfinite(beta) && beta > 0.0)) throw PreconditionError("beta must be positive and finite");
}

void check_form(const MatrixSet& set, const PolyCoeffs& q) {
  if (static_cast<std::size_t>(q.n()) != set.n()) {
    throw DimensionError("form has " + std::to_string(q.n()) + " variables, matrices are " +
                         std::to_string(set.n()) + "x" + std::to_string(set.n()));
  }
  if (q.coeffs.size() != q.basis.size()) throw DimensionError("coefficient vector does not match its basis");
}

}  // namespace

PolyCoeffs iterate(const MatrixSet& set, const PolyCoeffs& q, double beta, int steps) {
  check_form(set, q);
  check_beta(beta);
  if (steps < 0) throw PreconditionError("steps must be nonnegative");
  const Matrix sum = lifted_sum(set, q.degree());
  PolyCoeffs v{q.basis, Vector(q.coeffs.size(), 0.0)};
  for (int k = 0; k < steps; ++k) {
    Vector next = transpose_times(sum, v.coeffs);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = q.coeffs[i] + next[i] / beta;
    v.coeffs = std::move(next);
  }
  return v;
}

PolyCoeffs solve_fixed_point(const MatrixSet& set, const PolyCoeffs& q, double beta, double eig_rel_tol) {
  check_form(set, q);
  check_beta(beta);
  const Matrix sum = lifted_sum(set, q.degree());
  const double rho = spectral_radius(sum, eig_rel_tol);
  // ρ is only known to rounding accuracy relative to the size of the sum.
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, norm_inf(sum));
  if (beta <= rho + slack) {
    throw PreconditionError("beta = " + std::to_string(beta) + " does not exceed rho(sum of lifts) = " +
                            std::to_string(rho) + "; the iteration has no convergent fixed point");
  }
  const std::size_t n = sum.rows();
  Matrix system(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) system(i, j) = (i == j ? 1.0 : 0.0) - sum(j, i) / beta;
  }
  try {
    return PolyCoeffs{q.basis, solve_linear(system, q.coeffs)};
  } catch (const SingularMatrixError&) {
    throw PreconditionError("beta = " + std::to_string(beta) + " is an eigenvalue of the sum of lifts");
  }
}

double default_beta(const MatrixSet& set, int two_d, double eig_rel_tol) {
  return spectral_radius(lifted_sum(set, two_d), eig_rel_tol) * (1.0 + 1e-6);
}

CertifyResult certify(const MatrixSet& set, const PolyCoeffs& p, double gamma, const CertifyOptions& options) {
  check_form(set, p);
  if (p.degree() < 2 || p.degree() % 2 != 0) throw PreconditionError("certify needs a form of even degree");
  if (!(std::isfinite(gamma) && gamma > 0.0)) throw PreconditionError("gamma must be positive and finite");

  CertifyResult result;
  const double scale = max_abs(p.coeffs);
  if (scale == 0.0) {
    result.status = sdp::SdpStatus::infeasible;
    result.message = "p is identically zero";
    return result;
  }

  // Work with p/‖p‖∞ and A_i/γ so that every right-hand side is O(1).
  const PolyCoeffs p_hat{p.basis, [&] {
                           Vector c = p.coeffs;
                           for (double& x : c) x /= scale;
                           return c;
                         }()};
  const MatrixSet normalized = set.scaled(1.0 / gamma);
  const auto targets = constraint_targets(normalized, p_hat, 1.0);

  const LiftBasis gram_basis(p.n(), p.degree() / 2);
  const std::size_t big_n = gram_basis.size();
  const auto map = gram_coefficient_map(gram_basis);

  sdp::LinearMatrixProgram prog;
  prog.block_sizes.assign(set.m() + 1, big_n);
  for (std::size_t k = 0; k < map.size(); ++k) {
    prog.constraints.push_back({{{0, detail::coefficient_row(map[k])}}, p_hat.coeffs[k]});
  }
  for (std::size_t i = 0; i < set.m(); ++i) {
    for (std::size_t k = 0; k < map.size(); ++k) {
      prog.constraints.push_back({{{i + 1, detail::coefficient_row(map[k])}}, targets[i][k]});
    }
  }

  sdp::SolverOptions so;
  so.eps_feas = options.eps_feas;
  so.max_iterations = options.max_iterations;
  const sdp::SdpSolution sol = sdp::solve_feasibility(prog, so);
  result.status = sol.status;
  result.message = sol.message;
  if (sol.status != sdp::SdpStatus::feasible) return result;

  SosCertificate cert;
  cert.gamma = gamma;
  cert.p = p;
  cert.gram_p = symmetrize(sol.blocks[0]) * scale;
  const double lift_scale = std::pow(gamma, p.degree()) * scale;
  for (std::size_t i = 0; i < set.m(); ++i) cert.gram_constraints.push_back(symmetrize(sol.blocks[i + 1]) * lift_scale);

  result.verification = verify_certificate(set, cert, options.verify);
  cert.residuals = result.verification.residuals;
  if (result.verification.ok) {
    result.certificate = std::move(cert);
  } else {
    result.message = "solver reported feasible but verification failed: " + result.verification.reason;
  }
  return result;
}

}  // namespace jsrkit
