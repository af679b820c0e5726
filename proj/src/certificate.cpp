#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jsrkit/certificate.hpp"
#include "jsrkit/errors.hpp"

namespace jsrkit {

std::vector<Vector> constraint_targets(const MatrixSet& set, const PolyCoeffs& p, double gamma) {
  if (static_cast<std::size_t>(p.n()) != set.n()) throw DimensionError("form and matrices disagree on n");
  const double g = std::pow(gamma, p.degree());
  std::vector<Vector> out;
  out.reserve(set.m());
  for (const auto& a : set.matrices()) {
    const PolyCoeffs pa = compose_coeffs(p, a);
    Vector t(p.coeffs.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = g * p.coeffs[k] - pa.coeffs[k];
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

BlockResidual block_residual(const Matrix& g, const LiftBasis& gram_basis, const Vector& target) {
  const Vector got = gram_to_coeffs(g, gram_basis).coeffs;
  double scale = std::max(max_abs(target), max_abs(g));
  if (scale == 0.0) scale = 1.0;
  double diff = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) diff = std::max(diff, std::abs(got[k] - target[k]));
  return {diff / scale, min_eig_symmetric(symmetrize(g)) / scale};
}

}  // namespace

VerificationReport verify_certificate(const MatrixSet& set, const SosCertificate& cert, const VerifyOptions& options) {
  VerificationReport report;
  auto fail = [&report](std::string why) {
    report.ok = false;
    report.reason = std::move(why);
    return report;
  };
  const PolyCoeffs& p = cert.p;
  if (static_cast<std::size_t>(p.n()) != set.n()) return fail("form has n = " + std::to_string(p.n()));
  if (p.degree() < 2 || p.degree() % 2 != 0) return fail("form degree must be even and positive");
  if (p.coeffs.size() != p.basis.size()) return fail("coefficient vector does not match the basis");
  if (!(std::isfinite(cert.gamma) && cert.gamma > 0.0)) return fail("gamma must be positive");
  if (cert.gram_constraints.size() != set.m()) return fail("expected one constraint Gram per matrix");

  const LiftBasis gram_basis(p.n(), p.degree() / 2);
  const std::size_t big_n = gram_basis.size();
  auto shape_ok = [&](const Matrix& g) {
    if (g.rows() != big_n || g.cols() != big_n || !g.all_finite()) return false;
    return max_asymmetry(g) <= 1e-9 * std::max(1.0, max_abs(g));
  };
  if (!shape_ok(cert.gram_p)) return fail("Gram of p has the wrong size or is not symmetric");
  for (const auto& g : cert.gram_constraints) {
    if (!shape_ok(g)) return fail("constraint Gram has the wrong size or is not symmetric");
  }

  report.residuals.push_back(block_residual(cert.gram_p, gram_basis, p.coeffs));
  const auto targets = constraint_targets(set, p, cert.gamma);
  for (std::size_t i = 0; i < set.m(); ++i) {
    report.residuals.push_back(block_residual(cert.gram_constraints[i], gram_basis, targets[i]));
  }

  for (std::size_t b = 0; b < report.residuals.size(); ++b) {
    const auto& r = report.residuals[b];
    const std::string label = b == 0 ? "p" : "constraint " + std::to_string(b);
    if (!(r.coefficient_residual <= options.residual_tol)) {
      return fail("Gram of " + label + " does not reproduce its coefficients (relative residual " +
                  std::to_string(r.coefficient_residual) + ")");
    }
    if (!(r.min_eigenvalue >= -options.eig_tol)) {
      return fail("Gram of " + label + " is not PSD (relative min eigenvalue " + std::to_string(r.min_eigenvalue) + ")");
    }
  }
  report.ok = true;
  return report;
}

}  // namespace jsrkit
