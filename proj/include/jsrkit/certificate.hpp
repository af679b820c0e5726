#pragma once

// SOS Lyapunov certificates: a form p of degree 2d with PSD Gram matrices
// for p and for every γ^{2d}·p(x) − p(A_i x), plus an independent checker
// and JSON serialization.

#include <string>
#include <string_view>
#include <vector>

#include "jsrkit/matrix_set.hpp"
#include "jsrkit/symalg.hpp"

namespace jsrkit {

/// Residuals are reported relative to the block scale
/// max(‖target coefficients‖∞, max|G|).
struct BlockResidual {
  double coefficient_residual = 0.0;
  double min_eigenvalue = 0.0;
};

struct SosCertificate {
  double gamma = 0.0;
  PolyCoeffs p;
  Matrix gram_p;
  std::vector<Matrix> gram_constraints;
  std::vector<BlockResidual> residuals;  // [0] for p, [1 + i] for matrix i
};

struct VerifyOptions {
  double residual_tol = 1e-7;
  double eig_tol = 1e-7;
};

struct VerificationReport {
  bool ok = false;
  std::vector<BlockResidual> residuals;
  std::string reason;
};

/// Target coefficients of γ^{2d}·p − p∘A_i, one per matrix.
std::vector<Vector> constraint_targets(const MatrixSet& set, const PolyCoeffs& p, double gamma);

/// Checks every certificate invariant from scratch: Gram sizes, symmetry,
/// coefficient matching, and minimum eigenvalues.
VerificationReport verify_certificate(const MatrixSet& set, const SosCertificate& cert,
                                      const VerifyOptions& options = {});

/// Certificate file with an optional Gram part; `has_grams` is false when
/// the document only carries the polynomial.
struct CertificateDocument {
  SosCertificate certificate;
  bool has_grams = false;
};

std::string certificate_to_json(const SosCertificate& cert, int indent = 2);
CertificateDocument certificate_from_json(std::string_view text);

}  // namespace jsrkit
