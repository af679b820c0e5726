#pragma once

// Polynomial Lyapunov iteration V_{k+1}(x) = Q(x) + (1/β) Σ_i V_k(A_i x), its
// fixed point, and SOS certification of a candidate form at a given γ.

#include <optional>
#include <string>

#include "jsrkit/certificate.hpp"
#include "jsrkit/matrix_set.hpp"
#include "jsrkit/sdp.hpp"
#include "jsrkit/symalg.hpp"

namespace jsrkit {

/// V_steps from V_0 = 0, using v_{k+1} = q + (1/β)(Σ A_i^[2d])ᵀ v_k.
PolyCoeffs iterate(const MatrixSet& set, const PolyCoeffs& q, double beta, int steps);

/// Solves (I − (1/β) Σ A_i^[2d])ᵀ v = q. Requires β > ρ(Σ A_i^[2d]);
/// throws PreconditionError otherwise.
PolyCoeffs solve_fixed_point(const MatrixSet& set, const PolyCoeffs& q, double beta, double eig_rel_tol = 1e-10);

/// ρ(Σ A_i^[two_d])·(1 + 1e-6).
double default_beta(const MatrixSet& set, int two_d, double eig_rel_tol = 1e-10);

struct CertifyOptions {
  double eps_feas = 1e-8;
  int max_iterations = 200;
  VerifyOptions verify{};
};

struct CertifyResult {
  sdp::SdpStatus status = sdp::SdpStatus::numerical_failure;
  std::optional<SosCertificate> certificate;  // set iff verification passed
  VerificationReport verification;
  std::string message;

  bool ok() const noexcept { return certificate.has_value(); }
};

/// Searches Gram matrices for p and for each γ^{2d}p − p∘A_i with p held
/// fixed, then re-verifies the result with verify_certificate.
CertifyResult certify(const MatrixSet& set, const PolyCoeffs& p, double gamma, const CertifyOptions& options = {});

}  // namespace jsrkit
