#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "jsrkit/errors.hpp"
#include "jsrkit/lyapunov.hpp"
#include "oracles.hpp"

using namespace jsrkit;

namespace {

PolyCoeffs ando_shih_quartic(double eps) {
  // (x₁² − x₂²)² + ε(x₁² + x₂²)²
  return from_monomial_coeffs(LiftBasis(2, 4), std::vector<double>{1 + eps, 0, -2 + 2 * eps, 0, 1 + eps});
}

}  // namespace

TEST_CASE("scalar iteration converges to the geometric series") {
  const MatrixSet s({Matrix{{0.5}}});
  const PolyCoeffs q = sphere_power(1, 1);
  CHECK(iterate(s, q, 1.0, 0).coeffs[0] == 0.0);
  CHECK(iterate(s, q, 1.0, 1).coeffs[0] == 1.0);
  CHECK(iterate(s, q, 1.0, 200).coeffs[0] == doctest::Approx(4.0 / 3.0));
  CHECK(solve_fixed_point(s, q, 1.0).coeffs[0] == doctest::Approx(4.0 / 3.0));
  const PolyCoeffs z = solve_fixed_point(s, zero_poly(1, 2), 1.0);
  CHECK(z.coeffs[0] == 0.0);
}

TEST_CASE("iteration on the Ando-Shih pair is Cauchy for beta above the radius") {
  const MatrixSet as = fixtures::ando_shih();
  const PolyCoeffs q = sphere_power(2, 2);
  auto step_gap = [&](int k) {
    const PolyCoeffs a = iterate(as, q, 2.1, k - 1);
    const PolyCoeffs b = iterate(as, q, 2.1, k);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) diff = std::max(diff, std::abs(a.coeffs[i] - b.coeffs[i]));
    return diff;
  };
  // Contraction ratio is rho(sum A^[4]) / beta = 2 / 2.1.
  const double g50 = step_gap(50), g200 = step_gap(200);
  CHECK(g200 < g50 * std::pow(2.0 / 2.1, 150) * 1.5);
  CHECK(g200 < 1e-3);
  const PolyCoeffs b = iterate(as, q, 2.1, 200);
  const PolyCoeffs limit = solve_fixed_point(as, q, 2.1);
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) CHECK(b.coeffs[k] == doctest::Approx(limit.coeffs[k]).epsilon(1e-3));
}

TEST_CASE("solve_fixed_point refuses beta at or below the radius") {
  const MatrixSet as = fixtures::ando_shih();
  const PolyCoeffs q = sphere_power(2, 2);
  CHECK_THROWS_AS(solve_fixed_point(as, q, 2.0), PreconditionError);
  CHECK_THROWS_AS(solve_fixed_point(as, q, 1.5), PreconditionError);
  CHECK_THROWS_AS(solve_fixed_point(as, q, -1.0), PreconditionError);
  CHECK_THROWS_AS(solve_fixed_point(as, sphere_power(3, 2), 3.0), DimensionError);
  CHECK(default_beta(as, 4) == doctest::Approx(2.0 * (1 + 1e-6)).epsilon(1e-9));
}

TEST_CASE("fixed point near the radius certifies at gamma^4 = beta") {
  const MatrixSet as = fixtures::ando_shih();
  const double beta = 2.0 + 1e-3;
  const PolyCoeffs v = solve_fixed_point(as, sphere_power(2, 2), beta);
  CHECK(max_abs(v.coeffs) > 100.0);
  const CertifyResult r = certify(as, v, std::pow(beta, 0.25));
  CHECK(r.ok());
}

TEST_CASE("certify the Ando-Shih quartic") {
  const MatrixSet as = fixtures::ando_shih();
  const double eps = 0.01;
  const CertifyResult r = certify(as, ando_shih_quartic(eps), std::pow(1 + eps, 0.25));
  REQUIRE(r.ok());
  const SosCertificate& c = *r.certificate;
  // Each constraint polynomial is a perfect square, so its Gram has rank one.
  for (const auto& g : c.gram_constraints) {
    const SymmetricEigen e = eigen_symmetric(g);
    CHECK(e.values[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(e.values[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(e.values[2] > 1.0);
  }
  std::mt19937_64 rng(51);
  const double g4 = std::pow(c.gamma, 4);
  for (int t = 0; t < 50; ++t) {
    const Vector x = oracle::random_vector(rng, 2);
    const double px = eval_poly(c.p, x);
    for (const auto& a : as.matrices()) CHECK(g4 * px - eval_poly(c.p, a * x) >= -1e-7 * (1 + std::abs(px)));
  }
}

TEST_CASE("certify trivial and failing cases") {
  CHECK(certify(MatrixSet({Matrix(2, 2)}), sphere_power(2, 2), 1.0).ok());
  const MatrixSet as = fixtures::ando_shih();
  const PolyCoeffs bad = from_monomial_coeffs(LiftBasis(2, 4), std::vector<double>{1, 0, 0, 0, 1});
  const CertifyResult r = certify(as, bad, 1.01);
  CHECK_FALSE(r.ok());
  CHECK(r.status == sdp::SdpStatus::infeasible);
  CHECK(certify(as, zero_poly(2, 4), 1.0).status == sdp::SdpStatus::infeasible);
  CHECK_THROWS_AS(certify(as, zero_poly(2, 3), 1.0), PreconditionError);
  CHECK_THROWS_AS(certify(as, bad, 0.0), PreconditionError);
}

TEST_CASE("verify_certificate catches tampering") {
  const MatrixSet as = fixtures::ando_shih();
  const CertifyResult r = certify(as, ando_shih_quartic(0.01), std::pow(1.01, 0.25));
  REQUIRE(r.ok());
  SosCertificate c = *r.certificate;
  CHECK(verify_certificate(as, c).ok);

  SosCertificate tampered = c;
  tampered.gram_constraints[0](0, 0) += 1.0;
  const VerificationReport v = verify_certificate(as, tampered);
  CHECK_FALSE(v.ok);
  CHECK(v.residuals.at(1).coefficient_residual > 0.1);

  SosCertificate wrong_gamma = c;
  wrong_gamma.gamma = 1.0;
  CHECK_FALSE(verify_certificate(as, wrong_gamma).ok);

  const MatrixSet other({Matrix{{1, 1}, {0, 1}}, Matrix{{0, 1}, {0, -1}}});
  CHECK_FALSE(verify_certificate(other, c).ok);

  SosCertificate missing = c;
  missing.gram_constraints.pop_back();
  CHECK_FALSE(verify_certificate(as, missing).ok);
}

TEST_CASE("certificate JSON round-trip") {
  const MatrixSet as = fixtures::ando_shih();
  const CertifyResult r = certify(as, ando_shih_quartic(0.01), std::pow(1.01, 0.25));
  REQUIRE(r.ok());
  const std::string text = certificate_to_json(*r.certificate);
  const CertificateDocument doc = certificate_from_json(text);
  CHECK(doc.has_grams);
  CHECK(doc.certificate.gamma == r.certificate->gamma);
  CHECK(doc.certificate.p.coeffs == r.certificate->p.coeffs);
  CHECK(doc.certificate.gram_p == r.certificate->gram_p);
  CHECK(doc.certificate.gram_constraints == r.certificate->gram_constraints);
  CHECK(verify_certificate(as, doc.certificate).ok);

  const CertificateDocument poly_only =
      certificate_from_json(R"({"n": 2, "two_d": 4, "exponents": [[0,4],[4,0]], "coefficients": [1, 1]})");
  CHECK_FALSE(poly_only.has_grams);
  CHECK(poly_only.certificate.p.coeffs == Vector{1, 0, 0, 0, 1});
  CHECK_THROWS_AS(certificate_from_json("{"), ParseError);
  CHECK_THROWS_AS(certificate_from_json(R"({"n": 2, "two_d": 3, "exponents": [], "coefficients": []})"), ParseError);
  CHECK_THROWS_AS(certificate_from_json(R"({"n": 2, "two_d": 4, "exponents": [[1,1]], "coefficients": [1]})"),
                  ParseError);
}
