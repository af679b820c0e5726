#include <string>

#include "json.hpp"

#include "jsrkit/certificate.hpp"
#include "jsrkit/errors.hpp"

namespace jsrkit {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError(std::string(what) + ": rows must be nonempty arrays");
  Matrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(std::string(what) + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
      a(r, c) = j[r][c].get<double>();
    }
  }
  return a;
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("certificate: missing field '") + key + "'");
  return *it;
}

}  // namespace

std::string certificate_to_json(const SosCertificate& cert, int indent) {
  const LiftBasis& basis = cert.p.basis;
  json doc;
  doc["n"] = basis.n();
  doc["d"] = basis.d() / 2;
  doc["two_d"] = basis.d();
  doc["gamma"] = cert.gamma;
  doc["exponents"] = basis.indices();
  doc["coefficients"] = cert.p.coeffs;
  doc["gram_exponents"] = LiftBasis(basis.n(), basis.d() / 2).indices();
  doc["gram_p"] = matrix_json(cert.gram_p);
  json grams = json::array();
  for (const auto& g : cert.gram_constraints) grams.push_back(matrix_json(g));
  doc["gram_constraints"] = std::move(grams);
  json res = json::array();
  for (const auto& r : cert.residuals) {
    res.push_back({{"coefficient_residual", r.coefficient_residual}, {"min_eigenvalue", r.min_eigenvalue}});
  }
  doc["residuals"] = std::move(res);
  return doc.dump(indent);
}

CertificateDocument certificate_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("certificate: top level must be an object");
  try {
    const int n = require(doc, "n").get<int>();
    const int two_d = require(doc, "two_d").get<int>();
    if (n < 1 || two_d < 2 || two_d % 2 != 0) throw ParseError("certificate: need n >= 1 and even two_d >= 2");
    if (doc.contains("d") && doc["d"].get<int>() * 2 != two_d) throw ParseError("certificate: d and two_d disagree");

    CertificateDocument out;
    SosCertificate& cert = out.certificate;
    const LiftBasis basis(n, two_d);
    const auto exps = require(doc, "exponents").get<std::vector<Exponents>>();
    const auto coeffs = require(doc, "coefficients").get<std::vector<double>>();
    if (exps.size() != coeffs.size()) throw ParseError("certificate: exponents and coefficients differ in length");
    // Accept any exponent order; unlisted monomials are zero.
    Vector c(basis.size(), 0.0);
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k].size() != static_cast<std::size_t>(n)) throw ParseError("certificate: exponent of wrong length");
      std::size_t pos = 0;
      try {
        pos = basis.position(exps[k]);
      } catch (const DimensionError&) {
        throw ParseError("certificate: exponent not of degree two_d");
      }
      c[pos] += coeffs[k];
    }
    cert.p = PolyCoeffs{basis, std::move(c)};
    cert.gamma = doc.contains("gamma") ? doc["gamma"].get<double>() : 0.0;

    if (doc.contains("gram_p") || doc.contains("gram_constraints")) {
      if (doc.contains("gram_exponents") &&
          doc["gram_exponents"].get<std::vector<Exponents>>() != LiftBasis(n, two_d / 2).indices()) {
        throw ParseError("certificate: Gram matrices must use the canonical degree-d basis order");
      }
      cert.gram_p = matrix_from(require(doc, "gram_p"), "gram_p");
      const json& grams = require(doc, "gram_constraints");
      if (!grams.is_array()) throw ParseError("certificate: gram_constraints must be an array");
      for (const auto& g : grams) cert.gram_constraints.push_back(matrix_from(g, "gram_constraints"));
      out.has_grams = true;
    }
    if (doc.contains("residuals")) {
      for (const auto& r : doc["residuals"]) {
        cert.residuals.push_back({r.value("coefficient_residual", 0.0), r.value("min_eigenvalue", 0.0)});
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

}  // namespace jsrkit
