// Python bindings for the bound computations, the symmetric-algebra
// primitives and the Lyapunov tools. Matrices cross the boundary as
// 2-D float64 numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jsrkit/bounds.hpp"
#include "jsrkit/certificate.hpp"
#include "jsrkit/errors.hpp"
#include "jsrkit/lyapunov.hpp"
#include "jsrkit/symalg.hpp"

namespace py = pybind11;
using namespace jsrkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return Matrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Array to_array(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

MatrixSet to_set(const std::vector<Array>& ms) {
  std::vector<Matrix> v;
  v.reserve(ms.size());
  for (const auto& a : ms) v.push_back(to_matrix(a));
  return MatrixSet(std::move(v));
}

BoundOptions options(double tol, double eps_feas) {
  BoundOptions o;
  o.tol = tol;
  o.eps_feas = eps_feas;
  return o;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["method"] = to_string(r.method);
  d["two_d"] = r.two_d ? py::cast(*r.two_d) : py::none();
  d["value"] = r.value;
  d["bracket"] = r.bracket ? py::cast(*r.bracket) : py::none();
  d["quality_factor"] = r.quality_factor ? py::cast(*r.quality_factor) : py::none();
  d["certified"] = r.certified;
  d["probes"] = r.probes;
  d["witness"] = r.witness;
  d["certificate"] = r.sos_certificate ? py::cast(certificate_to_json(*r.sos_certificate)) : py::none();
  d["cq_matrix"] = r.cq_matrix ? py::object(to_array(*r.cq_matrix)) : py::object(py::none());
  return d;
}

PolyCoeffs poly_from(int n, int two_d, const std::vector<double>& coeffs) {
  if (two_d < 2 || two_d % 2) throw PreconditionError("degree must be even and positive");
  PolyCoeffs p{LiftBasis(n, two_d), coeffs};
  if (p.coeffs.size() != p.basis.size()) throw DimensionError("coefficient count does not match the basis");
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint spectral radius bounds via sum-of-squares relaxations";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
  py::register_exception<CapExceededError>(m, "CapExceededError", PyExc_RuntimeError);

  m.def("rho_sr", [](const std::vector<Array>& ms, int two_d) { return rho_sr(to_set(ms), two_d); },
        py::arg("matrices"), py::arg("two_d"));
  m.def(
      "rho_sos",
      [](const std::vector<Array>& ms, int two_d, double tol, double eps_feas) {
        return report_dict(rho_sos(to_set(ms), two_d, options(tol, eps_feas)));
      },
      py::arg("matrices"), py::arg("two_d"), py::arg("tol") = 1e-6, py::arg("eps_feas") = 1e-8);
  m.def(
      "rho_cq",
      [](const std::vector<Array>& ms, int two_d, double tol, double eps_feas) {
        return report_dict(rho_cq(to_set(ms), two_d, options(tol, eps_feas)));
      },
      py::arg("matrices"), py::arg("two_d"), py::arg("tol") = 1e-6, py::arg("eps_feas") = 1e-8);
  m.def(
      "lower_bound",
      [](const std::vector<Array>& ms, int k_max) {
        const ProductBound b = lower_bound_products(to_set(ms), k_max);
        return py::make_tuple(b.value, b.witness);
      },
      py::arg("matrices"), py::arg("k_max") = 2,
      "Returns (value, witness) where witness is a 1-based word.");
  m.def("quality_factor", &quality_factor, py::arg("n"), py::arg("m"), py::arg("d"));
  m.def(
      "lifting_sizes",
      [](int n, int steps) {
        py::list rows;
        for (const auto& r : lifting_size_table(n, steps)) {
          py::dict d;
          // cpp_int goes through its decimal string so arbitrary sizes survive
          auto big = [](const boost::multiprecision::cpp_int& v) {
            return py::int_(py::str(v.str()));
          };
          d["two_d"] = big(r.two_d);
          d["kronecker"] = big(r.kronecker);
          d["semidefinite"] = big(r.semidefinite);
          d["symmetric"] = big(r.symmetric);
          rows.append(d);
        }
        return rows;
      },
      py::arg("n"), py::arg("steps") = 5);

  m.def("lift_vector", [](const std::vector<double>& x, int d) { return lift_vector(x, d); }, py::arg("x"),
        py::arg("d"));
  m.def("induced_matrix", [](const Array& a, int d) { return to_array(induced_matrix(to_matrix(a), d)); },
        py::arg("a"), py::arg("d"));
  m.def("permanent", [](const Array& a) { return permanent(to_matrix(a)); }, py::arg("a"));
  m.def(
      "basis",
      [](int n, int d) {
        const LiftBasis b(n, d);
        std::vector<Exponents> out;
        for (std::size_t k = 0; k < b.size(); ++k) out.push_back(b.index(k));
        return out;
      },
      py::arg("n"), py::arg("d"), "Exponent tuples of the degree-d lift basis in order.");

  m.def(
      "solve_fixed_point",
      [](const std::vector<Array>& ms, int two_d, std::optional<double> beta) {
        const MatrixSet set = to_set(ms);
        const double b = beta ? *beta : default_beta(set, two_d);
        const PolyCoeffs q = sphere_power(static_cast<int>(set.n()), two_d / 2);
        return solve_fixed_point(set, q, b).coeffs;
      },
      py::arg("matrices"), py::arg("two_d"), py::arg("beta") = py::none(),
      "Fixed point p = q + (1/beta) sum p(A_i x) with q = |x|^{2d}, in the scaled basis.");
  m.def(
      "certify",
      [](const std::vector<Array>& ms, int two_d, const std::vector<double>& coeffs, double gamma) {
        const MatrixSet set = to_set(ms);
        const CertifyResult r = certify(set, poly_from(static_cast<int>(set.n()), two_d, coeffs), gamma);
        py::dict d;
        d["ok"] = r.ok();
        d["status"] = sdp::to_string(r.status);
        d["message"] = r.message;
        d["certificate"] = r.certificate ? py::cast(certificate_to_json(*r.certificate)) : py::none();
        return d;
      },
      py::arg("matrices"), py::arg("two_d"), py::arg("coeffs"), py::arg("gamma"));
  m.def(
      "verify_certificate",
      [](const std::vector<Array>& ms, const std::string& text) {
        const CertificateDocument doc = certificate_from_json(text);
        if (!doc.has_grams) throw ParseError("certificate has no Gram matrices to verify");
        const VerificationReport v = verify_certificate(to_set(ms), doc.certificate);
        return py::make_tuple(v.ok, v.reason);
      },
      py::arg("matrices"), py::arg("certificate_json"), "Returns (ok, reason) for a certificate JSON document.");
}
