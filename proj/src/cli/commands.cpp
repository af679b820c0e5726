#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "jsrkit/bounds.hpp"
#include "jsrkit/cli.hpp"
#include "jsrkit/errors.hpp"
#include "jsrkit/lyapunov.hpp"
#include "jsrkit/sdp.hpp"

#ifndef JSRKIT_VERSION
#define JSRKIT_VERSION "0.0.0"
#endif

namespace jsrkit::cli {

using nlohmann::json;

namespace {

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string truncate3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::floor(v * 1000.0 + 1e-9) / 1000.0);
  return buf;
}

struct Loaded {
  InputDocument doc;
  std::string digest;
};

Loaded load(const std::string& path, const std::string& format) {
  const std::string bytes = read_file(path);
  Loaded l;
  l.doc = format == "txt" ? parse_input_txt(bytes) : parse_input_json(bytes);
  l.digest = sha256_hex(bytes);
  return l;
}

double eps_from_env() {
  const char* env = std::getenv("JSRKIT_EPS_FEAS");
  if (env == nullptr || *env == '\0') return 1e-8;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 1e-10 && v <= 1e-4)) {
    throw ParseError(std::string("JSRKIT_EPS_FEAS must be a number in [1e-10, 1e-4], got '") + env + "'");
  }
  return v;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ParseError("write to '" + path + "' failed");
}

json report_json(const BoundReport& r, double seconds) {
  json j;
  j["method"] = to_string(r.method);
  j["two_d"] = r.two_d ? json(*r.two_d) : json(nullptr);
  j["value"] = r.value;
  if (r.bracket) j["bracket"] = {r.bracket->first, r.bracket->second};
  if (r.quality_factor) j["quality_factor"] = *r.quality_factor;
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (r.method == BoundMethod::sos || r.method == BoundMethod::cq) {
    j["certified"] = r.certified;
    j["probes"] = r.probes;
    j["tol"] = r.tol;
    j["eps_feas"] = r.eps_feas;
  }
  j["wall_time_s"] = seconds;
  return j;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string input;
  std::string format = "json";
  int degree = 4;
  std::string method = "all";
  double tol = 1e-6;
  int max_product_length = 2;
  bool json_out = false;
  std::string certificate_out;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.degree < 2 || a.degree % 2 != 0) throw ParseError("--degree must be an even integer >= 2");
  if (a.max_product_length < 1) throw ParseError("--max-product-length must be >= 1");
  const Loaded in = load(a.input, a.format);
  const MatrixSet set = in.doc.to_set();

  BoundOptions opt;
  opt.tol = a.tol;
  opt.eps_feas = eps_from_env();
  opt.bracket_product_length = a.max_product_length;

  std::vector<BoundMethod> methods;
  if (a.method == "all") {
    methods = {BoundMethod::lower_products, BoundMethod::sos, BoundMethod::cq, BoundMethod::sr};
  } else if (a.method == "lower") {
    methods = {BoundMethod::lower_products};
  } else if (a.method == "sos") {
    methods = {BoundMethod::sos};
  } else if (a.method == "cq") {
    methods = {BoundMethod::cq};
  } else {
    methods = {BoundMethod::sr};
  }

  std::vector<std::pair<BoundReport, double>> results;
  for (BoundMethod m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    BoundReport r;
    switch (m) {
      case BoundMethod::lower_products:
        r = lower_bound_report(set, a.max_product_length);
        break;
      case BoundMethod::sos:
        r = rho_sos(set, a.degree, opt);
        break;
      case BoundMethod::cq:
        r = rho_cq(set, a.degree, opt);
        break;
      case BoundMethod::sr:
        r.method = BoundMethod::sr;
        r.two_d = a.degree;
        r.value = rho_sr(set, a.degree, opt);
        r.certified = true;
        break;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.emplace_back(std::move(r), secs);
  }

  if (!a.certificate_out.empty()) {
    const BoundReport* sos = nullptr;
    for (const auto& [r, _] : results)
      if (r.method == BoundMethod::sos) sos = &r;
    if (sos == nullptr) throw ParseError("--certificate-out needs the sos method");
    if (!sos->sos_certificate) throw NumericalFailure("no SOS certificate was produced at the reported value");
    write_text(a.certificate_out, certificate_to_json(*sos->sos_certificate) + "\n", out);
  }

  if (a.json_out) {
    json doc;
    doc["tool"] = "jsrkit";
    doc["version"] = JSRKIT_VERSION;
    doc["input"] = {{"path", a.input},
                    {"name", in.doc.name},
                    {"sha256", in.digest},
                    {"n", set.n()},
                    {"m", set.m()}};
    doc["settings"] = {{"degree", a.degree},
                       {"tol", opt.tol},
                       {"eps_feas", opt.eps_feas},
                       {"max_product_length", a.max_product_length}};
    json arr = json::array();
    for (const auto& [r, secs] : results) arr.push_back(report_json(r, secs));
    doc["results"] = std::move(arr);
    out << doc.dump(2) << "\n";
    return exit_ok;
  }

  out << "set: " << (in.doc.name.empty() ? a.input : in.doc.name) << "  (m = " << set.m() << ", n = " << set.n()
      << ")\n";
  out << pad("method", 8) << pad("2d", 5) << pad("value", 12) << pad("quality", 10) << pad("time[s]", 10) << "note\n";
  for (const auto& [r, secs] : results) {
    std::string note;
    if (!r.witness.empty()) {
      note = "witness (";
      for (std::size_t i = 0; i < r.witness.size(); ++i) note += (i ? "," : "") + std::to_string(r.witness[i]);
      note += ")";
    } else if ((r.method == BoundMethod::sos || r.method == BoundMethod::cq) && !r.certified) {
      note = "uncertified (sr bracket)";
    }
    char tbuf[32];
    std::snprintf(tbuf, sizeof tbuf, "%.3f", secs);
    out << pad(to_string(r.method), 8) << pad(r.two_d ? std::to_string(*r.two_d) : "-", 5) << pad(sig6(r.value), 12)
        << pad(r.quality_factor ? sig6(*r.quality_factor) : "-", 10) << pad(tbuf, 10) << note << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- lift

int cmd_lift(const std::string& input, const std::string& format, int d, int index, std::ostream& out) {
  if (d < 1) throw ParseError("--degree must be >= 1");
  const Loaded in = load(input, format);
  const MatrixSet set = in.doc.to_set();
  if (index < 1 || static_cast<std::size_t>(index) > set.m()) {
    throw ParseError("--index " + std::to_string(index) + " is out of range 1.." + std::to_string(set.m()));
  }
  const Matrix lifted = induced_matrix(set[static_cast<std::size_t>(index - 1)], d);
  const LiftBasis basis(static_cast<int>(set.n()), d);
  out << "A_" << index << "^[" << d << "]  (" << basis.size() << "x" << basis.size() << ")\n";
  out << "basis:";
  for (const auto& alpha : basis.indices()) {
    out << " (";
    for (std::size_t i = 0; i < alpha.size(); ++i) out << (i ? "," : "") << alpha[i];
    out << ")";
  }
  out << "\n";
  for (std::size_t r = 0; r < lifted.rows(); ++r) {
    for (std::size_t c = 0; c < lifted.cols(); ++c) {
      const double v = lifted(r, c);
      out << (c ? " " : "") << pad(sig6(v == 0.0 ? 0.0 : v), 12);
    }
    out << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- sizes

int cmd_sizes(int n, int steps, int m, bool json_out, std::ostream& out) {
  if (n < 1 || steps < 1 || m < 1) throw ParseError("--n, --steps and --m must be >= 1");
  const auto rows = lifting_size_table(n, steps);
  if (json_out) {
    json arr = json::array();
    for (const auto& r : rows) {
      const double acc = std::pow(static_cast<double>(m), -1.0 / r.two_d.convert_to<double>());
      arr.push_back({{"steps", r.steps},
                     {"two_d", r.two_d.str()},
                     {"kronecker", r.kronecker.str()},
                     {"semidefinite", r.semidefinite.str()},
                     {"symmetric", r.symmetric.str()},
                     {"accuracy", truncate3(acc)}});
    }
    out << json({{"n", n}, {"m", m}, {"rows", arr}}).dump(2) << "\n";
    return exit_ok;
  }
  out << "n = " << n << ", m = " << m << "\n";
  out << pad("steps/2d", 10) << pad("accuracy", 10) << pad("kronecker", 36) << pad("semidefinite", 36) << "symmetric\n";
  for (const auto& r : rows) {
    const double acc = std::pow(static_cast<double>(m), -1.0 / r.two_d.convert_to<double>());
    out << pad(std::to_string(r.steps) + "/" + r.two_d.str(), 10) << pad(truncate3(acc), 10)
        << pad(r.kronecker.str(), 36) << pad(r.semidefinite.str(), 36) << r.symmetric.str() << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- export-sdpa

int cmd_export_sdpa(const std::string& input, const std::string& format, int degree, double gamma,
                    const std::string& path, std::ostream& out) {
  if (degree < 2 || degree % 2 != 0) throw ParseError("--degree must be an even integer >= 2");
  if (!(gamma > 0.0 && std::isfinite(gamma))) throw ParseError("--gamma must be positive");
  const Loaded in = load(input, format);
  const auto prog = build_sos_feasibility(in.doc.to_set(), degree, gamma);
  write_text(path, sdp::export_sdpa(prog), out);
  return exit_ok;
}

// ---------------------------------------------------------------- certify

int cmd_certify(const std::string& input, const std::string& format, const std::string& poly,
                std::optional<double> gamma, std::ostream& out) {
  const Loaded in = load(input, format);
  const MatrixSet set = in.doc.to_set();
  CertificateDocument doc = certificate_from_json(read_file(poly));
  SosCertificate& cert = doc.certificate;
  if (gamma) cert.gamma = *gamma;
  if (!(cert.gamma > 0.0)) throw ParseError("certificate has no gamma; pass --gamma");
  if (static_cast<std::size_t>(cert.p.n()) != set.n()) {
    out << "REJECTED: certificate is for n = " << cert.p.n() << ", matrices are " << set.n() << "x" << set.n() << "\n";
    return exit_certificate_rejected;
  }

  VerificationReport report;
  if (doc.has_grams) {
    report = verify_certificate(set, cert);
  } else {
    CertifyOptions copt;
    copt.eps_feas = eps_from_env();
    const CertifyResult res = certify(set, cert.p, cert.gamma, copt);
    if (res.status == sdp::SdpStatus::numerical_failure && !res.ok() && res.verification.residuals.empty()) {
      throw NumericalFailure("certify: " + res.message);
    }
    report = res.verification;
    if (!res.ok() && report.reason.empty()) report.reason = "no Gram matrices exist at this gamma (" + res.message + ")";
  }

  out << "gamma " << sig6(cert.gamma) << ", degree " << cert.p.degree() << ", " << set.m() << " matrices\n";
  for (std::size_t b = 0; b < report.residuals.size(); ++b) {
    out << "  " << pad(b == 0 ? "p" : "A_" + std::to_string(b), 6) << "  coefficient residual "
        << pad(sig6(report.residuals[b].coefficient_residual), 12) << "  min eigenvalue "
        << sig6(report.residuals[b].min_eigenvalue) << "\n";
  }
  if (report.ok) {
    out << "VERIFIED\n";
    return exit_ok;
  }
  out << "REJECTED: " << report.reason << "\n";
  return exit_certificate_rejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint spectral radius bounds via SOS and symmetric-algebra liftings", "jsrkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", JSRKIT_VERSION);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Compute JSR bounds for a matrix set");
  bounds->add_option("input", ba.input, "Matrix set file")->required();
  bounds->add_option("--format", ba.format, "Input format")->check(CLI::IsMember({"json", "txt"}));
  bounds->add_option("--degree", ba.degree, "Polynomial degree 2d (even)");
  bounds->add_option("--method", ba.method, "Which bound to compute")
      ->check(CLI::IsMember({"sos", "cq", "sr", "lower", "all"}));
  bounds->add_option("--tol", ba.tol, "Relative bisection tolerance")->check(CLI::Range(1e-12, 0.5));
  bounds->add_option("--max-product-length", ba.max_product_length, "Longest product for the lower bound");
  bounds->add_flag("--json", ba.json_out, "Emit a JSON run report");
  bounds->add_option("--certificate-out", ba.certificate_out, "Write the SOS certificate here ('-' for stdout)");

  std::string lift_input, lift_format = "json";
  int lift_d = 2, lift_index = 1;
  auto* lift = app.add_subcommand("lift", "Print an induced matrix A_k^[d]");
  lift->add_option("input", lift_input, "Matrix set file")->required();
  lift->add_option("--format", lift_format, "Input format")->check(CLI::IsMember({"json", "txt"}));
  lift->add_option("--degree", lift_d, "Lift degree d");
  lift->add_option("--index", lift_index, "1-based matrix index");

  int sz_n = 2, sz_steps = 5, sz_m = 2;
  bool sz_json = false;
  auto* sizes = app.add_subcommand("sizes", "Compare lifting sizes (Kronecker, semidefinite, symmetric)");
  sizes->add_option("--n", sz_n, "Matrix dimension");
  sizes->add_option("--steps", sz_steps, "Number of doubling steps (2d = 2^steps)");
  sizes->add_option("--m", sz_m, "Number of matrices for the accuracy column");
  sizes->add_flag("--json", sz_json, "Emit JSON");

  std::string ex_input, ex_format = "json", ex_out;
  int ex_degree = 4;
  double ex_gamma = 0.0;
  auto* exp = app.add_subcommand("export-sdpa", "Write the SOS feasibility program at fixed gamma as SDPA sparse");
  exp->add_option("input", ex_input, "Matrix set file")->required();
  exp->add_option("output", ex_out, "Output .dat-s path ('-' for stdout)")->required();
  exp->add_option("--format", ex_format, "Input format")->check(CLI::IsMember({"json", "txt"}));
  exp->add_option("--degree", ex_degree, "Polynomial degree 2d (even)");
  exp->add_option("--gamma", ex_gamma, "Contraction factor")->required();

  std::string ce_input, ce_format = "json", ce_poly;
  double ce_gamma = 0.0;
  auto* cert = app.add_subcommand("certify", "Verify an SOS Lyapunov certificate");
  cert->add_option("input", ce_input, "Matrix set file")->required();
  cert->add_option("--format", ce_format, "Input format")->check(CLI::IsMember({"json", "txt"}));
  cert->add_option("--poly", ce_poly, "Certificate JSON")->required();
  auto* gamma_opt = cert->add_option("--gamma", ce_gamma, "Override the certificate's gamma");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_input_error;
  }

  try {
    if (*bounds) return cmd_bounds(ba, out);
    if (*lift) return cmd_lift(lift_input, lift_format, lift_d, lift_index, out);
    if (*sizes) return cmd_sizes(sz_n, sz_steps, sz_m, sz_json, out);
    if (*exp) return cmd_export_sdpa(ex_input, ex_format, ex_degree, ex_gamma, ex_out, out);
    if (*cert) {
      std::optional<double> g;
      if (gamma_opt->count() > 0) g = ce_gamma;
      return cmd_certify(ce_input, ce_format, ce_poly, g, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical_failure;
  }
  return exit_input_error;
}

}  // namespace jsrkit::cli
