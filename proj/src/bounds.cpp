#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gram_rows.hpp"
#include "jsrkit/bounds.hpp"
#include "jsrkit/errors.hpp"

namespace jsrkit {

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::lower_products:
      return "lower";
    case BoundMethod::sos:
      return "sos";
    case BoundMethod::cq:
      return "cq";
    case BoundMethod::sr:
      return "sr";
  }
  return "unknown";
}

namespace {

void check_two_d(int two_d) {
  if (two_d < 2 || two_d % 2 != 0) throw PreconditionError("two_d must be an even integer >= 2");
}

void check_options(const BoundOptions& o) {
  if (!(o.tol > 0.0 && o.tol < 1.0)) throw PreconditionError("tol must lie in (0, 1)");
  if (!(o.inflation >= 0.0 && std::isfinite(o.inflation))) throw PreconditionError("inflation must be >= 0");
}

void check_cap(std::size_t size, std::size_t cap, const char* what) {
  if (size > cap) {
    throw CapExceededError(std::string(what) + " dimension " + std::to_string(size) + " exceeds the cap " +
                           std::to_string(cap));
  }
}

struct Probe {
  bool feasible = false;
  sdp::SdpSolution solution;
};

// Feasibility probe with the retry policy for unresolved solves.
Probe run_probe(const std::function<sdp::LinearMatrixProgram(double)>& build, double gamma, const BoundOptions& o) {
  const sdp::LinearMatrixProgram prog = build(gamma);
  sdp::SolverOptions so;
  so.eps_feas = o.eps_feas;
  so.max_iterations = o.max_iterations;
  sdp::SdpSolution sol = sdp::solve_feasibility(prog, so);
  if (sol.status == sdp::SdpStatus::numerical_failure) {
    if (sol.margin_upper < -10.0 * o.eps_feas) return {false, std::move(sol)};
    so.eps_feas = std::min(1e-4, o.eps_feas * 10.0);
    sol = sdp::solve_feasibility(prog, so);
    if (sol.status == sdp::SdpStatus::numerical_failure) {
      throw NumericalFailure("feasibility probe at gamma = " + std::to_string(gamma) +
                             " did not resolve: " + sol.message);
    }
  }
  return {sol.status == sdp::SdpStatus::feasible, std::move(sol)};
}

struct BisectionResult {
  double lo = 0.0;
  double hi = 0.0;
  int probes = 0;
  bool certified = false;
  sdp::SdpSolution solution;  // at hi when certified
};

BisectionResult bisect(const MatrixSet& set, int two_d, const BoundOptions& o,
                       const std::function<sdp::LinearMatrixProgram(double)>& build) {
  double lo = 0.0;
  for (const auto& a : set.matrices()) lo = std::max(lo, spectral_radius(a, o.eig_rel_tol));
  lo = std::max(lo, lower_bound_products(set, std::max(1, o.bracket_product_length), 1'000'000, o.eig_rel_tol).value);
  const double hi0 = rho_sr(set, two_d, o);

  BisectionResult r;
  if (hi0 == 0.0) {
    r.lo = r.hi = 0.0;
    return r;
  }
  if (lo > hi0 * (1.0 + 1e-9)) {
    throw NumericalFailure("bisection bracket inverted: lower bound " + std::to_string(lo) +
                           " exceeds the spectral-radius bound " + std::to_string(hi0));
  }
  lo = std::min(lo, hi0);
  double hi = hi0;

  // Bisect to half the requested width so that the fallback probe above hi
  // still honours hi − lo ≤ tol·(1 + lo).
  while (hi - lo > 0.5 * o.tol * (1.0 + lo)) {
    const double mid = 0.5 * (lo + hi);
    Probe p = run_probe(build, mid, o);
    ++r.probes;
    if (p.feasible) {
      hi = mid;
      r.certified = true;
      r.solution = std::move(p.solution);
    } else {
      lo = mid;
    }
  }
  if (!r.certified) {
    for (double g : {hi, hi + 0.5 * o.tol * (1.0 + lo)}) {
      Probe p = run_probe(build, g, o);
      ++r.probes;
      if (p.feasible) {
        hi = g;
        r.certified = true;
        r.solution = std::move(p.solution);
        break;
      }
    }
  }
  r.lo = lo;
  r.hi = hi;
  return r;
}

}  // namespace

double rho_sr(const MatrixSet& set, int two_d, const BoundOptions& options) {
  check_two_d(two_d);
  check_cap(binomial(set.n() + two_d - 1, two_d), options.dimension_cap, "lifted");
  const double rho = spectral_radius(lifted_sum(set, two_d), options.eig_rel_tol);
  return std::pow(rho, 1.0 / two_d);
}

sdp::LinearMatrixProgram build_sos_feasibility(const MatrixSet& set, int two_d, double gamma, double inflation) {
  check_two_d(two_d);
  if (!(std::isfinite(gamma) && gamma > 0.0)) throw PreconditionError("gamma must be positive and finite");
  const int n = static_cast<int>(set.n());
  const LiftBasis gram_basis(n, two_d / 2);
  const std::size_t big_n = gram_basis.size();
  const auto map = gram_coefficient_map(gram_basis);
  const std::size_t n_coeff = map.size();

  // Dense coefficient matrix of c_ε = Λ_ε(Q₀) as a functional of Q₀.
  std::vector<Matrix> lambda;
  lambda.reserve(n_coeff);
  for (const auto& row : map) {
    Matrix c(big_n, big_n);
    for (const auto& e : row) {
      c(e.i, e.j) = e.weight;
      c(e.j, e.i) = e.weight;
    }
    lambda.push_back(std::move(c));
  }
  const Vector sphere = inflation > 0.0 ? gram_to_coeffs(Matrix::identity(big_n), gram_basis).coeffs : Vector{};

  sdp::LinearMatrixProgram prog;
  prog.block_sizes.assign(set.m() + 1, big_n);
  for (std::size_t i = 0; i < set.m(); ++i) {
    const Matrix b = induced_matrix(set[i] * (1.0 / gamma), two_d);
    for (std::size_t delta = 0; delta < n_coeff; ++delta) {
      // Λ_δ(Q_i) − c_δ + (Bᵀc)_δ = 0, c = Λ(Q₀) + inflation·Λ(I).
      Matrix c0(big_n, big_n);
      double rhs = 0.0;
      for (std::size_t eps = 0; eps < n_coeff; ++eps) {
        const double w = b(eps, delta) - (eps == delta ? 1.0 : 0.0);
        if (w == 0.0) continue;
        c0 += lambda[eps] * w;
        if (inflation > 0.0) rhs -= inflation * w * sphere[eps];
      }
      sdp::LinearConstraint con;
      con.terms.push_back({0, detail::upper_entries(c0, 1e-15)});
      con.terms.push_back({i + 1, detail::coefficient_row(map[delta])});
      con.rhs = rhs;
      prog.constraints.push_back(std::move(con));
    }
  }
  prog.constraints.push_back({{detail::trace_term(0, big_n)}, static_cast<double>(big_n)});
  return prog.canonical();
}

BoundReport rho_sos(const MatrixSet& set, int two_d, const BoundOptions& options) {
  check_two_d(two_d);
  check_options(options);
  const int n = static_cast<int>(set.n());
  const int d = two_d / 2;
  check_cap(binomial(set.n() + d - 1, d), options.dimension_cap, "Gram");

  BoundReport report;
  report.method = BoundMethod::sos;
  report.two_d = two_d;
  report.quality_factor = quality_factor(n, static_cast<int>(set.m()), d);
  report.tol = options.tol;
  report.eps_feas = options.eps_feas;

  const auto r = bisect(set, two_d, options, [&](double g) {
    return build_sos_feasibility(set, two_d, g, options.inflation);
  });
  report.value = r.hi;
  report.bracket = std::make_pair(r.lo, r.hi);
  report.probes = r.probes;
  if (!r.certified) return report;

  const LiftBasis gram_basis(n, d);
  const std::size_t big_n = gram_basis.size();
  SosCertificate cert;
  cert.gamma = r.hi;
  cert.gram_p = symmetrize(r.solution.blocks[0]);
  if (options.inflation > 0.0) cert.gram_p += Matrix::identity(big_n) * options.inflation;
  cert.p = gram_to_coeffs(cert.gram_p, gram_basis);
  const double g2d = std::pow(r.hi, two_d);
  for (std::size_t i = 0; i < set.m(); ++i) cert.gram_constraints.push_back(symmetrize(r.solution.blocks[i + 1]) * g2d);
  const VerificationReport check = verify_certificate(set, cert);
  cert.residuals = check.residuals;
  report.certified = check.ok;
  report.sos_certificate = std::move(cert);
  return report;
}

BoundReport rho_cq(const MatrixSet& set, int two_d, const BoundOptions& options) {
  check_two_d(two_d);
  check_options(options);
  const int d = two_d / 2;
  const std::size_t big_n = binomial(set.n() + d - 1, d);
  check_cap(big_n, options.dimension_cap, "Gram");

  BoundReport report;
  report.method = BoundMethod::cq;
  report.two_d = two_d;
  report.quality_factor = quality_factor(static_cast<int>(set.n()), static_cast<int>(set.m()), d);
  report.tol = options.tol;
  report.eps_feas = options.eps_feas;

  const MatrixSet lifted = set.lifted(d);
  auto build = [&](double g) {
    // S_i − P + B_iᵀ P B_i = 0 entrywise (upper triangle), B_i = A_i^[d]/γ^d.
    const double s = std::pow(g, -d);
    sdp::LinearMatrixProgram prog;
    prog.block_sizes.assign(set.m() + 1, big_n);
    for (std::size_t i = 0; i < set.m(); ++i) {
      const Matrix b = lifted[i] * s;
      for (std::size_t r = 0; r < big_n; ++r) {
        for (std::size_t c = r; c < big_n; ++c) {
          Matrix cp(big_n, big_n);
          for (std::size_t k = 0; k < big_n; ++k) {
            for (std::size_t l = 0; l < big_n; ++l) cp(k, l) = 0.5 * (b(k, r) * b(l, c) + b(l, r) * b(k, c));
          }
          const double unit = r == c ? 1.0 : 0.5;
          cp(r, c) -= unit;
          if (r != c) cp(c, r) -= unit;
          sdp::LinearConstraint con;
          con.terms.push_back({0, detail::upper_entries(cp, 1e-15)});
          con.terms.push_back({i + 1, {{r, c, unit}}});
          prog.constraints.push_back(std::move(con));
        }
      }
    }
    prog.constraints.push_back({{detail::trace_term(0, big_n)}, static_cast<double>(big_n)});
    return prog.canonical();
  };

  const auto r = bisect(set, two_d, options, build);
  report.value = r.hi;
  report.bracket = std::make_pair(r.lo, r.hi);
  report.probes = r.probes;
  if (r.certified) {
    report.cq_matrix = symmetrize(r.solution.blocks[0]);
    report.certified = true;
  }
  return report;
}

ProductBound lower_bound_products(const MatrixSet& set, int k_max, std::size_t word_cap, double eig_rel_tol) {
  if (k_max < 1) throw PreconditionError("k_max must be >= 1");
  const std::size_t m = set.m();
  std::size_t total = 0;
  std::size_t count = 1;
  for (int k = 1; k <= k_max; ++k) {
    if (count > word_cap / m + 1) throw CapExceededError("word enumeration exceeds the cap");
    count *= m;
    total += count;
    if (total > word_cap) {
      throw CapExceededError("enumerating words up to length " + std::to_string(k_max) + " needs " +
                             std::to_string(total) + "+ words, cap is " + std::to_string(word_cap));
    }
  }

  ProductBound best;
  best.value = -1.0;
  std::vector<int> word;
  for (int k = 1; k <= k_max; ++k) {
    word.assign(static_cast<std::size_t>(k), 0);
    while (true) {
      bool canonical = true;
      for (int s = 1; s < k && canonical; ++s) {
        for (int t = 0; t < k; ++t) {
          const int rotated = word[static_cast<std::size_t>((t + s) % k)];
          if (rotated != word[static_cast<std::size_t>(t)]) {
            if (rotated < word[static_cast<std::size_t>(t)]) canonical = false;
            break;
          }
        }
      }
      if (canonical) {
        Matrix prod = set[static_cast<std::size_t>(word[0])];
        for (int t = 1; t < k; ++t) prod = set[static_cast<std::size_t>(word[static_cast<std::size_t>(t)])] * prod;
        const double v = std::pow(spectral_radius(prod, eig_rel_tol), 1.0 / k);
        if (v > best.value) {
          best.value = v;
          best.witness.clear();
          for (int x : word) best.witness.push_back(x + 1);
        }
      }
      int pos = k - 1;
      while (pos >= 0 && word[static_cast<std::size_t>(pos)] == static_cast<int>(m) - 1) {
        word[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++word[static_cast<std::size_t>(pos)];
    }
  }
  return best;
}

BoundReport lower_bound_report(const MatrixSet& set, int k_max, std::size_t word_cap) {
  const ProductBound b = lower_bound_products(set, k_max, word_cap);
  BoundReport report;
  report.method = BoundMethod::lower_products;
  report.value = b.value;
  report.witness = b.witness;
  report.certified = true;
  return report;
}

double quality_factor(int n, int m, int d) {
  if (n < 1 || m < 1 || d < 1) throw PreconditionError("quality_factor needs n, m, d >= 1");
  const double gram = static_cast<double>(binomial(static_cast<std::size_t>(n + d - 1), static_cast<std::size_t>(d)));
  const double eta = std::min(static_cast<double>(m), gram);
  return std::pow(eta, -1.0 / (2.0 * d));
}

std::vector<LiftingSizes> lifting_size_table(int n, int steps) {
  using boost::multiprecision::cpp_int;
  if (n < 1 || steps < 1) throw PreconditionError("lifting_size_table needs n >= 1 and steps >= 1");
  if (steps > 24) throw CapExceededError("steps above 24 produce sizes too large to be meaningful");
  std::vector<LiftingSizes> rows;
  cpp_int semi = n;
  for (int s = 1; s <= steps; ++s) {
    LiftingSizes row;
    row.steps = s;
    row.two_d = cpp_int(1) << s;
    const unsigned two_d = 1u << s;
    row.kronecker = boost::multiprecision::pow(cpp_int(n), two_d);
    semi = semi * (semi + 1) / 2;
    row.semidefinite = semi;
    // binom(n + 2d − 1, 2d) = binom(n + 2d − 1, n − 1)
    cpp_int c = 1;
    for (int i = 1; i <= n - 1; ++i) c = c * (cpp_int(two_d) + i) / i;
    row.symmetric = c;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace jsrkit
