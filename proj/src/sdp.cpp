#include "jsrkit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace jsrkit::sdp {

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::feasible:
      return "feasible";
    case SdpStatus::infeasible:
      return "infeasible";
    case SdpStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

void validate_terms(const std::vector<BlockTerm>& terms, const std::vector<std::size_t>& sizes, const char* what) {
  for (const auto& term : terms) {
    if (term.block >= sizes.size()) throw DimensionError(std::string(what) + ": block index out of range");
    const std::size_t n = sizes[term.block];
    for (const auto& e : term.entries) {
      if (e.i > e.j) throw PreconditionError(std::string(what) + ": entries must be upper triangle (i <= j)");
      if (e.j >= n) throw DimensionError(std::string(what) + ": entry outside its block");
      if (!std::isfinite(e.value)) throw PreconditionError(std::string(what) + ": non-finite coefficient");
    }
  }
}

std::vector<BlockTerm> canonical_terms(const std::vector<BlockTerm>& terms) {
  std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, double>> acc;
  for (const auto& term : terms)
    for (const auto& e : term.entries) acc[term.block][{e.i, e.j}] += e.value;
  std::vector<BlockTerm> out;
  for (const auto& [block, entries] : acc) {
    BlockTerm t{block, {}};
    for (const auto& [ij, v] : entries)
      if (v != 0.0) t.entries.push_back({ij.first, ij.second, v});
    if (!t.entries.empty()) out.push_back(std::move(t));
  }
  return out;
}

double term_inner(const BlockTerm& term, const Matrix& x) {
  double s = 0.0;
  for (const auto& e : term.entries) s += e.i == e.j ? e.value * x(e.i, e.i) : e.value * (x(e.i, e.j) + x(e.j, e.i));
  return s;
}

double term_norm2(const BlockTerm& term) {
  double s = 0.0;
  for (const auto& e : term.entries) s += (e.i == e.j ? 1.0 : 2.0) * e.value * e.value;
  return s;
}

}  // namespace

void LinearMatrixProgram::validate() const {
  if (block_sizes.empty()) throw PreconditionError("program has no blocks");
  for (std::size_t n : block_sizes)
    if (n == 0) throw PreconditionError("block sizes must be positive");
  if (constraints.empty()) throw PreconditionError("program has no constraints");
  for (const auto& c : constraints) {
    validate_terms(c.terms, block_sizes, "constraint");
    if (!std::isfinite(c.rhs)) throw PreconditionError("constraint right-hand side is not finite");
  }
  validate_terms(objective, block_sizes, "objective");
}

LinearMatrixProgram LinearMatrixProgram::canonical() const {
  LinearMatrixProgram out;
  out.block_sizes = block_sizes;
  out.constraints.reserve(constraints.size());
  for (const auto& c : constraints) out.constraints.push_back({canonical_terms(c.terms), c.rhs});
  out.objective = canonical_terms(objective);
  return out;
}

double inner(const std::vector<BlockTerm>& terms, const std::vector<Matrix>& blocks) {
  double s = 0.0;
  for (const auto& term : terms) s += term_inner(term, blocks.at(term.block));
  return s;
}

Matrix dense(const BlockTerm& term, std::size_t n) {
  Matrix m(n, n);
  for (const auto& e : term.entries) {
    m(e.i, e.j) += e.value;
    if (e.i != e.j) m(e.j, e.i) += e.value;
  }
  return m;
}

SolutionCheck check_solution(const LinearMatrixProgram& prog, const std::vector<Matrix>& blocks) {
  if (blocks.size() != prog.block_sizes.size()) throw DimensionError("check_solution: block count");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].rows() != prog.block_sizes[b] || !blocks[b].is_square()) {
      throw DimensionError("check_solution: block shape");
    }
  }
  SolutionCheck out{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& c : prog.constraints) out.max_residual = std::max(out.max_residual, std::abs(inner(c.terms, blocks) - c.rhs));
  for (const auto& x : blocks) out.min_eig = std::min(out.min_eig, min_eig_symmetric(symmetrize(x)));
  return out;
}

SolutionCheck check_solution(const LinearMatrixProgram& prog, const SdpSolution& sol) {
  return check_solution(prog, sol.blocks);
}

namespace {

// min ⟨C,X⟩ + cfᵀxf  s.t.  𝒜(X) + F xf = b,  X ⪰ 0,  xf free.
struct Problem {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<BlockTerm>> rows;
  Vector b;
  std::vector<Matrix> c;
  Matrix f;  // rows.size() × free count; empty when there are no free variables
  Vector cf;

  std::size_t constraints() const { return rows.size(); }
  std::size_t free_count() const { return cf.size(); }
};

struct BlockScaling {
  Matrix g;     // W = G Gᵀ
  Matrix ginv;  // G⁻¹
  Matrix w;     // NT scaling point, W S W = X
  Vector d;     // G⁻¹ X G⁻ᵀ = Gᵀ S G = diag(d)
};

class InteriorPoint {
 public:
  enum class Outcome { converged, stopped, stalled, iteration_cap };
  using Monitor = std::function<bool(const InteriorPoint&)>;  // true = stop

  InteriorPoint(const Problem& pb, const SolverOptions& opt) : pb_(pb), opt_(opt) {
    const std::size_t nb = pb_.sizes.size();
    by_block_.resize(nb);
    for (std::size_t k = 0; k < pb_.rows.size(); ++k)
      for (const auto& term : pb_.rows[k]) by_block_[term.block].push_back({k, &term});
    for (std::size_t n : pb_.sizes) n_total_ += static_cast<double>(n);

    b_norm_ = norm2(pb_.b);
    double cn = 0.0;
    for (const auto& cb : pb_.c) cn += frobenius_dot(cb, cb);
    c_norm_ = std::sqrt(cn) + norm2(pb_.cf);

    x_.resize(nb);
    s_.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const double n = static_cast<double>(pb_.sizes[b]);
      double xi = std::max(10.0, std::sqrt(n));
      double eta = std::max(10.0, std::sqrt(n));
      for (const auto& [k, term] : by_block_[b]) {
        const double an = std::sqrt(term_norm2(*term));
        xi = std::max(xi, n * (1.0 + std::abs(pb_.b[k])) / (1.0 + an));
        eta = std::max(eta, an);
      }
      eta = std::max(eta, std::sqrt(frobenius_dot(pb_.c[b], pb_.c[b])));
      x_[b] = Matrix::identity(pb_.sizes[b]) * xi;
      s_[b] = Matrix::identity(pb_.sizes[b]) * eta;
    }
    y_.assign(pb_.constraints(), 0.0);
    xf_.assign(pb_.free_count(), 0.0);
  }

  Outcome run(const Monitor& monitor) {
    for (iter_ = 0; iter_ <= opt_.max_iterations; ++iter_) {
      compute_residuals();
      if (opt_.verbose) {
        std::fprintf(stderr, "ipm %3d  pobj %+.10e  dobj %+.10e  relp %.2e  reld %.2e  mu %.2e\n", iter_, pobj_,
                     dobj_, relp_, reld_, mu_);
      }
      if (monitor && monitor(*this)) return Outcome::stopped;
      if (relp_ <= feas_tol_ && reld_ <= feas_tol_ && relgap_ <= opt_.gap_tol) return Outcome::converged;
      if (iter_ == opt_.max_iterations) break;
      if (!step()) return Outcome::stalled;
    }
    return Outcome::iteration_cap;
  }

  const std::vector<Matrix>& x() const { return x_; }
  const std::vector<Matrix>& s() const { return s_; }
  const Vector& y() const { return y_; }
  const Vector& xf() const { return xf_; }
  const Vector& rp() const { return rp_; }
  double pobj() const { return pobj_; }
  double dobj() const { return dobj_; }
  double relp() const { return relp_; }
  double reld() const { return reld_; }
  double relgap() const { return relgap_; }
  int iterations() const { return iter_; }

  Vector apply_a(const std::vector<Matrix>& x) const {
    Vector out(pb_.constraints(), 0.0);
    for (std::size_t k = 0; k < pb_.rows.size(); ++k)
      for (const auto& term : pb_.rows[k]) out[k] += term_inner(term, x[term.block]);
    return out;
  }

  std::vector<Matrix> apply_at(const Vector& y) const {
    std::vector<Matrix> out;
    out.reserve(pb_.sizes.size());
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      Matrix m(pb_.sizes[b], pb_.sizes[b]);
      for (const auto& [k, term] : by_block_[b]) {
        const double yk = y[k];
        if (yk == 0.0) continue;
        for (const auto& e : term->entries) {
          m(e.i, e.j) += yk * e.value;
          if (e.i != e.j) m(e.j, e.i) += yk * e.value;
        }
      }
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  struct TermRef {
    std::size_t k;
    const BlockTerm* term;
  };

  void compute_residuals() {
    const Vector ax = apply_a(x_);
    rp_ = pb_.b;
    for (std::size_t k = 0; k < rp_.size(); ++k) {
      rp_[k] -= ax[k];
      for (std::size_t j = 0; j < pb_.free_count(); ++j) rp_[k] -= pb_.f(k, j) * xf_[j];
    }
    const auto aty = apply_at(y_);
    rd_.resize(pb_.sizes.size());
    double rd2 = 0.0;
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      rd_[b] = pb_.c[b] - s_[b] - aty[b];
      rd2 += frobenius_dot(rd_[b], rd_[b]);
    }
    rf_ = pb_.cf;
    for (std::size_t j = 0; j < pb_.free_count(); ++j)
      for (std::size_t k = 0; k < pb_.constraints(); ++k) rf_[j] -= pb_.f(k, j) * y_[k];
    rd2 += dot(rf_, rf_);

    double xs = 0.0;
    pobj_ = dot(pb_.cf, xf_);
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      xs += frobenius_dot(x_[b], s_[b]);
      pobj_ += frobenius_dot(pb_.c[b], x_[b]);
    }
    dobj_ = dot(pb_.b, y_);
    mu_ = xs / n_total_;
    relp_ = norm2(rp_) / (1.0 + b_norm_);
    reld_ = std::sqrt(rd2) / (1.0 + c_norm_);
    relgap_ = std::max(std::abs(pobj_ - dobj_), std::abs(xs)) / (1.0 + std::abs(pobj_) + std::abs(dobj_));
  }

  bool compute_scaling() {
    scal_.resize(pb_.sizes.size());
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      const std::size_t n = pb_.sizes[b];
      Matrix lx;
      if (!cholesky(symmetrize(x_[b]), lx)) return false;
      const Matrix inner_m = symmetrize(lx.transpose() * s_[b] * lx);
      const SymmetricEigen eig = eigen_symmetric(inner_m);
      const double floor = std::numeric_limits<double>::min();
      BlockScaling& sc = scal_[b];
      sc.d.resize(n);
      Matrix right(n, n);  // U Λ^{-1/4}
      Matrix left(n, n);   // Λ^{1/4} Uᵀ
      for (std::size_t j = 0; j < n; ++j) {
        const double lam = std::max(eig.values[j], floor);
        const double q = std::pow(lam, 0.25);
        sc.d[j] = std::sqrt(lam);
        for (std::size_t i = 0; i < n; ++i) {
          right(i, j) = eig.vectors(i, j) / q;
          left(j, i) = eig.vectors(i, j) * q;
        }
      }
      sc.g = lx * right;
      sc.ginv = left * lower_inverse(lx);
      sc.w = symmetrize(sc.g * sc.g.transpose());
    }
    return true;
  }

  bool build_schur() {
    const std::size_t p = pb_.constraints();
    Matrix m(p, p);
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      const std::size_t n = pb_.sizes[b];
      const Matrix& w = scal_[b].w;
      const auto& refs = by_block_[b];
      Matrix wcw(n, n);
      for (std::size_t li = 0; li < refs.size(); ++li) {
        const BlockTerm& tl = *refs[li].term;
        if (tl.entries.size() > n) {
          const Matrix cd = dense(tl, n);
          wcw = w * (cd * w);
        } else {
          std::fill(wcw.data().begin(), wcw.data().end(), 0.0);
          for (const auto& e : tl.entries) {
            for (std::size_t r = 0; r < n; ++r) {
              const double wri = w(r, e.i) * e.value;
              const double wrj = w(r, e.j) * e.value;
              auto row = wcw.row(r);
              if (e.i == e.j) {
                for (std::size_t c = 0; c < n; ++c) row[c] += wri * w(e.i, c);
              } else {
                for (std::size_t c = 0; c < n; ++c) row[c] += wri * w(e.j, c) + wrj * w(e.i, c);
              }
            }
          }
        }
        const std::size_t l = refs[li].k;
        for (std::size_t ki = 0; ki <= li; ++ki) {
          const std::size_t k = refs[ki].k;
          const double v = term_inner(*refs[ki].term, wcw);
          m(k, l) += v;
          if (k != l) m(l, k) += v;
        }
      }
    }
    // Cholesky with a growing diagonal shift if the Schur complement has
    // lost definiteness to rounding.
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < p; ++i) maxdiag = std::max(maxdiag, m(i, i));
    double shift = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Matrix shifted = m;
      for (std::size_t i = 0; i < p; ++i) shifted(i, i) += shift;
      if (cholesky(shifted, schur_chol_)) break;
      shift = shift == 0.0 ? 1e-14 * std::max(maxdiag, 1.0) : shift * 100.0;
      if (attempt == 7) return false;
    }
    // Free variables: K = Fᵀ M⁻¹ F.
    const std::size_t nf = pb_.free_count();
    minv_f_.clear();
    for (std::size_t j = 0; j < nf; ++j) {
      Vector col(p);
      for (std::size_t k = 0; k < p; ++k) col[k] = pb_.f(k, j);
      minv_f_.push_back(cholesky_solve(schur_chol_, col));
    }
    if (nf > 0) {
      Matrix kmat(nf, nf);
      for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < nf; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < p; ++k) s += pb_.f(k, i) * minv_f_[j][k];
          kmat(i, j) = s;
        }
      try {
        free_lu_.emplace(kmat);
      } catch (const SingularMatrixError&) {
        return false;
      }
    }
    return true;
  }

  struct Direction {
    std::vector<Matrix> dx, ds;
    Vector dy, dxf;
  };

  // Solves the Newton system with complementarity row ΔX + WΔSW = R.
  Direction solve_direction(const std::vector<Matrix>& r) const {
    const std::size_t nb = pb_.sizes.size();
    std::vector<Matrix> tmp(nb);
    for (std::size_t b = 0; b < nb; ++b) tmp[b] = r[b] - scal_[b].w * rd_[b] * scal_[b].w;
    Vector h = rp_;
    const Vector at = apply_a(tmp);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] -= at[k];

    Direction dir;
    Vector u = cholesky_solve(schur_chol_, h);
    const std::size_t nf = pb_.free_count();
    dir.dxf.assign(nf, 0.0);
    if (nf > 0) {
      Vector rhs(nf);
      for (std::size_t j = 0; j < nf; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) s += pb_.f(k, j) * u[k];
        rhs[j] = s - rf_[j];
      }
      dir.dxf = free_lu_->solve(rhs);
      for (std::size_t j = 0; j < nf; ++j)
        for (std::size_t k = 0; k < u.size(); ++k) u[k] -= minv_f_[j][k] * dir.dxf[j];
    }
    dir.dy = std::move(u);
    const auto atdy = apply_at(dir.dy);
    dir.ds.resize(nb);
    dir.dx.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      dir.ds[b] = rd_[b] - atdy[b];
      dir.dx[b] = symmetrize(r[b] - scal_[b].w * dir.ds[b] * scal_[b].w);
    }
    return dir;
  }

  // Largest α with diag(d) + α·M ⪰ 0, via eig(D^{-1/2} M D^{-1/2}).
  static double max_step(const Vector& d, const Matrix& scaled) {
    const std::size_t n = d.size();
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = scaled(i, j) / std::sqrt(d[i] * d[j]);
    const double lam = min_eig_symmetric(symmetrize(t));
    return lam < 0.0 ? -1.0 / lam : std::numeric_limits<double>::infinity();
  }

  void scaled_pair(std::size_t b, const Direction& dir, Matrix& dxs, Matrix& dss) const {
    const BlockScaling& sc = scal_[b];
    dxs = symmetrize(sc.ginv * dir.dx[b] * sc.ginv.transpose());
    dss = symmetrize(sc.g.transpose() * dir.ds[b] * sc.g);
  }

  void step_lengths(const Direction& dir, double& ap, double& ad) const {
    ap = std::numeric_limits<double>::infinity();
    ad = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < pb_.sizes.size(); ++b) {
      Matrix dxs, dss;
      scaled_pair(b, dir, dxs, dss);
      ap = std::min(ap, max_step(scal_[b].d, dxs));
      ad = std::min(ad, max_step(scal_[b].d, dss));
    }
  }

  bool step() {
    if (!compute_scaling()) return false;
    if (!build_schur()) return false;
    const std::size_t nb = pb_.sizes.size();

    std::vector<Matrix> r(nb);
    for (std::size_t b = 0; b < nb; ++b) r[b] = -1.0 * x_[b];
    const Direction pred = solve_direction(r);
    double ap = 0.0, ad = 0.0;
    step_lengths(pred, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    double xs_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      xs_aff += frobenius_dot(x_[b] + pred.dx[b] * ap, s_[b] + pred.ds[b] * ad);
    }
    const double mu_aff = std::max(xs_aff, 0.0) / n_total_;
    double sigma = mu_ > 0.0 ? std::pow(mu_aff / mu_, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t n = pb_.sizes[b];
      const BlockScaling& sc = scal_[b];
      Matrix dxs, dss;
      scaled_pair(b, pred, dxs, dss);
      const Matrix prod = dxs * dss;
      Matrix t(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double rc = -0.5 * (prod(i, j) + prod(j, i));
          if (i == j) rc += sigma * mu_ - sc.d[i] * sc.d[i];
          t(i, j) = 2.0 * rc / (sc.d[i] + sc.d[j]);
        }
      }
      r[b] = symmetrize(sc.g * t * sc.g.transpose());
    }
    const Direction corr = solve_direction(r);
    step_lengths(corr, ap, ad);
    const double tau = 0.95;
    ap = std::min(1.0, tau * ap);
    ad = std::min(1.0, tau * ad);
    if (ap < 1e-12 && ad < 1e-12) return false;

    for (std::size_t b = 0; b < nb; ++b) {
      x_[b] = symmetrize(x_[b] + corr.dx[b] * ap);
      s_[b] = symmetrize(s_[b] + corr.ds[b] * ad);
    }
    for (std::size_t j = 0; j < xf_.size(); ++j) xf_[j] += ap * corr.dxf[j];
    for (std::size_t k = 0; k < y_.size(); ++k) y_[k] += ad * corr.dy[k];
    return true;
  }

  const Problem& pb_;
  SolverOptions opt_;
  std::vector<std::vector<TermRef>> by_block_;
  double n_total_ = 0.0;
  double b_norm_ = 0.0;
  double c_norm_ = 0.0;
  double feas_tol_ = 1e-10;

  std::vector<Matrix> x_, s_;
  Vector y_, xf_;
  Vector rp_, rf_;
  std::vector<Matrix> rd_;
  double pobj_ = 0.0, dobj_ = 0.0, mu_ = 0.0, relp_ = 0.0, reld_ = 0.0, relgap_ = 0.0;
  int iter_ = 0;

  std::vector<BlockScaling> scal_;
  Matrix schur_chol_;
  std::vector<Vector> minv_f_;
  std::optional<LuFactor> free_lu_;
};

std::vector<Matrix> zero_blocks(const std::vector<std::size_t>& sizes) {
  std::vector<Matrix> out;
  for (std::size_t n : sizes) out.emplace_back(n, n);
  return out;
}

void fill_check(const LinearMatrixProgram& prog, SdpSolution& sol) {
  const SolutionCheck chk = check_solution(prog, sol.blocks);
  sol.max_constraint_residual = chk.max_residual;
  sol.min_block_eigenvalue = chk.min_eig;
  sol.objective_value = inner(prog.objective, sol.blocks);
}

}  // namespace

SdpSolution solve_feasibility(const LinearMatrixProgram& prog, double eps_feas) {
  SolverOptions opt;
  opt.eps_feas = eps_feas;
  return solve_feasibility(prog, opt);
}

SdpSolution solve_feasibility(const LinearMatrixProgram& input, const SolverOptions& options) {
  if (!(options.eps_feas >= 1e-10 && options.eps_feas <= 1e-4)) {
    throw PreconditionError("solve_feasibility: eps_feas must lie in [1e-10, 1e-4]");
  }
  input.validate();
  const LinearMatrixProgram prog = input.canonical();
  const double eps = options.eps_feas;
  double rhs_scale = 0.0;
  for (const auto& c : prog.constraints) rhs_scale = std::max(rhs_scale, std::abs(c.rhs));
  const double res_tol = eps * (1.0 + rhs_scale);

  SdpSolution sol;
  sol.blocks = zero_blocks(prog.block_sizes);

  // Phase-I data with each row scaled to unit Frobenius norm. A row with no
  // coefficients is either vacuous or an immediate contradiction.
  Problem pb;
  pb.sizes = prog.block_sizes;
  Vector row_scale;
  for (const auto& c : prog.constraints) {
    double nrm2 = 0.0;
    for (const auto& t : c.terms) nrm2 += term_norm2(t);
    if (nrm2 == 0.0) {
      if (std::abs(c.rhs) > res_tol) {
        fill_check(prog, sol);
        sol.status = SdpStatus::infeasible;
        sol.margin_upper = -std::numeric_limits<double>::infinity();
        sol.message = "constraint with zero coefficients and nonzero right-hand side";
        return sol;
      }
      continue;
    }
    const double nu = std::sqrt(nrm2);
    std::vector<BlockTerm> terms = c.terms;
    for (auto& t : terms)
      for (auto& e : t.entries) e.value /= nu;
    pb.rows.push_back(std::move(terms));
    pb.b.push_back(c.rhs / nu);
    row_scale.push_back(nu);
  }
  if (pb.rows.empty()) {
    sol.status = SdpStatus::feasible;
    for (std::size_t b = 0; b < sol.blocks.size(); ++b) sol.blocks[b] = Matrix::identity(prog.block_sizes[b]);
    sol.margin_lower = 1.0;
    fill_check(prog, sol);
    return sol;
  }
  const std::size_t p = pb.rows.size();
  pb.c = zero_blocks(pb.sizes);
  pb.f = Matrix(p, 1);
  for (std::size_t k = 0; k < p; ++k) {
    double tr = 0.0;
    for (const auto& t : pb.rows[k])
      for (const auto& e : t.entries)
        if (e.i == e.j) tr += e.value;
    pb.f(k, 0) = tr;
  }
  pb.cf = {-1.0};

  InteriorPoint ipm(pb, options);

  auto original_residual = [&](const InteriorPoint& s) {
    double worst = 0.0;
    for (std::size_t k = 0; k < p; ++k) worst = std::max(worst, row_scale[k] * std::abs(s.rp()[k]));
    return worst;
  };
  // Bound t* ≤ −bᵀy' from an exactly rescaled dual point y' (aᵀy' = −1,
  // −𝒜*(y') ⪰ 0). Returns +inf when the current y does not certify.
  auto dual_bound = [&](const InteriorPoint& s) {
    double q = 0.0;
    for (std::size_t k = 0; k < p; ++k) q += pb.f(k, 0) * s.y()[k];
    if (!(q < 0.0)) return std::numeric_limits<double>::infinity();
    Vector yp = s.y();
    for (double& v : yp) v /= -q;
    const double bound = -dot(pb.b, yp);
    if (bound >= -eps) return bound;
    const auto sp = s.apply_at(yp);
    for (const auto& m : sp) {
      const Matrix neg = -1.0 * m;
      const double scale = std::max(1.0, max_abs(neg));
      if (min_eig_symmetric(symmetrize(neg)) < -1e-12 * scale) return std::numeric_limits<double>::infinity();
    }
    return bound;
  };

  double best_lower = -std::numeric_limits<double>::infinity();
  double best_upper = std::numeric_limits<double>::infinity();
  // Best iterate satisfying the feasibility contract, kept in case the
  // method stalls afterwards.
  std::optional<std::vector<Matrix>> best_x;
  double best_t = -std::numeric_limits<double>::infinity();
  enum class Early { none, feasible, infeasible } early = Early::none;
  auto monitor = [&](const InteriorPoint& s) {
    const double t = s.xf()[0];
    const double res = original_residual(s);
    if (res <= 0.5 * res_tol && t >= -eps && t > best_t) {
      best_t = t;
      best_x = s.x();
    }
    if (res <= 0.5 * res_tol) {
      best_lower = std::max(best_lower, t);
      if (t >= eps) {
        early = Early::feasible;
        return true;
      }
    }
    if (-s.dobj() < -eps) {
      const double ub = dual_bound(s);
      best_upper = std::min(best_upper, ub);
      if (ub < -eps) {
        early = Early::infeasible;
        return true;
      }
    }
    return false;
  };

  const auto outcome = ipm.run(monitor);
  sol.iterations = ipm.iterations();
  const double t = ipm.xf()[0];
  for (std::size_t b = 0; b < sol.blocks.size(); ++b) {
    sol.blocks[b] = ipm.x()[b];
    for (std::size_t i = 0; i < prog.block_sizes[b]; ++i) sol.blocks[b](i, i) += t;
  }
  fill_check(prog, sol);

  if (outcome == InteriorPoint::Outcome::converged) {
    if (original_residual(ipm) <= res_tol) best_lower = std::max(best_lower, t);
    best_upper = std::min(best_upper, dual_bound(ipm));
    best_upper = std::min(best_upper, std::max(t, -ipm.dobj()));
  }
  sol.margin_lower = best_lower;
  sol.margin_upper = best_upper;

  const bool primal_ok = sol.max_constraint_residual <= res_tol && sol.min_block_eigenvalue >= -eps;
  if (early == Early::feasible || (outcome == InteriorPoint::Outcome::converged && t >= -eps)) {
    if (primal_ok) {
      sol.status = SdpStatus::feasible;
      sol.message = early == Early::feasible ? "strictly feasible point found" : "phase-I optimum converged";
      return sol;
    }
    sol.status = SdpStatus::numerical_failure;
    sol.message = "phase-I point fails independent verification";
    return sol;
  }
  if (early == Early::infeasible || best_upper < -eps ||
      (outcome == InteriorPoint::Outcome::converged && t < -eps)) {
    sol.status = SdpStatus::infeasible;
    sol.message = "phase-I optimum is negative";
    return sol;
  }
  if (best_x) {
    for (std::size_t b = 0; b < sol.blocks.size(); ++b) {
      sol.blocks[b] = (*best_x)[b];
      for (std::size_t i = 0; i < prog.block_sizes[b]; ++i) sol.blocks[b](i, i) += best_t;
    }
    fill_check(prog, sol);
    if (sol.max_constraint_residual <= res_tol && sol.min_block_eigenvalue >= -eps) {
      sol.status = SdpStatus::feasible;
      sol.message = "method stopped early; returning the best verified iterate";
      return sol;
    }
  }
  sol.status = SdpStatus::numerical_failure;
  sol.message = outcome == InteriorPoint::Outcome::stalled ? "interior-point method stalled"
                                                           : "iteration cap reached";
  return sol;
}

SdpSolution solve_optimization(const LinearMatrixProgram& input, const SolverOptions& options) {
  input.validate();
  const LinearMatrixProgram prog = input.canonical();
  Problem pb;
  pb.sizes = prog.block_sizes;
  for (const auto& c : prog.constraints) {
    pb.rows.push_back(c.terms);
    pb.b.push_back(c.rhs);
  }
  pb.c = zero_blocks(pb.sizes);
  for (const auto& term : prog.objective) pb.c[term.block] += dense(term, pb.sizes[term.block]);

  InteriorPoint ipm(pb, options);
  const auto outcome = ipm.run({});
  SdpSolution sol;
  sol.iterations = ipm.iterations();
  sol.blocks = ipm.x();
  fill_check(prog, sol);
  sol.margin_lower = ipm.dobj();
  sol.margin_upper = ipm.pobj();
  if (outcome == InteriorPoint::Outcome::converged) {
    sol.status = SdpStatus::feasible;
    sol.message = "optimal";
  } else {
    sol.status = SdpStatus::numerical_failure;
    sol.message = outcome == InteriorPoint::Outcome::stalled ? "interior-point method stalled"
                                                             : "iteration cap reached";
  }
  return sol;
}

}  // namespace jsrkit::sdp
