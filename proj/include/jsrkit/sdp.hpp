#pragma once

// Block-diagonal semidefinite programs in standard primal form
//
//   Σ_b ⟨C_{k,b}, X_b⟩ = r_k   (k = 1..p),   X_b ⪰ 0,
//
// a primal–dual interior-point solver (Nesterov–Todd scaling, Mehrotra
// predictor–corrector, dense Schur complement), and SDPA sparse export.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "jsrkit/linalg.hpp"

namespace jsrkit::sdp {

/// One upper-triangle entry (i ≤ j) of a symmetric coefficient matrix;
/// stands for both (i,j) and (j,i).
struct SymEntry {
  std::size_t i;
  std::size_t j;
  double value;

  friend bool operator==(const SymEntry&, const SymEntry&) = default;
};

/// Coefficient matrix restricted to one block.
struct BlockTerm {
  std::size_t block;
  std::vector<SymEntry> entries;

  friend bool operator==(const BlockTerm&, const BlockTerm&) = default;
};

struct LinearConstraint {
  std::vector<BlockTerm> terms;
  double rhs = 0.0;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct LinearMatrixProgram {
  std::vector<std::size_t> block_sizes;
  std::vector<LinearConstraint> constraints;
  std::vector<BlockTerm> objective;  // empty for pure feasibility

  /// Throws PreconditionError/DimensionError if the program is malformed:
  /// no constraints, entries outside their block, i > j, non-finite data.
  void validate() const;

  /// Sorted by (block, i, j) inside each constraint, duplicate entries
  /// merged, exact zeros dropped.
  LinearMatrixProgram canonical() const;

  friend bool operator==(const LinearMatrixProgram&, const LinearMatrixProgram&) = default;
};

/// ⟨C, X⟩ for a coefficient given by terms.
double inner(const std::vector<BlockTerm>& terms, const std::vector<Matrix>& blocks);
/// Dense symmetric matrix of one term, sized n.
Matrix dense(const BlockTerm& term, std::size_t n);

enum class SdpStatus { feasible, infeasible, numerical_failure };
const char* to_string(SdpStatus status);

struct SdpSolution {
  std::vector<Matrix> blocks;
  double objective_value = 0.0;
  double max_constraint_residual = 0.0;
  double min_block_eigenvalue = 0.0;
  SdpStatus status = SdpStatus::numerical_failure;
  /// Phase-I slack t: best certified lower bound (from a primal point) and
  /// upper bound (from a dual point) on max{t : X_b − tI ⪰ 0, constraints}.
  double margin_lower = -1e300;
  double margin_upper = 1e300;
  int iterations = 0;
  std::string message;
};

struct SolverOptions {
  double eps_feas = 1e-8;
  double gap_tol = 1e-9;
  int max_iterations = 200;
  bool verbose = false;
};

/// Phase-I feasibility: maximizes t subject to X_b − tI ⪰ 0 and the affine
/// constraints; feasible iff t* ≥ −eps_feas. eps_feas must lie in
/// [1e-10, 1e-4].
SdpSolution solve_feasibility(const LinearMatrixProgram& prog, double eps_feas = 1e-8);
SdpSolution solve_feasibility(const LinearMatrixProgram& prog, const SolverOptions& options);

/// Minimizes the program objective. status is feasible on convergence to
/// an optimal pair, numerical_failure otherwise.
SdpSolution solve_optimization(const LinearMatrixProgram& prog, const SolverOptions& options = {});

struct SolutionCheck {
  double max_residual;
  double min_eig;
};

/// Recomputes the worst constraint residual max_k |⟨C_k,X⟩ − r_k| and the
/// smallest eigenvalue over all blocks, independent of the solver.
SolutionCheck check_solution(const LinearMatrixProgram& prog, const std::vector<Matrix>& blocks);
SolutionCheck check_solution(const LinearMatrixProgram& prog, const SdpSolution& sol);

/// SDPA sparse (".dat-s") text. Our program min ⟨C,X⟩ s.t. ⟨A_k,X⟩ = r_k
/// maps to SDPA's maximize F₀•Y with F₀ = −C and F_k = A_k, c = r.
std::string export_sdpa(const LinearMatrixProgram& prog);
LinearMatrixProgram parse_sdpa(std::string_view text);

/// "%.17g", with ".0" appended when the result would read as an integer.
std::string format_number(double v);

}  // namespace jsrkit::sdp
