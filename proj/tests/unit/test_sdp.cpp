#include <cmath>
#include <random>

#include "doctest.h"
#include "jsrkit/errors.hpp"
#include "jsrkit/sdp.hpp"
#include "oracles.hpp"

using namespace jsrkit;
using namespace jsrkit::sdp;

namespace {

LinearMatrixProgram scalar_program(double rhs) {
  LinearMatrixProgram p;
  p.block_sizes = {1};
  p.constraints.push_back({{{0, {{0, 0, 1.0}}}}, rhs});
  return p;
}

void expect_verified(const LinearMatrixProgram& prog, const SdpSolution& sol, double eps) {
  double rhs = 0.0;
  for (const auto& c : prog.constraints) rhs = std::max(rhs, std::abs(c.rhs));
  const SolutionCheck chk = check_solution(prog, sol);
  CHECK(chk.max_residual <= eps * (1 + rhs));
  CHECK(chk.min_eig >= -eps);
  CHECK(chk.max_residual == doctest::Approx(sol.max_constraint_residual));
  CHECK(chk.min_eig == doctest::Approx(sol.min_block_eigenvalue));
}

// Random program with a known strictly feasible point X₀ ≻ 0.
LinearMatrixProgram random_feasible(std::mt19937_64& rng, std::size_t& out_blocks) {
  std::uniform_int_distribution<int> nb(1, 3), sz(1, 4);
  LinearMatrixProgram p;
  const int blocks = nb(rng);
  std::vector<Matrix> x0;
  for (int b = 0; b < blocks; ++b) {
    const std::size_t n = static_cast<std::size_t>(sz(rng));
    p.block_sizes.push_back(n);
    const Matrix r = oracle::random_matrix(rng, n, n);
    x0.push_back(r * r.transpose() + Matrix::identity(n) * 0.5);
  }
  std::size_t dim = 0;
  for (auto n : p.block_sizes) dim += n * (n + 1) / 2;
  const std::size_t rows = 1 + rng() % dim;
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t k = 0; k < rows; ++k) {
    LinearConstraint c;
    for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
      BlockTerm t{b, {}};
      for (std::size_t i = 0; i < p.block_sizes[b]; ++i)
        for (std::size_t j = i; j < p.block_sizes[b]; ++j)
          if (u(rng) > 0.3) t.entries.push_back({i, j, u(rng)});
      if (!t.entries.empty()) c.terms.push_back(std::move(t));
    }
    if (c.terms.empty()) c.terms.push_back({0, {{0, 0, 1.0}}});
    c.rhs = inner(c.terms, x0);
    p.constraints.push_back(std::move(c));
  }
  out_blocks = p.block_sizes.size();
  return p;
}

}  // namespace

TEST_CASE("scalar programs") {
  const auto feas = scalar_program(1.0);
  const SdpSolution s = solve_feasibility(feas);
  CHECK(s.status == SdpStatus::feasible);
  CHECK(s.blocks[0](0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  expect_verified(feas, s, 1e-8);

  const SdpSolution t = solve_feasibility(scalar_program(-1.0));
  CHECK(t.status == SdpStatus::infeasible);
  CHECK(t.margin_upper < 0.0);
}

TEST_CASE("two-variable quartic Gram program is feasible and reconstructs the quartic") {
  const auto prog = oracle::example1_program();
  const SdpSolution s = solve_feasibility(prog);
  REQUIRE(s.status == SdpStatus::feasible);
  expect_verified(prog, s, 1e-8);
  const auto coeffs = gram_to_monomial_coeffs(s.blocks[0], oracle::example1_monomials());
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::random_vector(rng, 2);
    const double expect = oracle::example1_poly(x[0], x[1]);
    CHECK(oracle::eval_monomials(coeffs, x) == doctest::Approx(expect).epsilon(1e-7));
  }
}

TEST_CASE("eps_feas range is enforced") {
  CHECK_THROWS_AS(solve_feasibility(scalar_program(1.0), 1e-11), PreconditionError);
  CHECK_THROWS_AS(solve_feasibility(scalar_program(1.0), 1e-3), PreconditionError);
}

TEST_CASE("malformed programs are rejected") {
  LinearMatrixProgram p = scalar_program(1.0);
  p.constraints[0].terms[0].entries[0] = {0, 1, 1.0};
  CHECK_THROWS_AS(p.validate(), DimensionError);
  LinearMatrixProgram q;
  q.block_sizes = {2};
  CHECK_THROWS_AS(q.validate(), PreconditionError);
  q.constraints.push_back({{{0, {{1, 0, 1.0}}}}, 1.0});
  CHECK_THROWS_AS(q.validate(), PreconditionError);
}

TEST_CASE("programs with a known interior point are feasible, at every row scaling") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t nb = 0;
    LinearMatrixProgram p = random_feasible(rng, nb);
    const SdpSolution s = solve_feasibility(p);
    CHECK(s.status == SdpStatus::feasible);
    if (s.status == SdpStatus::feasible) expect_verified(p, s, 1e-8);

    LinearMatrixProgram scaled = p;
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (auto& c : scaled.constraints) {
      const double f = u(rng);
      for (auto& t : c.terms)
        for (auto& e : t.entries) e.value *= f;
      c.rhs *= f;
    }
    CHECK(solve_feasibility(scaled).status == s.status);
  }
}

TEST_CASE("adding a trace constraint keeps cone-only programs feasible") {
  LinearMatrixProgram p;
  p.block_sizes = {3};
  // X₁₂ = 0 with X ⪰ 0
  p.constraints.push_back({{{0, {{0, 1, 1.0}}}}, 0.0});
  for (double c : {0.1, 1.0, 50.0}) {
    LinearMatrixProgram q = p;
    BlockTerm tr{0, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}}};
    q.constraints.push_back({{tr}, c});
    CHECK(solve_feasibility(q).status == SdpStatus::feasible);
  }
}

TEST_CASE("infeasible programs") {
  // X ⪰ 0 with X₁₁ = 0 forces X₁₂ = 0, so X₁₂ = 1 is impossible.
  LinearMatrixProgram p;
  p.block_sizes = {2};
  p.constraints.push_back({{{0, {{0, 0, 1.0}}}}, 0.0});
  p.constraints.push_back({{{0, {{0, 1, 0.5}}}}, 1.0});
  const SdpSolution s = solve_feasibility(p);
  CHECK(s.status != SdpStatus::feasible);

  // Strictly infeasible: trace = −1.
  LinearMatrixProgram q;
  q.block_sizes = {2, 2};
  q.constraints.push_back({{{0, {{0, 0, 1.0}, {1, 1, 1.0}}}, {1, {{0, 0, 1.0}}}}, -1.0});
  CHECK(solve_feasibility(q).status == SdpStatus::infeasible);
}

TEST_CASE("optimization: minimum eigenvalue as an SDP") {
  // min ⟨S, X⟩ s.t. trace X = 1, X ⪰ 0 equals λ_min(S).
  const Matrix s{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  LinearMatrixProgram p;
  p.block_sizes = {3};
  BlockTerm obj{0, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j)
      if (s(i, j) != 0.0) obj.entries.push_back({i, j, s(i, j)});
  p.objective = {obj};
  p.constraints.push_back({{{0, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}}}}, 1.0});
  const SdpSolution sol = solve_optimization(p);
  CHECK(sol.status == SdpStatus::feasible);
  CHECK(sol.objective_value == doctest::Approx(min_eig_symmetric(s)).epsilon(1e-7));
}

TEST_CASE("check_solution examples") {
  const auto prog = oracle::example1_program();
  const SolutionCheck zero = check_solution(prog, std::vector<Matrix>{Matrix(3, 3)});
  CHECK(zero.max_residual == 5.0);
  CHECK(zero.min_eig == 0.0);
  const SolutionCheck one = check_solution(scalar_program(1.0), std::vector<Matrix>{Matrix{{1.0}}});
  CHECK(one.max_residual == 0.0);
  CHECK(one.min_eig == 1.0);
  CHECK_THROWS_AS(check_solution(prog, std::vector<Matrix>{Matrix(2, 2)}), DimensionError);
}

TEST_CASE("SDPA export format") {
  CHECK(export_sdpa(scalar_program(1.0)) == "1\n1\n1\n1.0\n1 1 1 1 1.0\n");
  const std::string ex1 = export_sdpa(oracle::example1_program());
  CHECK(ex1.rfind("5\n1\n3\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : ex1) lines += c == '\n';
  CHECK(lines == 4 + 6);  // header plus one line per nonzero coefficient
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.0) == "-2.0");
  CHECK(format_number(1e300) == "1.0000000000000001e+300");
}

TEST_CASE("SDPA round-trip on random programs") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t nb = 0;
    LinearMatrixProgram p = random_feasible(rng, nb);
    BlockTerm obj{0, {{0, 0, 0.25}}};
    p.objective = {obj};
    const LinearMatrixProgram back = parse_sdpa(export_sdpa(p));
    CHECK(back == p.canonical());
  }
}

TEST_CASE("SDPA parser tolerates comments and punctuation and rejects junk") {
  const std::string text =
      "\"a comment\n* another\n1 =mDIM\n1\n{1}\n(2.5)\n0 1 1 1 -1\n1 1 1 1 1\n";
  const LinearMatrixProgram p = parse_sdpa("\"c\n*c\n1\n1\n{1}\n{2.5}\n0 1 1 1 -1\n1 1 1 1 1\n");
  CHECK(p.constraints.size() == 1);
  CHECK(p.constraints[0].rhs == 2.5);
  CHECK(p.objective.at(0).entries.at(0).value == 1.0);
  CHECK_THROWS_AS(parse_sdpa(text), ParseError);
  CHECK_THROWS_AS(parse_sdpa("1\n1\n-2\n1\n1 1 1 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_sdpa("1\n1\n1\n1\n1 1 2 1 1\n"), ParseError);
}
