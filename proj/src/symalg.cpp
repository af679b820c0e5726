#include "jsrkit/symalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace jsrkit {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    // r * num / i is exact at every step; guard the multiplication.
    if (r > std::numeric_limits<std::size_t>::max() / num) {
      throw CapExceededError("binomial coefficient overflows 64 bits");
    }
    r = r * num / i;
  }
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

namespace {

void enumerate_rec(int n, int remaining, std::size_t pos, Exponents& cur, std::vector<Exponents>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate_rec(n, remaining - e, pos + 1, cur, out);
  }
}

double multinomial(const Exponents& alpha) {
  int total = 0;
  double r = 1.0;
  for (int a : alpha) {
    for (int i = 1; i <= a; ++i) r = r * (total + i) / i;
    total += a;
  }
  return r;
}

double multiplicity_factor(const Exponents& alpha) {
  double mu = 1.0;
  for (int a : alpha) mu *= factorial(a);
  return mu;
}

}  // namespace

LiftBasis::LiftBasis(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0) throw PreconditionError("LiftBasis: need n >= 1 and d >= 0");
  auto data = std::make_shared<Data>();
  Exponents cur(static_cast<std::size_t>(n), 0);
  enumerate_rec(n, d, 0, cur, data->indices);
  data->scalings.reserve(data->indices.size());
  for (std::size_t k = 0; k < data->indices.size(); ++k) {
    data->scalings.push_back(std::sqrt(multinomial(data->indices[k])));
    data->lookup.emplace(data->indices[k], k);
  }
  data_ = std::move(data);
}

std::size_t LiftBasis::position(const Exponents& alpha) const {
  const auto it = data_->lookup.find(alpha);
  if (it == data_->lookup.end()) throw DimensionError("exponent tuple not in basis");
  return it->second;
}

LiftBasis enumerate_basis(int n, int d) {
  if (n < 1 || d < 1) throw PreconditionError("enumerate_basis: need n >= 1 and d >= 1");
  return LiftBasis(n, d);
}

Vector lift_vector(std::span<const double> x, int d) {
  if (x.empty()) throw DimensionError("lift_vector: empty vector");
  if (d < 0) throw PreconditionError("lift_vector: negative degree");
  const LiftBasis basis(static_cast<int>(x.size()), d);
  Vector out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    double v = basis.scaling(k);
    const Exponents& alpha = basis.index(k);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      for (int e = 0; e < alpha[i]; ++e) v *= x[i];
    }
    out[k] = v;
  }
  return out;
}

namespace {

double permanent_ryser(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  // Gray-code enumeration of column subsets S, tracking row sums over S.
  // per(A) = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a_ij.
  std::vector<double> rowsum(n, 0.0);
  double total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    const double sign = (gray & bit) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) rowsum[i] += sign * m(i, static_cast<std::size_t>(j));
    double prod = 1.0;
    for (std::size_t i = 0; i < n && prod != 0.0; ++i) prod *= rowsum[i];
    total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
  }
  return (n % 2 == 0) ? total : -total;
}

double permanent_naive(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  double total = 0.0;
  do {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, sigma[i]);
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace

double permanent(const Matrix& m, PermanentMethod method) {
  if (!m.is_square()) throw DimensionError("permanent: square matrix required");
  if (method == PermanentMethod::ryser) {
    if (m.rows() > 20) throw CapExceededError("permanent: ryser limited to 20x20");
    return permanent_ryser(m);
  }
  if (m.rows() > 8) throw CapExceededError("permanent: naive sum limited to 8x8");
  return permanent_naive(m);
}

Matrix induced_matrix(const Matrix& a, int d) {
  if (!a.is_square() || a.rows() == 0) throw DimensionError("induced_matrix: square matrix required");
  if (d < 1) throw PreconditionError("induced_matrix: d must be >= 1");
  const LiftBasis basis(static_cast<int>(a.rows()), d);
  const std::size_t big_n = basis.size();
  const auto ud = static_cast<std::size_t>(d);

  // Multisets listed with multiplicity, and μ for each.
  std::vector<std::vector<std::size_t>> multisets(big_n);
  Vector mu(big_n);
  for (std::size_t k = 0; k < big_n; ++k) {
    const Exponents& alpha = basis.index(k);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int e = 0; e < alpha[i]; ++e) multisets[k].push_back(i);
    mu[k] = multiplicity_factor(alpha);
  }

  Matrix out(big_n, big_n);
  Matrix sub(ud, ud);
  for (std::size_t r = 0; r < big_n; ++r) {
    const auto& rows = multisets[r];
    for (std::size_t c = 0; c < big_n; ++c) {
      const auto& cols = multisets[c];
      for (std::size_t s = 0; s < ud; ++s)
        for (std::size_t t = 0; t < ud; ++t) sub(s, t) = a(rows[s], cols[t]);
      out(r, c) = permanent_ryser(sub) / std::sqrt(mu[r] * mu[c]);
    }
  }
  return out;
}

PolyCoeffs zero_poly(int n, int degree) {
  LiftBasis basis(n, degree);
  Vector coeffs(basis.size(), 0.0);
  return {std::move(basis), std::move(coeffs)};
}

PolyCoeffs from_monomial_coeffs(const LiftBasis& basis, std::span<const double> monomial) {
  if (monomial.size() != basis.size()) throw DimensionError("monomial coefficient count");
  Vector c(basis.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = monomial[k] / basis.scaling(k);
  return {basis, std::move(c)};
}

Vector to_monomial_coeffs(const PolyCoeffs& p) {
  Vector out(p.coeffs.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeffs[k] * p.basis.scaling(k);
  return out;
}

PolyCoeffs sphere_power(int n, int d) {
  const LiftBasis gram(n, d);
  return gram_to_coeffs(Matrix::identity(gram.size()), gram);
}

PolyCoeffs compose_with_lift(const PolyCoeffs& p, const Matrix& lifted) {
  if (lifted.rows() != p.coeffs.size() || !lifted.is_square()) {
    throw DimensionError("compose: induced matrix does not match the form's basis");
  }
  return {p.basis, transpose_times(lifted, p.coeffs)};
}

PolyCoeffs compose_coeffs(const PolyCoeffs& p, const Matrix& a) {
  if (!a.is_square() || static_cast<int>(a.rows()) != p.n()) {
    throw DimensionError("compose_coeffs: matrix size must equal the number of variables");
  }
  if (p.degree() == 0) return p;
  return compose_with_lift(p, induced_matrix(a, p.degree()));
}

std::vector<std::vector<GramMapEntry>> gram_coefficient_map(const LiftBasis& gram_basis) {
  const LiftBasis big(gram_basis.n(), 2 * gram_basis.d());
  std::vector<std::vector<GramMapEntry>> map(big.size());
  const std::size_t n = gram_basis.size();
  Exponents sum(static_cast<std::size_t>(gram_basis.n()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Exponents& a = gram_basis.index(i);
      const Exponents& b = gram_basis.index(j);
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = a[v] + b[v];
      const std::size_t k = big.position(sum);
      map[k].push_back({i, j, gram_basis.scaling(i) * gram_basis.scaling(j) / big.scaling(k)});
    }
  }
  return map;
}

PolyCoeffs gram_to_coeffs(const Matrix& q, const LiftBasis& basis) {
  if (!q.is_square() || q.rows() != basis.size()) throw DimensionError("gram_to_coeffs: Gram size mismatch");
  const auto map = gram_coefficient_map(basis);
  LiftBasis big(basis.n(), 2 * basis.d());
  Vector c(big.size(), 0.0);
  for (std::size_t k = 0; k < map.size(); ++k) {
    double s = 0.0;
    for (const auto& e : map[k]) s += e.i == e.j ? e.weight * q(e.i, e.i) : e.weight * (q(e.i, e.j) + q(e.j, e.i));
    c[k] = s;
  }
  return {std::move(big), std::move(c)};
}

std::map<Exponents, double> gram_to_monomial_coeffs(const Matrix& q, std::span<const Exponents> monomials) {
  if (!q.is_square() || q.rows() != monomials.size()) throw DimensionError("Gram size must match monomial list");
  std::map<Exponents, double> out;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      if (monomials[i].size() != monomials[j].size()) throw DimensionError("monomials of mixed arity");
      Exponents sum(monomials[i].size());
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = monomials[i][v] + monomials[j][v];
      out[sum] += q(i, j);
    }
  }
  return out;
}

double eval_poly(const PolyCoeffs& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.n()) throw DimensionError("eval_poly: point dimension");
  return dot(p.coeffs, lift_vector(x, p.degree()));
}

}  // namespace jsrkit
