#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "jsrkit/linalg.hpp"
#include "jsrkit/sdp.hpp"
#include "jsrkit/symalg.hpp"

namespace jsrkit::detail {

/// Coefficient k of the form (x^[d])ᵀ Q x^[d] as a linear functional of Q.
inline std::vector<sdp::SymEntry> coefficient_row(const std::vector<GramMapEntry>& row) {
  std::vector<sdp::SymEntry> out;
  out.reserve(row.size());
  for (const auto& e : row) out.push_back({e.i, e.j, e.weight});
  return out;
}

/// Upper-triangle entries of a dense symmetric coefficient matrix.
inline std::vector<sdp::SymEntry> upper_entries(const Matrix& c, double drop_below = 0.0) {
  std::vector<sdp::SymEntry> out;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = i; j < c.cols(); ++j) {
      const double v = i == j ? c(i, i) : 0.5 * (c(i, j) + c(j, i));
      if (std::abs(v) > drop_below) out.push_back({i, j, v});
    }
  }
  return out;
}

inline sdp::BlockTerm trace_term(std::size_t block, std::size_t n) {
  sdp::BlockTerm t{block, {}};
  for (std::size_t i = 0; i < n; ++i) t.entries.push_back({i, i, 1.0});
  return t;
}

}  // namespace jsrkit::detail
