#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <tuple>

#include "jsrkit/sdp.hpp"

namespace jsrkit::sdp {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string export_sdpa(const LinearMatrixProgram& input) {
  input.validate();
  const LinearMatrixProgram prog = input.canonical();
  std::string out;
  out += std::to_string(prog.constraints.size()) + "\n";
  out += std::to_string(prog.block_sizes.size()) + "\n";
  for (std::size_t b = 0; b < prog.block_sizes.size(); ++b) {
    if (b) out += ' ';
    out += std::to_string(prog.block_sizes[b]);
  }
  out += "\n";
  for (std::size_t k = 0; k < prog.constraints.size(); ++k) {
    if (k) out += ' ';
    out += format_number(prog.constraints[k].rhs);
  }
  out += "\n";

  auto emit = [&out](std::size_t k, const std::vector<BlockTerm>& terms, double sign) {
    for (const auto& term : terms) {
      for (const auto& e : term.entries) {
        out += std::to_string(k) + ' ' + std::to_string(term.block + 1) + ' ' + std::to_string(e.i + 1) + ' ' +
               std::to_string(e.j + 1) + ' ' + format_number(sign * e.value) + "\n";
      }
    }
  };
  emit(0, prog.objective, -1.0);
  for (std::size_t k = 0; k < prog.constraints.size(); ++k) emit(k + 1, prog.constraints[k].terms, 1.0);
  return out;
}

LinearMatrixProgram parse_sdpa(std::string_view text) {
  // Drop leading comment lines, then treat the usual SDPA punctuation
  // ({ } ( ) ,) as whitespace.
  std::string body;
  {
    std::istringstream lines{std::string(text)};
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (header && first != std::string::npos && (line[first] == '"' || line[first] == '*')) continue;
      if (first != std::string::npos) header = false;
      body += line;
      body += '\n';
    }
  }
  std::replace_if(body.begin(), body.end(), [](char c) { return c == '{' || c == '}' || c == '(' || c == ')' || c == ','; }, ' ');
  std::istringstream in(body);

  long long m = 0, nb = 0;
  if (!(in >> m) || m < 1) throw ParseError("SDPA: bad constraint count");
  if (!(in >> nb) || nb < 1) throw ParseError("SDPA: bad block count");
  LinearMatrixProgram prog;
  for (long long b = 0; b < nb; ++b) {
    long long sz = 0;
    if (!(in >> sz)) throw ParseError("SDPA: missing block size");
    if (sz <= 0) throw ParseError("SDPA: diagonal (negative-size) blocks are not supported");
    prog.block_sizes.push_back(static_cast<std::size_t>(sz));
  }
  prog.constraints.resize(static_cast<std::size_t>(m));
  for (auto& c : prog.constraints) {
    if (!(in >> c.rhs)) throw ParseError("SDPA: missing right-hand side entry");
  }
  long long k = 0, b = 0, i = 0, j = 0;
  double v = 0.0;
  while (in >> k) {
    if (!(in >> b >> i >> j >> v)) throw ParseError("SDPA: truncated entry line");
    if (k < 0 || k > m) throw ParseError("SDPA: matrix index out of range");
    if (b < 1 || b > nb) throw ParseError("SDPA: block index out of range");
    const auto n = static_cast<long long>(prog.block_sizes[static_cast<std::size_t>(b - 1)]);
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("SDPA: entry outside its block");
    if (i > j) std::swap(i, j);
    SymEntry e{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), k == 0 ? -v : v};
    auto& terms = k == 0 ? prog.objective : prog.constraints[static_cast<std::size_t>(k - 1)].terms;
    terms.push_back({static_cast<std::size_t>(b - 1), {e}});
  }
  if (!in.eof()) throw ParseError("SDPA: unexpected token");
  prog.validate();
  return prog.canonical();
}

}  // namespace jsrkit::sdp
