#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "jsrkit/cli.hpp"
#include "jsrkit/errors.hpp"

namespace jsrkit::cli {

using nlohmann::json;

namespace {

void check_shapes(const std::vector<Matrix>& ms) {
  if (ms.empty()) throw ParseError("input: at least one matrix is required");
  const std::size_t n = ms.front().rows();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].rows() != n || ms[k].cols() != n) {
      throw ParseError("input: matrix " + std::to_string(k + 1) + " is not " + std::to_string(n) + "x" +
                       std::to_string(n));
    }
  }
}

}  // namespace

InputDocument parse_input_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("input: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("input: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "name" && key != "matrices" && key != "metadata") throw ParseError("input: unknown field '" + key + "'");
  }
  InputDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("input: 'name' must be a string");
    out.name = doc["name"].get<std::string>();
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) throw ParseError("input: 'metadata' must be an object");
    out.metadata = doc["metadata"];
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_array()) throw ParseError("input: 'matrices' must be an array");
  for (const auto& grid : doc["matrices"]) {
    if (!grid.is_array() || grid.empty()) throw ParseError("input: each matrix must be a nonempty array of rows");
    const std::size_t rows = grid.size();
    const std::size_t cols = grid[0].is_array() ? grid[0].size() : 0;
    Matrix a(rows, std::max<std::size_t>(cols, 1));
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& row = grid[r];
      if (!row.is_array() || row.size() != cols || cols == 0) throw ParseError("input: ragged or empty matrix row");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!row[c].is_number()) throw ParseError("input: matrix entries must be numbers");
        const double v = row[c].get<double>();
        if (!std::isfinite(v)) throw ParseError("input: matrix entries must be finite");
        a(r, c) = v;
      }
    }
    out.matrices.push_back(std::move(a));
  }
  check_shapes(out.matrices);
  return out;
}

InputDocument parse_input_txt(std::string_view text) {
  InputDocument out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<double>> block;
  auto flush = [&] {
    if (block.empty()) return;
    Matrix a(block.size(), block.front().size());
    for (std::size_t r = 0; r < block.size(); ++r) {
      if (block[r].size() != block.front().size()) throw ParseError("input: ragged matrix row");
      for (std::size_t c = 0; c < block[r].size(); ++c) a(r, c) = block[r][c];
    }
    out.matrices.push_back(std::move(a));
    block.clear();
  };
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') continue;
    if (first == std::string::npos) {
      flush();
      continue;
    }
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) throw ParseError("input: bad number '" + tok + "'");
      row.push_back(v);
    }
    block.push_back(std::move(row));
  }
  flush();
  check_shapes(out.matrices);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

}  // namespace jsrkit::cli
