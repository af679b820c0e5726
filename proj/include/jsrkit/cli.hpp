#pragma once

// Command-line front end. `run` is the whole tool minus process plumbing so
// tests can drive it with in-memory streams.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "jsrkit/matrix_set.hpp"

namespace jsrkit::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_certificate_rejected = 1,
  exit_input_error = 2,
  exit_numerical_failure = 3,
};

struct InputDocument {
  std::string name;
  std::vector<Matrix> matrices;
  nlohmann::json metadata = nlohmann::json::object();

  MatrixSet to_set() const { return MatrixSet(matrices, name); }
};

/// {"name": str?, "matrices": [[[row], ...], ...], "metadata": {...}?}
InputDocument parse_input_json(std::string_view text);
/// One matrix per blank-line-separated block of whitespace-separated rows;
/// lines starting with '#' are ignored.
InputDocument parse_input_txt(std::string_view text);

std::string read_file(const std::string& path);
std::string sha256_hex(std::string_view bytes);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jsrkit::cli
