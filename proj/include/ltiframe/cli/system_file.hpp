#pragma once

// JSON system description:
//   {"time_mode": "continuous", "horizon": 1.0, "A": [[...]], "B": [[...]]}
// `horizon` may be the string "inf". Numbers are written with shortest
// round-trip precision so write/read cycles reproduce the matrices exactly.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltiframe/errors.hpp"
#include "ltiframe/system.hpp"

namespace ltiframe::cli {

class ParseError : public ValueError {
 public:
  using ValueError::ValueError;
};

struct SystemFile {
  Matrix a;
  std::optional<Matrix> b;  // may be absent for actuator selection
  TimeMode mode = TimeMode::continuous;
  std::optional<Horizon> horizon;

  /// Throws ParseError when B is absent.
  LtiSystem system() const;
};

struct ParseOptions {
  bool require_b = true;
  std::string source = "<input>";  // used in error messages
};

SystemFile parse_system_file(std::string_view text, const ParseOptions& opts = {});
SystemFile read_system_file(const std::filesystem::path& path, bool require_b = true);

std::string write_system_file(const SystemFile& file);

/// Either {"candidates": [[...], ...]} or a bare array of columns.
std::vector<Vector> parse_candidates(std::string_view text,
                                     const std::string& source = "<input>");
std::vector<Vector> read_candidates(const std::filesystem::path& path);

/// "inf" or a positive number.
Horizon parse_horizon(const std::string& text);

}  // namespace ltiframe::cli
