#include "ltiframe/cli/system_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ltiframe::cli {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& message) {
  throw ParseError(source + ": " + message);
}

double read_number(const Json& value, const std::string& source,
                   const std::string& where) {
  if (!value.is_number()) fail(source, where + " is not a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(source, where + " is not finite");
  return x;
}

Matrix read_matrix(const Json& doc, const char* field, const std::string& source) {
  const Json& rows = doc.at(field);
  const std::string name = std::string("field '") + field + "'";
  if (!rows.is_array() || rows.empty()) {
    fail(source, name + " must be a non-empty array of rows");
  }
  const std::size_t r = rows.size();
  if (!rows[0].is_array() || rows[0].empty()) {
    fail(source, name + " row 1 must be a non-empty array");
  }
  const std::size_t c = rows[0].size();
  Matrix out(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const std::string row_name = name + " row " + std::to_string(i + 1);
    if (!rows[i].is_array()) fail(source, row_name + " is not an array");
    if (rows[i].size() != c) {
      fail(source, row_name + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(c));
    }
    for (std::size_t j = 0; j < c; ++j) {
      out(i, j) = read_number(rows[i][j], source,
                              row_name + " entry " + std::to_string(j + 1));
    }
  }
  return out;
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // nlohmann reports "at line L, column C" in the message.
    fail(source, e.what());
  }
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

LtiSystem SystemFile::system() const {
  if (!b) throw ParseError("system file has no B matrix");
  return LtiSystem(a, *b, mode);
}

Horizon parse_horizon(const std::string& text) {
  if (text == "inf" || text == "infinity") return Horizon::infinite();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValueError("horizon '" + text + "' is neither a number nor \"inf\"");
  }
  if (used != text.size()) {
    throw ValueError("horizon '" + text + "' has trailing characters");
  }
  return Horizon::finite(v);
}

SystemFile parse_system_file(std::string_view text, const ParseOptions& opts) {
  const std::string& src = opts.source;
  const Json doc = parse_json(text, src);
  if (!doc.is_object()) fail(src, "top level must be an object");

  SystemFile file;
  if (!doc.contains("A")) fail(src, "missing field 'A'");
  file.a = read_matrix(doc, "A", src);
  if (file.a.rows() != file.a.cols()) {
    fail(src, "field 'A' must be square, got " + std::to_string(file.a.rows()) +
                  "x" + std::to_string(file.a.cols()));
  }
  if (doc.contains("B")) {
    file.b = read_matrix(doc, "B", src);
    if (file.b->rows() != file.a.rows()) {
      fail(src, "field 'B' has " + std::to_string(file.b->rows()) +
                    " rows, expected " + std::to_string(file.a.rows()));
    }
  } else if (opts.require_b) {
    fail(src, "missing field 'B'");
  }

  if (doc.contains("time_mode")) {
    const Json& mode = doc.at("time_mode");
    if (mode == "continuous") {
      file.mode = TimeMode::continuous;
    } else if (mode == "discrete") {
      file.mode = TimeMode::discrete;
    } else {
      fail(src, "field 'time_mode' must be \"continuous\" or \"discrete\"");
    }
  }

  if (doc.contains("horizon")) {
    const Json& h = doc.at("horizon");
    try {
      if (h.is_string()) {
        if (h != "inf") fail(src, "field 'horizon' must be a positive number or \"inf\"");
        file.horizon = Horizon::infinite();
      } else {
        file.horizon = Horizon::finite(read_number(h, src, "field 'horizon'"));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(src, std::string("field 'horizon': ") + e.what());
    }
  }
  return file;
}

SystemFile read_system_file(const std::filesystem::path& path, bool require_b) {
  return parse_system_file(slurp(path), {require_b, path.string()});
}

std::string write_system_file(const SystemFile& file) {
  nlohmann::ordered_json doc;
  doc["time_mode"] = to_string(file.mode);
  if (file.horizon) {
    if (file.horizon->is_infinite()) {
      doc["horizon"] = "inf";
    } else {
      doc["horizon"] = file.horizon->value();
    }
  }
  doc["A"] = matrix_json(file.a);
  if (file.b) doc["B"] = matrix_json(*file.b);
  return doc.dump(2) + "\n";
}

std::vector<Vector> parse_candidates(std::string_view text, const std::string& source) {
  const Json doc = parse_json(text, source);
  const Json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("candidates")) fail(source, "missing field 'candidates'");
    list = &doc.at("candidates");
  }
  if (!list->is_array()) fail(source, "candidates must be an array of vectors");
  std::vector<Vector> out;
  for (std::size_t k = 0; k < list->size(); ++k) {
    const Json& entry = (*list)[k];
    const std::string name = "candidate " + std::to_string(k + 1);
    if (!entry.is_array() || entry.empty()) {
      fail(source, name + " must be a non-empty array of numbers");
    }
    Vector v(entry.size());
    for (std::size_t i = 0; i < entry.size(); ++i) {
      v[i] = read_number(entry[i], source, name + " entry " + std::to_string(i + 1));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> read_candidates(const std::filesystem::path& path) {
  return parse_candidates(slurp(path), path.string());
}

}  // namespace ltiframe::cli
