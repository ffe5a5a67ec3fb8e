#pragma once
//
// JSON exchange formats and CSV output.
//
//   matrix: {"rows": r, "cols": c, "re": [...], "im": [...]}   row-major
//   frame:  {"dim": d, "vectors": [matrix, ...]}                each vector a d x 1 matrix
//
// Doubles are written with the shortest round-trip representation, so
// write/read is bit-exact for finite values.
//

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "framelab/matrix.hpp"

namespace framelab {

class io_error : public error {
 public:
  using error::error;
};

using json = nlohmann::ordered_json;

inline json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  try {
    if (!j.is_object()) throw io_error("matrix: expected a JSON object");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const json& re = j.at("re");
    const json& im = j.contains("im") ? j.at("im") : json::array();
    if (!re.is_array() || !im.is_array()) throw io_error("matrix: 're'/'im' must be arrays");
    if (re.size() != rows * cols)
      throw io_error("matrix: 're' has " + std::to_string(re.size()) + " entries, expected " +
                     std::to_string(rows * cols));
    if (!im.empty() && im.size() != re.size()) throw io_error("matrix: 'im' length differs from 're'");
    std::vector<complex> e(re.size());
    for (std::size_t k = 0; k < e.size(); ++k)
      e[k] = {re[k].get<double>(), im.empty() ? 0.0 : im[k].get<double>()};
    return ComplexMatrix(rows, cols, std::move(e));
  } catch (const json::exception& ex) {
    throw io_error(std::string("matrix: ") + ex.what());
  } catch (const io_error&) {
    throw;
  } catch (const error& ex) {
    throw io_error(std::string("matrix: ") + ex.what());
  }
}

inline json frame_to_json(const Frame& f) {
  json vs = json::array();
  for (std::size_t n = 0; n < f.size(); ++n) {
    const ComplexVector v = f.vector(n);
    vs.push_back(matrix_to_json(ComplexMatrix(f.dim(), 1, v)));
  }
  return {{"dim", f.dim()}, {"vectors", std::move(vs)}};
}

inline Frame frame_from_json(const json& j, double tol = default_spanning_tol) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<ComplexVector> vs;
    for (const json& v : j.at("vectors")) {
      const ComplexMatrix m = matrix_from_json(v);
      if (m.rows() * m.cols() != dim) throw io_error("frame: vector length differs from dim");
      vs.emplace_back(m.entries().begin(), m.entries().end());
    }
    return make_frame(vs, dim, tol, "file");
  } catch (const json::exception& ex) {
    throw io_error(std::string("frame: ") + ex.what());
  }
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw io_error(path.string() + ": " + ex.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path.string());
  out << text;
  if (!out) throw io_error("write failed: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

inline ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  return matrix_from_json(read_json_file(path));
}

inline void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_json_file(path, matrix_to_json(m));
}

inline Frame read_frame_file(const std::filesystem::path& path) { return frame_from_json(read_json_file(path)); }

inline void write_frame_file(const std::filesystem::path& path, const Frame& f) {
  write_json_file(path, frame_to_json(f));
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw io_error("csv: row width differs from header");
    rows_.push_back(std::move(cells));
    return *this;
  }

  std::string str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << quote(cells[k]);
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
  }

  void write(const std::filesystem::path& path) const { write_text_file(path, str()); }

  std::size_t size() const noexcept { return rows_.size(); }

 private:
  static std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline CsvTable frame_bounds_csv(const Frame& f) {
  CsvTable t({"label", "dim", "size", "lower_bound", "upper_bound", "condition"});
  t.row({f.label(), std::to_string(f.dim()), std::to_string(f.size()), format_double(f.lower_bound()),
         format_double(f.upper_bound()), format_double(f.condition())});
  return t;
}

}  // namespace framelab
