#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwr/errors.hpp"
#include "qwr/szegedy.hpp"

namespace qwr {

using Json = nlohmann::ordered_json;  // stable key order

/// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Accepts decimal radians or the symbolic tokens "pi" and "pi/<k>".
inline double parse_angle(const std::string& text) {
  auto bad = [&]() { return std::domain_error("parse_angle: bad token \"" + text + "\""); };
  try {
    if (text == "pi") return std::numbers::pi;
    if (text.rfind("pi/", 0) == 0) {
      std::size_t pos = 0;
      double denom = std::stod(text.substr(3), &pos);
      if (pos != text.size() - 3 || denom == 0.0) throw bad();
      return std::numbers::pi / denom;
    }
    std::size_t pos = 0;
    double value = std::stod(text, &pos);
    if (pos != text.size()) throw bad();
    return value;
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

namespace csv {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

/// Header row then one comma-separated row per matrix row.
inline void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                         const std::vector<std::string>& header = {}) {
  auto out = open_out(path);
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j)
      out << (j ? "," : "") << header[j];
    out << "\n";
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_g17(m(i, j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Columns of equal length with one label each.
inline void write_columns(const std::filesystem::path& path,
                          const std::vector<std::string>& labels,
                          const std::vector<Eigen::VectorXd>& columns) {
  if (labels.size() != columns.size())
    throw std::invalid_argument("write_columns: labels/columns mismatch");
  auto out = open_out(path);
  for (std::size_t j = 0; j < labels.size(); ++j) out << (j ? "," : "") << labels[j];
  out << "\n";
  const Eigen::Index rows = columns.empty() ? 0 : columns[0].size();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << (j ? "," : "") << format_g17(columns[j][i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Debug dump of an edge-space state: flat index, both registers, re, im.
inline void write_state(const std::filesystem::path& path, const EdgeState& psi, int n) {
  auto out = open_out(path);
  out << "index,register1,register2,re,im\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex& a = psi[i * n + j];
      out << i * n + j << "," << i << "," << j << "," << format_g17(a.real()) << ","
          << format_g17(a.imag()) << "\n";
    }
  }
}

}  // namespace csv

inline constexpr int kEnvelopeSchemaVersion = 1;

/// Result envelope skeleton: schema version, the echoed configuration, and
/// empty results/timing objects for the command to fill in.
inline Json make_envelope(const std::string& command, Json config) {
  Json doc;
  doc["schema_version"] = kEnvelopeSchemaVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["results"] = Json::object();
  doc["timing"] = Json::object();
  return doc;
}

inline void write_json(const std::filesystem::path& path, const Json& doc) {
  auto out = csv::open_out(path);
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  return Json::parse(in);
}

inline Json to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Json to_json(const std::vector<int>& v) { return Json(v); }

}  // namespace qwr
