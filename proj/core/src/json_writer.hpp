#pragma once

// Private to the library: nlohmann's float output is shortest-round-trip,
// the reports want a fixed 17 significant digits.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "proxilift/space.hpp"

namespace proxilift::detail {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const auto scalar_array = [&j] {
    for (const auto& e : j) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write_json(value, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      // numeric rows stay on one line so matrices read as matrices
      if (j.empty() || scalar_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_json(j[i], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json(j[i], out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

inline std::string dump(const Json& j) {
  std::string out;
  write_json(j, out, 2, 0);
  out += '\n';
  return out;
}

inline Json to_json_vector(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

/// Row-major nested array.
inline Json to_json_matrix(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json_vector(m.row(r).transpose()));
  return a;
}

/// Columns as a list of vectors, the natural layout for a basis.
inline Json to_json_columns(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(to_json_vector(m.col(c)));
  return a;
}

}  // namespace proxilift::detail
