#include "miquel/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "miquel/error.hpp"

namespace miquel::cli {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Json& value, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";

  if (value.is_number_float()) {
    out += format_double(value.get<double>());
  } else if (value.is_object()) {
    if (value.empty()) {
      out += "{}";
      return;
    }
    out += "{";
    out += nl;
    bool first = true;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (!first) out += std::string(",") + nl;
      first = false;
      out += pad + Json(it.key()).dump() + sep;
      emit(it.value(), indent, depth + 1, out);
    }
    out += nl + close + "}";
  } else if (value.is_array()) {
    if (value.empty()) {
      out += "[]";
      return;
    }
    // Arrays of numbers stay on one line.
    bool flat = true;
    for (const auto& item : value) flat = flat && item.is_number();
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ", ";
        emit(value[i], indent, depth + 1, out);
      }
      out += "]";
      return;
    }
    out += "[";
    out += nl;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i > 0) out += std::string(",") + nl;
      out += pad;
      emit(value[i], indent, depth + 1, out);
    }
    out += nl + close + "]";
  } else {
    out += value.dump();
  }
}

}  // namespace

std::string to_text(const Json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  out += "\n";
  return out;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
}

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

Point2 point_from_json(const Json& value) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
    throw Error(ErrorCode::InvalidInput, "a point must be an array [x, y] of two numbers");
  const Point2 p{value[0].get<double>(), value[1].get<double>()};
  if (!is_finite(p)) throw Error(ErrorCode::InvalidInput, "point coordinates must be finite");
  return p;
}

Json points_json(const Pattern22& S) {
  Json points = Json::object();
  for (Label l : kAllLabels) points[std::string(1, to_char(l))] = point_json(S[l]);
  return points;
}

Json pattern_to_json(const Pattern22& S) {
  Json doc = Json::object();
  doc["format"] = kPatternFormat;
  doc["points"] = points_json(S);
  return doc;
}

Pattern22 points_from_json(const Json& points, double tol) {
  if (!points.is_object()) throw Error(ErrorCode::InvalidInput, "\"points\" must be an object");
  std::array<Point2, 9> pts;
  for (Label l : kAllLabels) {
    const std::string key(1, to_char(l));
    if (!points.contains(key)) throw Error(ErrorCode::InvalidInput, "missing point " + key);
    pts[static_cast<int>(l)] = point_from_json(points.at(key));
  }
  return Pattern22::from_points(pts, tol);
}

Pattern22 pattern_from_json(const Json& doc, double tol) {
  if (!doc.is_object() || !doc.contains("format") || doc.at("format") != kPatternFormat)
    throw Error(ErrorCode::InvalidInput, std::string("expected a ") + kPatternFormat + " document");
  if (!doc.contains("points")) throw Error(ErrorCode::InvalidInput, "missing \"points\"");
  return points_from_json(doc.at("points"), tol);
}

}  // namespace miquel::cli
