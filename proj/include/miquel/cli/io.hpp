#pragma once

#include <string>

#include <json.hpp>

#include "miquel/pattern.hpp"

namespace miquel::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPatternFormat = "miquel-pattern/1";
inline constexpr const char* kOrbitFormat = "miquel-orbit/1";

/// Serializes with floating-point numbers at 17 significant digits, so that
/// every double survives a round trip. Non-finite numbers become null.
std::string to_text(const Json& value, int indent = 2);

/// Throws InvalidInput on malformed text.
Json parse_text(const std::string& text);

/// Throw Io.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Json point_json(Point2 p);

/// Throws InvalidInput unless `value` is an array of two finite numbers.
Point2 point_from_json(const Json& value);

Json points_json(const Pattern22& S);
Json pattern_to_json(const Pattern22& S);

/// Reads the `points` object of a pattern or orbit step and validates it.
Pattern22 points_from_json(const Json& points, double tol);

/// Checks the format tag, then reads the points.
Pattern22 pattern_from_json(const Json& doc, double tol);

}  // namespace miquel::cli
