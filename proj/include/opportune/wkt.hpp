#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opportune/geometry.hpp"

namespace opportune {

struct Polyline {
  std::vector<Point> points;
};

struct WktParseError : std::runtime_error {
  WktParseError(int line_, const std::string& what_)
      : std::runtime_error("wkt parse error at line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
  int line;
};

/// Parses LINESTRING / MULTILINESTRING entries from WKT text. Whitespace and
/// newlines may appear anywhere between tokens; anything else is an error
/// reported with its line number. Every polyline has at least two points.
std::vector<Polyline> parse_wkt(std::string_view text);

std::vector<Polyline> load_wkt_file(const std::string& path);

/// One LINESTRING per polyline, coordinates formatted so that re-parsing
/// yields bit-identical doubles.
std::string to_wkt(const Polyline& line);

}  // namespace opportune
