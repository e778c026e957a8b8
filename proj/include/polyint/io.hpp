#pragma once

#include "polyint/body.hpp"

#include <string>
#include <vector>

namespace polyint::io {

/// Parses a body description. Errors carry "origin:line: message".
ConvexBody parse_body(const std::string& text, const std::string& origin = "<body>");
ConvexBody load_body(const std::string& path);
std::string read_file(const std::string& path);

/// "x,y,z" -> vector; `normalize` rescales to unit length.
Vec parse_vector(const std::string& text, bool normalize = false);
std::vector<double> parse_list(const std::string& text);

struct AlphaRange {
  double min = 1.0;
  double max = 1e3;
  int samples = 31;
};
/// "MIN:MAX:K".
AlphaRange parse_alpha(const std::string& text);

/// "%.17g" formatting used for every number written to CSV.
std::string num(double x);

}  // namespace polyint::io
