#pragma once

#include "frogs/geometry.hpp"

#include <iosfwd>
#include <string>

namespace frogs {

// Text format:
//
//   dim=2 region=torus side=20
//   0.5 1.25
//   3.0 4.5 amber
//
// One point per line, optional trailing colour token, '#' starts a comment.
// Parsing validates the set, so ties and duplicates surface as ValidationError.

PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
PointSet parse_point_set(const std::string& text);

/// Shortest decimal representation that round-trips to the same double.
std::string format_decimal(double value);

void write_point_set(std::ostream& out, const PointSet& set);
std::string point_set_to_string(const PointSet& set);

} // namespace frogs
