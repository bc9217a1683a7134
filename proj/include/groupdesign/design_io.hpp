#pragma once

#include <string>

#include "groupdesign/design.hpp"

namespace groupdesign {

// Womersley-style point file: one point per line, `dim` (3 or 4)
// whitespace-separated decimal coordinates. Rows must be unit vectors
// within 1e-6 (they are renormalized unless already within 1e-12).
// Produces an equal-weight design on Sphere2 (dim 3) or Sphere3 (dim 4).
// Throws ParseError with the offending line number on malformed input and
// DataError for empty files or off-sphere rows.
Design load_point_file(const std::string& path, int dim);

// Canonical text format: one point per line, stored coordinates printed
// with 17 significant digits, LF line endings, equal weights implied.
// load_text(save_text(d)) reproduces an equal-weight design bit-exactly.
void save_text(const Design& d, const std::string& path);
Design load_text(const std::string& path, const ManifoldId& manifold);

// Annotated JSON format {"manifold": ..., "points": [[...]], "weights": [...]};
// round-trips weighted designs on every catalog manifold.
std::string to_json_string(const Design& d);
Design design_from_json_string(const std::string& text);
void save_json(const Design& d, const std::string& path);
Design load_json(const std::string& path);

// Reads a design file by extension: ".json" as JSON, anything else as
// canonical text on the given manifold.
Design load_design(const std::string& path, const ManifoldId& manifold);

}  // namespace groupdesign
