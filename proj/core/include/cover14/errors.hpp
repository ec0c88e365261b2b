#pragma once

#include <stdexcept>
#include <string>

namespace cover14 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry kernel errors. These are reported, never silently repaired.
struct DegenerateHull : Error {
  explicit DegenerateHull(const std::string& what = "input points are coplanar or collinear") : Error(what) {}
};
struct EmptyIntersection : Error {
  explicit EmptyIntersection(const std::string& what = "halfspace intersection is empty") : Error(what) {}
};
struct UnboundedPolytope : Error {
  explicit UnboundedPolytope(const std::string& what = "polytope is unbounded") : Error(what) {}
};
struct DegeneratePolytope : Error {
  explicit DegeneratePolytope(const std::string& what = "polytope is empty or not full-dimensional") : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what = "dimension mismatch") : Error(what) {}
};

// A box whose polytope construction failed; the box is aborted, never guessed at.
struct BoxGeometryError : Error {
  using Error::Error;
};

// Would falsify the strict-translate property; treated as a pipeline bug.
struct NoStrictTranslate : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, long line_no) : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  long line;
};
struct VersionMismatch : Error {
  using Error::Error;
};

}  // namespace cover14
