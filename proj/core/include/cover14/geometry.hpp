#pragma once

#include <span>
#include <vector>

#include "cover14/errors.hpp"
#include "cover14/rational.hpp"
#include "cover14/vec.hpp"

namespace cover14::geo {

// Closed halfspace {x : normal.x <= offset}. Canonical form divides through by
// the absolute value of the first nonzero normal coordinate, so syntactically
// equal halfspaces are exactly the geometrically equal ones.
struct Halfspace {
  Vec3 normal;
  Rational offset;

  void canonicalize();
  Rational eval(const Vec3& x) const { return normal.dot(x); }
  bool satisfied_by(const Vec3& x) const { return eval(x) <= offset; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend std::strong_ordering operator<=>(const Halfspace& a, const Halfspace& b) {
    if (auto o = a.normal <=> b.normal; o != 0) return o;
    return a.offset <=> b.offset;
  }
};

// Bounded polytope in halfspace representation.
struct HPolytope {
  std::vector<Halfspace> halfspaces;
  int facet_count() const { return static_cast<int>(halfspaces.size()); }
};

struct VPolytope {
  std::vector<Vec3> vertices;
};

// Facet-defining inequalities of conv(points), by incremental insertion with
// exact orientation predicates. Coplanar triangles are merged into one facet,
// so each returned halfspace is tight at >= 3 affinely independent inputs.
// Throws DegenerateHull when the points do not span E^3.
HPolytope hull3(std::span<const Vec3> points);

// Closed exact membership.
bool contains(const HPolytope& p, const Vec3& x);

// Intersection: concatenate, canonicalize, deduplicate (first occurrence
// kept), then eliminate redundant halfspaces. Throws EmptyIntersection.
HPolytope intersect(std::span<const HPolytope> parts);

// Same point set, every retained halfspace tight somewhere on the polytope.
HPolytope remove_redundant(const HPolytope& p);

// Exact extreme points of a bounded full-dimensional polytope.
// Throws UnboundedPolytope / DegeneratePolytope.
VPolytope vertices(const HPolytope& p);

// Exact support value max{direction.x : x in p}.
Rational support(const HPolytope& p, const Vec3& direction);

// Strictly interior point together with the largest inradius-style margin t
// such that normal.x + t*|normal|_1 <= offset holds for every halfspace.
// margin > 0 iff the polytope is full-dimensional.
struct InteriorPoint {
  Vec3 point;
  Rational margin;
};
InteriorPoint interior_point(const HPolytope& p);

}  // namespace cover14::geo
