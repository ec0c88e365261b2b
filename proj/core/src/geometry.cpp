#include "cover14/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "cover14/simplex.hpp"

namespace cover14::geo {

void Halfspace::canonicalize() {
  for (int i = 0; i < 3; ++i) {
    if (!normal[i].is_zero()) {
      const Rational s = normal[i].abs();
      for (int j = i; j < 3; ++j) normal[j] /= s;
      offset /= s;
      return;
    }
  }
  throw std::invalid_argument("Halfspace: zero normal");
}

namespace {

struct Triangle {
  int a, b, c;
  Vec3 normal;      // (b-a) x (c-a), outward
  Rational offset;  // normal . a
};

Triangle make_triangle(const std::vector<Vec3>& pts, int a, int b, int c, const Vec3& inside) {
  Triangle t{a, b, c, {}, {}};
  t.normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  t.offset = t.normal.dot(pts[a]);
  const int side = (t.normal.dot(inside) - t.offset).sign();
  if (side == 0) throw std::logic_error("hull3: facet plane through the interior reference");
  if (side > 0) {
    std::swap(t.b, t.c);
    t.normal = -t.normal;
    t.offset = -t.offset;
  }
  return t;
}

}  // namespace

HPolytope hull3(std::span<const Vec3> points) {
  std::vector<Vec3> pts;
  pts.reserve(points.size());
  {
    std::set<Vec3> seen;
    for (const Vec3& p : points)
      if (seen.insert(p).second) pts.push_back(p);
  }
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateHull();

  // Initial affinely independent quadruple, scanning in input order.
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if (!(pts[i] == pts[0])) i1 = i;
  for (int i = 1; i < n && i2 < 0; ++i)
    if (i != i1 && !(pts[i1] - pts[0]).cross(pts[i] - pts[0]).is_zero()) i2 = i;
  if (i2 < 0) throw DegenerateHull();
  for (int i = 1; i < n && i3 < 0; ++i)
    if (i != i1 && i != i2 && orient3d(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  if (i3 < 0) throw DegenerateHull();

  const Rational quarter(1, 4);
  const Vec3 inside = quarter * (pts[0] + pts[i1] + pts[i2] + pts[i3]);

  std::vector<Triangle> tris{
      make_triangle(pts, 0, i1, i2, inside),
      make_triangle(pts, 0, i1, i3, inside),
      make_triangle(pts, 0, i2, i3, inside),
      make_triangle(pts, i1, i2, i3, inside),
  };

  for (int p = 1; p < n; ++p) {
    if (p == i1 || p == i2 || p == i3) continue;
    std::vector<char> visible(tris.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < tris.size(); ++f) {
      if (tris[f].normal.dot(pts[p]) > tris[f].offset) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;  // inside or on the current hull

    // Horizon: directed edges of visible triangles whose reverse edge is not
    // itself an edge of a visible triangle.
    std::set<std::pair<int, int>> edges;
    for (std::size_t f = 0; f < tris.size(); ++f) {
      if (!visible[f]) continue;
      const Triangle& t = tris[f];
      edges.emplace(t.a, t.b);
      edges.emplace(t.b, t.c);
      edges.emplace(t.c, t.a);
    }
    std::vector<Triangle> next;
    for (std::size_t f = 0; f < tris.size(); ++f)
      if (!visible[f]) next.push_back(tris[f]);
    for (const auto& [u, v] : edges) {
      if (edges.count({v, u})) continue;
      next.push_back(make_triangle(pts, u, v, p, inside));
    }
    tris = std::move(next);
  }

  HPolytope out;
  {
    std::set<Halfspace> seen;
    for (const Triangle& t : tris) {
      Halfspace h{t.normal, t.offset};
      h.canonicalize();
      if (seen.insert(h).second) out.halfspaces.push_back(std::move(h));
    }
  }
  std::sort(out.halfspaces.begin(), out.halfspaces.end());

  // The kernel backs a proof, so audit the output on every call: all inputs
  // inside, every facet supporting.
  for (const Halfspace& h : out.halfspaces)
    for (const Vec3& p : pts)
      if (!h.satisfied_by(p)) throw std::logic_error("hull3: facet cuts off an input point");
  return out;
}

bool contains(const HPolytope& p, const Vec3& x) {
  for (const Halfspace& h : p.halfspaces)
    if (!h.satisfied_by(x)) return false;
  return true;
}

namespace {

lp::LinearSystem to_system(const HPolytope& p) {
  lp::LinearSystem s(p.halfspaces.size(), 3);
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    for (int j = 0; j < 3; ++j) s.at(i, j) = p.halfspaces[i].normal[j];
    s.rhs(i) = p.halfspaces[i].offset;
  }
  return s;
}

HPolytope canonical_dedup(std::span<const Halfspace> hs) {
  HPolytope out;
  std::set<Halfspace> seen;
  for (Halfspace h : hs) {
    h.canonicalize();
    if (seen.insert(h).second) out.halfspaces.push_back(std::move(h));
  }
  return out;
}

// Greedy one-at-a-time elimination in input order; exact support LP per
// candidate. Used for small or non-full-dimensional systems.
HPolytope remove_redundant_greedy(HPolytope p) {
  std::size_t i = 0;
  while (i < p.halfspaces.size() && p.halfspaces.size() > 1) {
    lp::LinearSystem rest(p.halfspaces.size() - 1, 3);
    std::size_t r = 0;
    for (std::size_t j = 0; j < p.halfspaces.size(); ++j) {
      if (j == i) continue;
      for (int k = 0; k < 3; ++k) rest.at(r, k) = p.halfspaces[j].normal[k];
      rest.rhs(r) = p.halfspaces[j].offset;
      ++r;
    }
    std::vector<Rational> obj(3);
    for (int k = 0; k < 3; ++k) obj[k] = p.halfspaces[i].normal[k];
    auto m = lp::maximize(rest, obj);
    const bool redundant = m.status == lp::MaximizeResult::Status::Optimal &&
                           m.value <= p.halfspaces[i].offset;
    if (redundant)
      p.halfspaces.erase(p.halfspaces.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return p;
}

// Rank of a set of direction vectors in E^3.
int rank3(const std::vector<Vec3>& vs) {
  std::vector<Vec3> basis;
  for (const Vec3& v : vs) {
    if (basis.size() == 3) break;
    if (v.is_zero()) continue;
    if (basis.empty()) {
      basis.push_back(v);
    } else if (basis.size() == 1) {
      if (!basis[0].cross(v).is_zero()) basis.push_back(v);
    } else if (!basis[0].cross(basis[1]).dot(v).is_zero()) {
      basis.push_back(v);
    }
  }
  return static_cast<int>(basis.size());
}

}  // namespace

InteriorPoint interior_point(const HPolytope& p) {
  lp::LinearSystem s(p.halfspaces.size() + 1, 4);
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    for (int j = 0; j < 3; ++j) s.at(i, j) = p.halfspaces[i].normal[j];
    s.at(i, 3) = p.halfspaces[i].normal.l1_norm();
    s.rhs(i) = p.halfspaces[i].offset;
  }
  s.at(p.halfspaces.size(), 3) = 1;
  s.rhs(p.halfspaces.size()) = 1;
  std::vector<Rational> obj(4);
  obj[3] = 1;
  auto m = lp::maximize(s, obj);
  if (m.status != lp::MaximizeResult::Status::Optimal)
    throw std::logic_error("interior_point: margin program must have an optimum");
  return {{m.point[0], m.point[1], m.point[2]}, m.value};
}

HPolytope remove_redundant(const HPolytope& p) {
  HPolytope cur = canonical_dedup(p.halfspaces);
  if (cur.halfspaces.size() <= 4) return remove_redundant_greedy(std::move(cur));

  const InteriorPoint ip = interior_point(cur);
  if (ip.margin.sign() < 0) throw EmptyIntersection();
  if (ip.margin.sign() == 0) return remove_redundant_greedy(std::move(cur));

  // Full-dimensional case via the polar dual: constraint i, rewritten around
  // the interior point as d_i.z <= 1, is facet-defining iff d_i is a vertex
  // of conv{d_j}, i.e. iff the dual facets tight at d_i have rank 3.
  std::vector<Vec3> dual;
  dual.reserve(cur.halfspaces.size());
  for (const Halfspace& h : cur.halfspaces) {
    const Rational c = h.offset - h.normal.dot(ip.point);
    dual.push_back(Rational(1) / c * h.normal);
  }
  HPolytope dual_hull = hull3(dual);
  HPolytope out;
  for (std::size_t i = 0; i < dual.size(); ++i) {
    std::vector<Vec3> tight;
    for (const Halfspace& f : dual_hull.halfspaces)
      if (f.eval(dual[i]) == f.offset) tight.push_back(f.normal);
    if (rank3(tight) == 3) out.halfspaces.push_back(cur.halfspaces[i]);
  }
  return out;
}

HPolytope intersect(std::span<const HPolytope> parts) {
  if (parts.empty()) throw std::invalid_argument("intersect: empty input");
  std::vector<Halfspace> all;
  for (const HPolytope& p : parts)
    for (const Halfspace& h : p.halfspaces) all.push_back(h);
  HPolytope cat = canonical_dedup(all);
  auto feas = lp::feasible_exact(to_system(cat));
  if (!feas.feasible) throw EmptyIntersection();
  return remove_redundant(cat);
}

Rational support(const HPolytope& p, const Vec3& direction) {
  std::vector<Rational> obj{direction[0], direction[1], direction[2]};
  auto m = lp::maximize(to_system(p), obj);
  switch (m.status) {
    case lp::MaximizeResult::Status::Infeasible:
      throw EmptyIntersection("support: empty polytope");
    case lp::MaximizeResult::Status::Unbounded:
      throw UnboundedPolytope("support: unbounded direction");
    case lp::MaximizeResult::Status::Optimal:
      return m.value;
  }
  throw std::logic_error("support: unreachable");
}

VPolytope vertices(const HPolytope& p) {
  const lp::LinearSystem s = to_system(p);
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {1, -1}) {
      std::vector<Rational> obj(3);
      obj[static_cast<std::size_t>(axis)] = sign;
      auto m = lp::maximize(s, obj);
      if (m.status == lp::MaximizeResult::Status::Unbounded) throw UnboundedPolytope();
      if (m.status == lp::MaximizeResult::Status::Infeasible) throw DegeneratePolytope("vertices: empty polytope");
    }
  }
  const InteriorPoint ip = interior_point(p);
  if (ip.margin.sign() <= 0) throw DegeneratePolytope();

  std::vector<Vec3> dual;
  dual.reserve(p.halfspaces.size());
  for (const Halfspace& h : p.halfspaces) {
    const Rational c = h.offset - h.normal.dot(ip.point);
    dual.push_back(Rational(1) / c * h.normal);
  }
  // Facet m.z <= b of the dual hull (b > 0 since 0 is interior) maps back to
  // the vertex x0 + m/b.
  HPolytope dual_hull = hull3(dual);
  VPolytope out;
  for (const Halfspace& f : dual_hull.halfspaces) {
    if (f.offset.sign() <= 0) throw std::logic_error("vertices: dual facet through the origin");
    const Rational inv = Rational(1) / f.offset;
    Vec3 v = ip.point + inv * f.normal;
    int tight = 0;
    for (const Halfspace& h : p.halfspaces) {
      if (h.eval(v) > h.offset) throw std::logic_error("vertices: recovered point escapes polytope");
      if (h.eval(v) == h.offset) ++tight;
    }
    if (tight < 3) throw std::logic_error("vertices: recovered point not a vertex");
    out.vertices.push_back(std::move(v));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

}  // namespace cover14::geo
