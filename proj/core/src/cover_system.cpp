#include "cover14/cover_system.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cover14/util.hpp"

namespace cover14::cover {

bool TauMap::injective() const {
  std::set<int> seen(edge_of_face.begin(), edge_of_face.end());
  return seen.size() == 6;
}

bool TauMap::restricted() const {
  for (int f = 0; f < cfg::kNumFaces; ++f)
    if (!cfg::edge_in_face(edge_of_face[static_cast<size_t>(f)], cfg::face_of_index(f))) return false;
  return true;
}

std::array<int, 6> TauMap::selected_edges() const {
  std::array<int, 6> e = edge_of_face;
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<TauMap> enumerate_taus(bool restricted) {
  std::vector<TauMap> out;
  TauMap cur{};
  unsigned used = 0;
  auto rec = [&](auto&& self, int face) -> void {
    if (face == cfg::kNumFaces) {
      out.push_back(cur);
      return;
    }
    if (restricted) {
      for (int k : cfg::face_edges(cfg::face_of_index(face))) {
        if (used & (1u << k)) continue;
        cur.edge_of_face[static_cast<size_t>(face)] = k;
        used |= 1u << k;
        self(self, face + 1);
        used &= ~(1u << k);
      }
    } else {
      for (int k = 0; k < cfg::kNumEdges; ++k) {
        if (used & (1u << k)) continue;
        cur.edge_of_face[static_cast<size_t>(face)] = k;
        used |= 1u << k;
        self(self, face + 1);
        used &= ~(1u << k);
      }
    }
  };
  rec(rec, 0);
  return out;
}

CoverLayout::CoverLayout(const TauMap& tau) {
  if (!tau.injective()) throw std::invalid_argument("CoverLayout: tau not injective");
  s_of_edge_.fill(-1);
  int rank = 0;
  for (int k : tau.selected_edges()) s_of_edge_[static_cast<size_t>(k)] = 54 + rank++;
}

std::size_t CoverLayout::s_var(int edge) const {
  const int v = s_of_edge_[static_cast<size_t>(edge)];
  if (v < 0) throw std::invalid_argument("CoverLayout: edge has no s variable");
  return static_cast<std::size_t>(v);
}

int CoverLayout::vertex_index(const Vec3& v) {
  int idx = 0;
  for (int i = 0; i < 3; ++i) {
    if (v[i] == 1)
      idx |= 1 << (2 - i);
    else if (!v[i].is_zero())
      throw std::invalid_argument("vertex_index: not a cube vertex");
  }
  return idx;
}

std::vector<std::string> CoverLayout::names() const {
  std::vector<std::string> n(kNumVars);
  static const char axis[3] = {'x', 'y', 'z'};
  for (int v = 0; v < 8; ++v)
    for (int a = 0; a < 3; ++a)
      n[vertex_var(v, a)] = "a" + std::to_string(v) + "." + axis[a];
  for (int f = 0; f < 6; ++f)
    for (int a = 0; a < 3; ++a)
      n[face_var(f, a)] = "b" + std::to_string(f) + "." + axis[a];
  for (int k = 0; k < 12; ++k) n[t_var(k)] = "t" + std::to_string(k);
  for (int k = 0; k < 12; ++k)
    if (selected(k)) n[s_var(k)] = "s" + std::to_string(k);
  return n;
}

namespace {

// Cube vertex coordinates of the lexicographic index.
Vec3 cube_vertex(int idx) {
  return {Rational((idx >> 2) & 1), Rational((idx >> 1) & 1), Rational(idx & 1)};
}

struct RowBuilder {
  lp::LinearSystem& s;
  std::size_t next_row = 0;

  // point(param) = base + param*dir must lie in translate+Q, i.e. for each
  // facet: -n.translate + (n.dir)*param <= offset - n.base.
  void containment(const geo::HPolytope& q, const Vec3& base, std::size_t translate_col,
                   const Vec3* dir = nullptr, std::size_t param_col = 0) {
    for (const geo::Halfspace& h : q.halfspaces) {
      for (int a = 0; a < 3; ++a) s.at(next_row, translate_col + static_cast<std::size_t>(a)) = -h.normal[a];
      if (dir) {
        const Rational nd = h.normal.dot(*dir);
        if (!nd.is_zero()) s.at(next_row, param_col) = nd;
      }
      s.rhs(next_row) = h.offset - h.normal.dot(base);
      ++next_row;
    }
  }

  void bound01(std::size_t col) {
    s.at(next_row, col) = -1;
    s.rhs(next_row) = 0;
    ++next_row;
    s.at(next_row, col) = 1;
    s.rhs(next_row) = 1;
    ++next_row;
  }
};

}  // namespace

lp::LinearSystem build_lp(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q) {
  const CoverLayout layout(tau);
  const std::size_t nq = static_cast<std::size_t>(q.facet_count());
  lp::LinearSystem s(68 * nq + 36, CoverLayout::kNumVars);
  s.names = layout.names();
  RowBuilder rb{s};

  // 8q: each cube vertex inside its own translate.
  for (int v = 0; v < 8; ++v)
    rb.containment(q, cube_vertex(v), CoverLayout::vertex_var(v, 0));

  // 24q: the four corners of each face rectangle inside the face translate.
  for (int f = 0; f < cfg::kNumFaces; ++f)
    for (const Vec3& corner : cfg::r_rect(box, cfg::face_of_index(f)))
      rb.containment(q, corner, CoverLayout::face_var(f, 0));

  // 12q: unselected edges are stitched by one intermediate point lying in
  // both endpoint translates.
  for (int k = 0; k < cfg::kNumEdges; ++k) {
    if (layout.selected(k)) continue;
    const auto e = cfg::edge_geometry(k);
    const int v0 = CoverLayout::vertex_index(e.base);
    const int v1 = CoverLayout::vertex_index(e.base + e.direction);
    rb.containment(q, e.base, CoverLayout::vertex_var(v0, 0), &e.direction, CoverLayout::t_var(k));
    rb.containment(q, e.base, CoverLayout::vertex_var(v1, 0), &e.direction, CoverLayout::t_var(k));
  }

  // 24q: selected edges use two intermediate points; both also lie in the
  // translate of the face that selected the edge.
  for (int k = 0; k < cfg::kNumEdges; ++k) {
    if (!layout.selected(k)) continue;
    int face = -1;
    for (int f = 0; f < cfg::kNumFaces; ++f)
      if (tau.edge_of_face[static_cast<size_t>(f)] == k) face = f;
    const auto e = cfg::edge_geometry(k);
    const int v0 = CoverLayout::vertex_index(e.base);
    const int v1 = CoverLayout::vertex_index(e.base + e.direction);
    rb.containment(q, e.base, CoverLayout::vertex_var(v0, 0), &e.direction, CoverLayout::t_var(k));
    rb.containment(q, e.base, CoverLayout::vertex_var(v1, 0), &e.direction, layout.s_var(k));
    rb.containment(q, e.base, CoverLayout::face_var(face, 0), &e.direction, CoverLayout::t_var(k));
    rb.containment(q, e.base, CoverLayout::face_var(face, 0), &e.direction, layout.s_var(k));
  }

  // 36 bound rows, appended after the covering rows.
  for (int k = 0; k < cfg::kNumEdges; ++k) rb.bound01(CoverLayout::t_var(k));
  for (int k = 0; k < cfg::kNumEdges; ++k)
    if (layout.selected(k)) rb.bound01(layout.s_var(k));

  if (rb.next_row != s.rows()) throw std::logic_error("build_lp: row count mismatch");
  return s;
}

BoxVerdict verify_box(const cfg::Box6& box, const TauMap& tau, const VerifyOptions& opts) {
  geo::HPolytope q;
  try {
    q = cfg::q_polytope(box);
  } catch (const DegenerateHull& e) {
    throw BoxGeometryError(std::string("degenerate corner hull: ") + e.what());
  } catch (const EmptyIntersection& e) {
    throw BoxGeometryError(std::string("empty corner intersection: ") + e.what());
  }
  return verify_box_with(box, tau, q, opts);
}

BoxVerdict verify_box_with(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q,
                           const VerifyOptions& opts) {
  const lp::LinearSystem s = build_lp(box, tau, q);
  BoxVerdict out;
  if (opts.prescreen && lp::feasible_float(s) == lp::FloatVerdict::Infeasible) {
    out.prescreen_rejected = true;
    return out;
  }
  auto rep = lp::feasible_exact(s);
  out.pivots = rep.pivots;
  out.feasible = rep.feasible;
  if (rep.feasible) out.witness = std::move(rep.witness);
  return out;
}

bool witness_covers(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q,
                    const lp::Witness& w) {
  if (w.size() != CoverLayout::kNumVars) return false;
  const CoverLayout layout(tau);
  auto translate_at = [&](std::size_t col) { return Vec3{w[col], w[col + 1], w[col + 2]}; };
  auto inside = [&](const Vec3& point, const Vec3& translate) {
    return geo::contains(q, point - translate);
  };

  for (int v = 0; v < 8; ++v)
    if (!inside(cube_vertex(v), translate_at(CoverLayout::vertex_var(v, 0)))) return false;

  for (int f = 0; f < cfg::kNumFaces; ++f)
    for (const Vec3& corner : cfg::r_rect(box, cfg::face_of_index(f)))
      if (!inside(corner, translate_at(CoverLayout::face_var(f, 0)))) return false;

  for (int k = 0; k < cfg::kNumEdges; ++k) {
    const auto e = cfg::edge_geometry(k);
    const int v0 = CoverLayout::vertex_index(e.base);
    const int v1 = CoverLayout::vertex_index(e.base + e.direction);
    const Rational& tk = w[CoverLayout::t_var(k)];
    if (tk.sign() < 0 || tk > 1) return false;
    const Vec3 tp = e.base + tk * e.direction;
    if (!layout.selected(k)) {
      if (!inside(tp, translate_at(CoverLayout::vertex_var(v0, 0)))) return false;
      if (!inside(tp, translate_at(CoverLayout::vertex_var(v1, 0)))) return false;
    } else {
      int face = -1;
      for (int f = 0; f < cfg::kNumFaces; ++f)
        if (tau.edge_of_face[static_cast<size_t>(f)] == k) face = f;
      const Rational& sk = w[layout.s_var(k)];
      if (sk.sign() < 0 || sk > 1) return false;
      const Vec3 sp = e.base + sk * e.direction;
      if (!inside(tp, translate_at(CoverLayout::vertex_var(v0, 0)))) return false;
      if (!inside(sp, translate_at(CoverLayout::vertex_var(v1, 0)))) return false;
      if (!inside(tp, translate_at(CoverLayout::face_var(face, 0)))) return false;
      if (!inside(sp, translate_at(CoverLayout::face_var(face, 0)))) return false;
    }
  }
  return true;
}

std::array<Vec3, 14> fourteen_point_set() {
  std::array<Vec3, 14> out;
  for (int v = 0; v < 8; ++v) out[static_cast<size_t>(v)] = cube_vertex(v);
  const Rational half(1, 2);
  cfg::ConfigPoint center;
  for (int i = 0; i < 6; ++i) center[i] = half;
  const auto fc = cfg::v_points(center);
  for (int f = 0; f < 6; ++f) out[static_cast<size_t>(8 + f)] = fc[static_cast<size_t>(f)];
  return out;
}

namespace {

// max margin over translates a: both x and y inside a + body, inset by
// margin*|n|_1 per facet. margin > 0 iff an interior translate covers both.
Rational pair_margin(const geo::HPolytope& body, const Vec3& x, const Vec3& y) {
  lp::LinearSystem s(2 * body.halfspaces.size(), 4);
  std::size_t r = 0;
  for (const Vec3* pt : {&x, &y}) {
    for (const geo::Halfspace& h : body.halfspaces) {
      for (int a = 0; a < 3; ++a) s.at(r, static_cast<size_t>(a)) = -h.normal[a];
      s.at(r, 3) = h.normal.l1_norm();
      s.rhs(r) = h.offset - h.normal.dot(*pt);
      ++r;
    }
  }
  std::vector<Rational> obj(4);
  obj[3] = 1;
  auto m = lp::maximize(s, obj);
  if (m.status != lp::MaximizeResult::Status::Optimal)
    throw std::logic_error("pair_margin: margin program must have an optimum");
  return m.value;
}

}  // namespace

LowerBoundReport lower_bound_check() {
  const Rational half(1, 2);
  cfg::ConfigPoint center;
  for (int i = 0; i < 6; ++i) center[i] = half;
  const geo::HPolytope body = cfg::o_polytope(center);
  const auto pts = fourteen_point_set();

  LowerBoundReport rep;
  rep.ok = true;
  for (int i = 0; i < 14; ++i) {
    for (int j = i + 1; j < 14; ++j) {
      const Rational margin = pair_margin(body, pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
      rep.pairs.push_back({i, j, margin.sign() >= 0, margin});
      if (margin.sign() > 0) rep.ok = false;
    }
  }
  return rep;
}

bool inclusion_check(const cfg::Box6& box, const cfg::ConfigPoint& p) {
  return inclusion_check_with(cfg::q_polytope(box), p);
}

bool inclusion_check_with(const geo::HPolytope& q, const cfg::ConfigPoint& p) {
  const geo::HPolytope o = cfg::o_polytope(p);
  for (const geo::Halfspace& h : o.halfspaces)
    if (geo::support(q, h.normal) > h.offset) return false;
  return true;
}

StrictTranslate strict_translate(const cfg::Box6& box, const cfg::ConfigPoint& p) {
  return strict_translate_with(cfg::q_polytope(box), p);
}

StrictTranslate strict_translate_with(const geo::HPolytope& q, const cfg::ConfigPoint& p) {
  const geo::HPolytope o = cfg::o_polytope(p);
  lp::LinearSystem s(o.halfspaces.size(), 4);
  for (std::size_t r = 0; r < o.halfspaces.size(); ++r) {
    const geo::Halfspace& h = o.halfspaces[r];
    for (int a = 0; a < 3; ++a) s.at(r, static_cast<size_t>(a)) = h.normal[a];
    s.at(r, 3) = h.normal.l1_norm();
    s.rhs(r) = h.offset - geo::support(q, h.normal);
  }
  std::vector<Rational> obj(4);
  obj[3] = 1;
  auto m = lp::maximize(s, obj);
  if (m.status != lp::MaximizeResult::Status::Optimal)
    throw std::logic_error("strict_translate: margin program must have an optimum");
  if (m.value.sign() <= 0)
    throw NoStrictTranslate("no translate of Q_P fits in the interior of O_p (margin " +
                            m.value.str() + ")");
  return {{m.point[0], m.point[1], m.point[2]}, m.value};
}

bool segment_fact_check(const cfg::ConfigPoint& q, const cfg::ConfigPoint& r,
                        const cfg::ConfigPoint& p, int trials, std::uint64_t seed) {
  int diff = -1;
  for (int i = 0; i < 6; ++i) {
    if (q[i] == r[i]) {
      if (!(p[i] == q[i])) throw std::invalid_argument("segment_fact_check: p off the segment");
    } else {
      if (diff >= 0) throw std::invalid_argument("segment_fact_check: q,r differ in more than one coordinate");
      diff = i;
    }
  }
  if (diff >= 0) {
    const Rational lo = std::min(q[diff], r[diff]), hi = std::max(q[diff], r[diff]);
    if (p[diff] < lo || p[diff] > hi) throw std::invalid_argument("segment_fact_check: p off the segment");
  }

  const geo::HPolytope oq = cfg::o_polytope(q);
  const geo::HPolytope orr = cfg::o_polytope(r);
  const geo::HPolytope op = cfg::o_polytope(p);
  const std::array<geo::HPolytope, 2> parts{oq, orr};
  const geo::HPolytope inter = geo::intersect(parts);

  std::vector<Vec3> samples;
  try {
    samples = geo::vertices(inter).vertices;
  } catch (const DegeneratePolytope&) {
    // Flat intersection: fall back to the shared configured points.
    const auto vq = cfg::v_points(q);
    const auto vr = cfg::v_points(r);
    for (int i = 0; i < 6; ++i)
      if (vq[static_cast<size_t>(i)] == vr[static_cast<size_t>(i)]) samples.push_back(vq[static_cast<size_t>(i)]);
  }
  if (static_cast<int>(samples.size()) > trials) {
    util::Rng rng(seed);
    std::vector<Vec3> keep;
    for (int t = 0; t < trials; ++t)
      keep.push_back(samples[rng.below(samples.size())]);
    samples = std::move(keep);
  }
  for (const Vec3& v : samples)
    if (!geo::contains(op, v)) return false;
  return true;
}

}  // namespace cover14::cover
