#include <doctest.h>

#include <set>
#include <sstream>

#include "cover14/config_space.hpp"
#include "cover14/oracles.hpp"
#include "cover14/util.hpp"

using namespace cover14;
using cfg::Box6;
using cfg::ConfigPoint;

namespace {

ConfigPoint cp(std::initializer_list<Rational> vals) {
  ConfigPoint p;
  int i = 0;
  for (const Rational& v : vals) p[i++] = v;
  return p;
}

ConfigPoint center_point() {
  ConfigPoint p;
  for (int i = 0; i < 6; ++i) p[i] = Rational(1, 2);
  return p;
}

ConfigPoint random_config(util::Rng& rng, long den) {
  ConfigPoint p;
  for (int i = 0; i < 6; ++i) p[i] = rng.unit_rational(den);
  return p;
}

Box6 degenerate_box(const ConfigPoint& p) {  // lo = hi, test-only construction
  Box6 b;
  for (int i = 0; i < 6; ++i) b.lo[static_cast<size_t>(i)] = b.hi[static_cast<size_t>(i)] = p[i];
  return b;
}

}  // namespace

TEST_CASE("v_points at the center are the face centers") {
  const auto pts = cfg::v_points(center_point());
  const Rational h(1, 2);
  CHECK(pts[0] == Vec3{0, h, h});
  CHECK(pts[1] == Vec3{1, h, h});
  CHECK(pts[2] == Vec3{h, 0, h});
  CHECK(pts[3] == Vec3{h, 1, h});
  CHECK(pts[4] == Vec3{h, h, 0});
  CHECK(pts[5] == Vec3{h, h, 1});
}

TEST_CASE("v_points at zero") {
  const auto pts = cfg::v_points(cp({0, 0, 0, 0, 0, 0}));
  CHECK(pts[0] == Vec3{0, 0, 0});
  CHECK(pts[1] == Vec3{1, 0, 0});
  CHECK(pts[2] == Vec3{0, 0, 0});
  CHECK(pts[3] == Vec3{0, 1, 0});
  CHECK(pts[4] == Vec3{0, 0, 0});
  CHECK(pts[5] == Vec3{0, 0, 1});
}

TEST_CASE("opposite face points differ by exactly the axis unit vector") {
  util::Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto pts = cfg::v_points(random_config(rng, 32));
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e;
      e[axis] = 1;
      CHECK(pts[static_cast<size_t>(2 * axis + 1)] - pts[static_cast<size_t>(2 * axis)] == e);
    }
    for (int f = 0; f < 6; ++f) {
      const auto face = cfg::face_of_index(f);
      CHECK(pts[static_cast<size_t>(f)][face.axis] == face.side);  // point lies on its face
    }
  }
}

TEST_CASE("o_polytope shapes: octahedron at the center, simplex at zero") {
  CHECK(cfg::o_polytope(center_point()).facet_count() == 8);
  CHECK(cfg::o_polytope(cp({0, 0, 0, 0, 0, 0})).facet_count() == 4);
}

TEST_CASE("o_polytope equals the brute-force facet oracle on random configurations") {
  util::Rng rng(4);
  for (int t = 0; t < 25; ++t) {
    const auto p = random_config(rng, 16);
    geo::HPolytope h;
    try {
      h = cfg::o_polytope(p);
    } catch (const DegenerateHull&) {
      continue;
    }
    const auto pts = cfg::v_points(p);
    const auto oracle = oracles::brute_force_facets(pts);
    REQUIRE(h.halfspaces.size() == oracle.size());
    CHECK(std::equal(h.halfspaces.begin(), h.halfspaces.end(), oracle.begin()));
    CHECK(h.facet_count() <= 8);
  }
}

TEST_CASE("cube symmetry group has 48 distinct elements") {
  const auto& g = cfg::cube_symmetries();
  CHECK(g.size() == 48);
  std::set<std::array<std::string, 3>> images;
  for (const auto& s : g) {
    util::Rng rng(1);
    const Vec3 probe{Rational(1, 3), Rational(1, 5), Rational(1, 7)};
    const Vec3 img = s.apply(probe);
    images.insert({img[0].str(), img[1].str(), img[2].str()});
  }
  CHECK(images.size() == 48);
  CHECK(g[0].is_identity());
}

TEST_CASE("apply_symmetry: identity and the axis-1 flip formula") {
  util::Rng rng(8);
  const auto p = random_config(rng, 20);
  CHECK(cfg::apply_symmetry(cfg::CubeSymmetry{}, p) == p);

  cfg::CubeSymmetry flip1;
  flip1.flips[0] = true;
  const auto q = cfg::apply_symmetry(flip1, p);
  CHECK(q == cp({p[0], p[1], Rational(1) - p[2], p[3], Rational(1) - p[4], p[5]}));
}

TEST_CASE("apply_symmetry preserves the configured point set and facet counts") {
  util::Rng rng(9);
  const auto& g = cfg::cube_symmetries();
  for (int t = 0; t < 30; ++t) {
    const auto p = random_config(rng, 16);
    const auto& s = g[rng.below(g.size())];
    const auto q = cfg::apply_symmetry(s, p);
    std::multiset<Vec3> img, expect;
    for (const Vec3& v : cfg::v_points(q)) img.insert(v);
    for (const Vec3& v : cfg::v_points(p)) expect.insert(s.apply(v));
    CHECK(img == expect);
    try {
      CHECK(cfg::o_polytope(q).facet_count() == cfg::o_polytope(p).facet_count());
    } catch (const DegenerateHull&) {
    }
  }
}

TEST_CASE("reduce_to_D fixes points already in D and lands in D otherwise") {
  ConfigPoint ind = cp({Rational(1, 4), Rational(1, 8), Rational(3, 8),
                        Rational(1, 2), Rational(3, 4), Rational(5, 8)});
  REQUIRE(cfg::in_D(ind));
  const auto [same, sym] = cfg::reduce_to_D(ind);
  CHECK(same == ind);

  const auto [img, s2] = cfg::reduce_to_D(cp({Rational(7, 10), Rational(2, 10), Rational(3, 10),
                                              Rational(1, 10), Rational(4, 10), Rational(9, 10)}));
  CHECK(cfg::in_D(img));

  util::Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const auto [q, s] = cfg::reduce_to_D(random_config(rng, 64));
    CHECK(cfg::in_D(q));
    CHECK(cfg::in_D(cfg::reduce_to_D(q).first));  // idempotent at the verdict level
  }
}

TEST_CASE("box enumeration counts match the brute-force filter") {
  CHECK(cfg::count_boxes(1) == 8);
  CHECK(cfg::count_boxes(1) == oracles::brute_force_box_count(1));
  CHECK(cfg::count_boxes(2) == oracles::brute_force_box_count(2));
  CHECK(cfg::count_boxes(3) == oracles::brute_force_box_count(3));

  cfg::BoxStream stream(2);
  std::uint64_t n = 0;
  std::optional<Box6> prev;
  while (auto b = stream.next()) {
    ++n;
    if (prev) CHECK(*prev < *b);  // lexicographic order
    for (int i = 0; i < 6; ++i) CHECK(b->width(i) == Rational(1, 4));
    prev = b;
  }
  CHECK(n == cfg::count_boxes(2));
}

TEST_CASE("every enumerated box satisfies the grid inequalities and nothing else sneaks in") {
  cfg::BoxStream stream(1);
  std::vector<Box6> got;
  while (auto b = stream.next()) got.push_back(*b);
  REQUIRE(got.size() == 8);
  // M=1: k1..k3 = 0, all (k4,k5,k6) in {0,1}^3 pass
  for (const Box6& b : got)
    for (int i = 0; i < 3; ++i) CHECK(b.lo[static_cast<size_t>(i)] == 0);
}

TEST_CASE("boxes_at fetches by sequence number") {
  const auto boxes = cfg::boxes_at(2, {0, 5, 100});
  REQUIRE(boxes.size() == 3);
  cfg::BoxStream stream(2);
  std::vector<Box6> all;
  while (auto b = stream.next()) all.push_back(*b);
  CHECK(boxes[0] == all[0]);
  CHECK(boxes[1] == all[5]);
  CHECK(boxes[2] == all[100]);
}

TEST_CASE("regions partition the reduced domain") {
  const auto rs = cfg::regions();
  REQUIRE(rs.size() == 512);
  Rational vol;
  for (const Box6& r : rs) vol += r.volume();
  CHECK(vol == Rational(1, 8));  // (1/2)^3 * 1^3
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(*rs[i].region_id == static_cast<int>(i));
}

TEST_CASE("region_of locates grid boxes, first box goes to region 0") {
  const auto first = cfg::boxes_at(10, {0}).front();
  CHECK(cfg::region_of(first) == 0);
  CHECK(*first.region_id == 0);

  // containment of each box in its region when 4 | 2M
  cfg::BoxStream stream(2);
  const auto rs = cfg::regions();
  while (auto b = stream.next()) {
    const Box6& r = rs[static_cast<size_t>(*b->region_id)];
    for (int i = 0; i < 6; ++i) {
      CHECK(b->lo[static_cast<size_t>(i)] >= r.lo[static_cast<size_t>(i)]);
      CHECK(b->hi[static_cast<size_t>(i)] <= r.hi[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("q_polytope of a degenerate test box is the corner polytope itself") {
  const auto q = cfg::q_polytope(degenerate_box(center_point()));
  CHECK(q.facet_count() == 8);
  const auto direct = cfg::o_polytope(center_point());
  CHECK(std::equal(q.halfspaces.begin(), q.halfspaces.end(), direct.halfspaces.begin()));
}

TEST_CASE("q_polytope avoids the cube boundary and sits inside every corner polytope") {
  Box6 box;
  for (int i = 0; i < 6; ++i) {
    box.lo[static_cast<size_t>(i)] = Rational(i < 3 ? 4 : 7, 20);
    box.hi[static_cast<size_t>(i)] = Rational(i < 3 ? 5 : 8, 20);
  }
  const auto q = cfg::q_polytope(box);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 dir;
    dir[axis] = 1;
    CHECK(geo::support(q, dir) < 1);
    dir[axis] = -1;
    CHECK(geo::support(q, dir) < 0);  // i.e. min coordinate > 0
  }
  const auto verts = geo::vertices(q).vertices;
  for (unsigned mask = 0; mask < 64; ++mask) {
    const auto corner_poly = cfg::o_polytope(box.corner(mask));
    for (const Vec3& v : verts) CHECK(geo::contains(corner_poly, v));
  }
}

TEST_CASE("r_rect corners") {
  Box6 small;
  for (int i = 0; i < 6; ++i) {
    small.lo[static_cast<size_t>(i)] = 0;
    small.hi[static_cast<size_t>(i)] = Rational(1, 20);
  }
  const auto c = cfg::r_rect(small, {0, 0});
  const Rational w(1, 20);
  CHECK(c[0] == Vec3{0, 0, 0});
  CHECK(c[1] == Vec3{0, w, 0});
  CHECK(c[2] == Vec3{0, 0, w});
  CHECK(c[3] == Vec3{0, w, w});

  const auto p = center_point();
  const auto deg = cfg::r_rect(degenerate_box(p), {1, 1});
  for (const Vec3& x : deg) CHECK(x == cfg::v_points(p)[3]);

  util::Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    Box6 b;
    for (int i = 0; i < 6; ++i) {
      b.lo[static_cast<size_t>(i)] = rng.unit_rational(10) * Rational(1, 2);
      b.hi[static_cast<size_t>(i)] = b.lo[static_cast<size_t>(i)] + Rational(1, 20);
    }
    for (int f = 0; f < 6; ++f) {
      const auto face = cfg::face_of_index(f);
      for (const Vec3& x : cfg::r_rect(b, face)) CHECK(x[face.axis] == face.side);
    }
  }
}

TEST_CASE("box serialization round-trips and rejects malformed fields") {
  const auto box = cfg::boxes_at(10, {123}).front();
  const std::string fields = cfg::box_to_fields(box);
  std::istringstream is(fields);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  const auto back = cfg::box_from_fields(toks);
  REQUIRE(back);
  CHECK(*back == box);
  CHECK(cfg::box_to_fields(*back) == fields);

  auto bad = toks;
  bad[3] = "1/0";
  CHECK_FALSE(cfg::box_from_fields(bad));
  bad = toks;
  bad[0] = "2/4";
  CHECK_FALSE(cfg::box_from_fields(bad));
  bad = toks;
  std::swap(bad[0], bad[6]);  // lo > hi
  CHECK_FALSE(cfg::box_from_fields(bad));
}

TEST_CASE("every random reduced point lies in a grid box for small M") {
  util::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto [p, s] = cfg::reduce_to_D(random_config(rng, 80));
    for (const int M : {1, 2}) {
      bool found = false;
      cfg::BoxStream stream(M);
      while (auto b = stream.next()) {
        if (b->contains(p)) {
          found = true;
          break;
        }
      }
      CHECK_MESSAGE(found, "M=", M, " trial ", t);
    }
  }
}
