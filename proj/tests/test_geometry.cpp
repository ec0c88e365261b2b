#include <doctest.h>

#include <algorithm>

#include "cover14/geometry.hpp"
#include "cover14/oracles.hpp"
#include "cover14/util.hpp"

using namespace cover14;
using geo::Halfspace;
using geo::HPolytope;

namespace {

Vec3 v(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

HPolytope unit_cube() {
  HPolytope p;
  for (int axis = 0; axis < 3; ++axis) {
    Halfspace lo, hi;
    lo.normal[axis] = -1;
    lo.offset = 0;
    hi.normal[axis] = 1;
    hi.offset = 1;
    p.halfspaces.push_back(lo);
    p.halfspaces.push_back(hi);
  }
  return p;
}

std::vector<Vec3> octahedron_points() {
  const Rational h(1, 2);
  return {{Rational(0), h, h}, {Rational(1), h, h}, {h, Rational(0), h},
          {h, Rational(1), h}, {h, h, Rational(0)}, {h, h, Rational(1)}};
}

}  // namespace

TEST_CASE("hull3 of the standard simplex has 4 facets") {
  const std::vector<Vec3> pts{v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)};
  const HPolytope h = geo::hull3(pts);
  CHECK(h.facet_count() == 4);
  for (const Vec3& p : pts) CHECK(geo::contains(h, p));
}

TEST_CASE("hull3 of the six face centers is the regular octahedron") {
  const HPolytope h = geo::hull3(octahedron_points());
  CHECK(h.facet_count() == 8);
  const Rational half(1, 2);
  CHECK(geo::contains(h, {half, half, half}));
  CHECK_FALSE(geo::contains(h, v(0, 0, 0)));
  CHECK(geo::contains(h, {Rational(0), half, half}));  // closed: vertex included
}

TEST_CASE("hull3 tolerates duplicate and interior points") {
  std::vector<Vec3> pts{v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(0, 0, 0)};
  pts.push_back({Rational(1, 10), Rational(1, 10), Rational(1, 10)});
  CHECK(geo::hull3(pts).facet_count() == 4);
}

TEST_CASE("hull3 reports degenerate input") {
  CHECK_THROWS_AS(geo::hull3(std::vector<Vec3>{v(0, 0, 0), v(1, 0, 0), v(2, 0, 0), v(3, 0, 0)}),
                  DegenerateHull);
  CHECK_THROWS_AS(geo::hull3(std::vector<Vec3>{v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(1, 1, 0)}),
                  DegenerateHull);
}

TEST_CASE("hull3 matches the brute-force facet oracle on cube corners plus extras") {
  std::vector<Vec3> pts{v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 0),
                        v(1, 0, 1), v(0, 1, 1), v(1, 1, 1), v(1, 1, 2)};
  const HPolytope h = geo::hull3(pts);
  const auto oracle = oracles::brute_force_facets(pts);
  REQUIRE(h.halfspaces.size() == oracle.size());
  CHECK(std::equal(h.halfspaces.begin(), h.halfspaces.end(), oracle.begin()));
}

TEST_CASE("hull3 matches the oracle on random rational point sets") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    util::Rng rng(seed);
    std::vector<Vec3> pts;
    const int n = 4 + static_cast<int>(rng.below(7));
    for (int i = 0; i < n; ++i)
      pts.push_back({rng.unit_rational(8), rng.unit_rational(8), rng.unit_rational(8)});
    HPolytope h;
    try {
      h = geo::hull3(pts);
    } catch (const DegenerateHull&) {
      continue;
    }
    const auto oracle = oracles::brute_force_facets(pts);
    REQUIRE_MESSAGE(h.halfspaces.size() == oracle.size(), "seed ", seed);
    CHECK(std::equal(h.halfspaces.begin(), h.halfspaces.end(), oracle.begin()));
  }
}

TEST_CASE("contains is exact on the octahedron") {
  const HPolytope h = geo::hull3(octahedron_points());
  const Rational half(1, 2);
  CHECK(geo::contains(h, {half, half, half}));
  CHECK_FALSE(geo::contains(h, {Rational(0), Rational(0), half}));
}

TEST_CASE("intersect of one polytope is itself") {
  const HPolytope cube = unit_cube();
  const std::vector<HPolytope> parts{cube};
  const HPolytope r = geo::intersect(parts);
  CHECK(r.facet_count() == 6);
}

TEST_CASE("intersect of offset cubes is the overlap box") {
  HPolytope a = unit_cube(), b = unit_cube();
  // shift b by (1/2, 0, 0): 1/2 <= x <= 3/2
  b.halfspaces[0].offset = Rational(-1, 2);  // -x <= -1/2
  b.halfspaces[1].offset = Rational(3, 2);
  const std::vector<HPolytope> parts{a, b};
  const HPolytope r = geo::intersect(parts);
  CHECK(r.facet_count() == 6);
  CHECK(geo::support(r, v(1, 0, 0)) == 1);
  CHECK(geo::support(r, v(-1, 0, 0)) == Rational(-1, 2));
}

TEST_CASE("intersect of 64 copies is idempotent") {
  const HPolytope oct = geo::hull3(octahedron_points());
  std::vector<HPolytope> parts(64, oct);
  const HPolytope r = geo::intersect(parts);
  CHECK(r.facet_count() == 8);
}

TEST_CASE("intersect reports empty input sets") {
  HPolytope a = unit_cube(), b = unit_cube();
  b.halfspaces[0].offset = -2;  // -x <= -2, x >= 2
  const std::vector<HPolytope> parts{a, b};
  CHECK_THROWS_AS(geo::intersect(parts), EmptyIntersection);
}

TEST_CASE("remove_redundant drops a slack constraint and keeps minimal systems") {
  HPolytope p = unit_cube();
  Halfspace extra;
  extra.normal[0] = 1;
  extra.offset = 2;
  p.halfspaces.push_back(extra);
  CHECK(geo::remove_redundant(p).facet_count() == 6);
  CHECK(geo::remove_redundant(unit_cube()).facet_count() == 6);
}

TEST_CASE("remove_redundant keeps membership verdicts on probe points") {
  util::Rng rng(7);
  HPolytope p = geo::hull3(octahedron_points());
  HPolytope fat = p;
  // scaled duplicate facets and slack planes
  for (const Halfspace& h : p.halfspaces) {
    Halfspace s{Rational(3) * h.normal, Rational(3) * h.offset + 1};
    fat.halfspaces.push_back(s);
  }
  const HPolytope lean = geo::remove_redundant(fat);
  CHECK(lean.facet_count() == 8);
  for (int t = 0; t < 200; ++t) {
    const Vec3 x{rng.unit_rational(16), rng.unit_rational(16), rng.unit_rational(16)};
    CHECK(geo::contains(lean, x) == geo::contains(fat, x));
  }
}

TEST_CASE("vertices of the unit cube and the octahedron") {
  const auto cube_v = geo::vertices(unit_cube()).vertices;
  CHECK(cube_v.size() == 8);
  const HPolytope oct = geo::hull3(octahedron_points());
  const auto oct_v = geo::vertices(oct).vertices;
  REQUIRE(oct_v.size() == 6);
  auto expect = octahedron_points();
  std::sort(expect.begin(), expect.end());
  CHECK(std::equal(oct_v.begin(), oct_v.end(), expect.begin()));
}

TEST_CASE("vertices matches the facet-triple oracle") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    util::Rng rng(seed);
    std::vector<Vec3> pts;
    for (int i = 0; i < 7; ++i)
      pts.push_back({rng.unit_rational(6), rng.unit_rational(6), rng.unit_rational(6)});
    HPolytope h;
    try {
      h = geo::hull3(pts);
    } catch (const DegenerateHull&) {
      continue;
    }
    const auto got = geo::vertices(h).vertices;
    const auto expect = oracles::vertices_by_triples(h);
    REQUIRE_MESSAGE(got.size() == expect.size(), "seed ", seed);
    CHECK(std::equal(got.begin(), got.end(), expect.begin()));
  }
}

TEST_CASE("vertices error reporting") {
  HPolytope slab;  // 0 <= x <= 1 only: unbounded
  Halfspace lo, hi;
  lo.normal[0] = -1;
  lo.offset = 0;
  hi.normal[0] = 1;
  hi.offset = 1;
  slab.halfspaces = {lo, hi};
  CHECK_THROWS_AS(geo::vertices(slab), UnboundedPolytope);

  HPolytope flat = unit_cube();
  flat.halfspaces[1].offset = 0;  // x <= 0 and -x <= 0
  CHECK_THROWS_AS(geo::vertices(flat), DegeneratePolytope);
}

TEST_CASE("support values on cube and octahedron") {
  CHECK(geo::support(unit_cube(), v(1, 1, 1)) == 3);
  const HPolytope oct = geo::hull3(octahedron_points());
  CHECK(geo::support(oct, v(1, 0, 0)) == 1);
  CHECK(geo::support(oct, v(1, 1, 1)) == 2);
}

TEST_CASE("scaling inputs scales offsets and keeps membership") {
  util::Rng rng(11);
  std::vector<Vec3> pts;
  for (int i = 0; i < 6; ++i)
    pts.push_back({rng.unit_rational(8), rng.unit_rational(8), rng.unit_rational(8)});
  HPolytope h;
  try {
    h = geo::hull3(pts);
  } catch (const DegenerateHull&) {
    return;
  }
  const Rational s(7, 3);
  std::vector<Vec3> scaled;
  for (const Vec3& p : pts) scaled.push_back(s * p);
  const HPolytope hs = geo::hull3(scaled);
  REQUIRE(hs.facet_count() == h.facet_count());
  for (std::size_t i = 0; i < h.halfspaces.size(); ++i) {
    CHECK(hs.halfspaces[i].normal == h.halfspaces[i].normal);  // canonical normals unchanged
    CHECK(hs.halfspaces[i].offset == s * h.halfspaces[i].offset);
  }
  for (int t = 0; t < 100; ++t) {
    const Vec3 x{rng.unit_rational(12), rng.unit_rational(12), rng.unit_rational(12)};
    CHECK(geo::contains(h, x) == geo::contains(hs, s * x));
  }
}

TEST_CASE("hull and vertex round-trip equals the extreme-point filter") {
  for (std::uint64_t seed = 300; seed < 315; ++seed) {
    util::Rng rng(seed);
    std::vector<Vec3> pts;
    const int n = 4 + static_cast<int>(rng.below(7));
    for (int i = 0; i < n; ++i)
      pts.push_back({rng.unit_rational(5), rng.unit_rational(5), rng.unit_rational(5)});
    HPolytope h;
    try {
      h = geo::hull3(pts);
    } catch (const DegenerateHull&) {
      continue;
    }
    const auto got = geo::vertices(h).vertices;
    const auto expect = oracles::extreme_points(pts);
    REQUIRE_MESSAGE(got.size() == expect.size(), "seed ", seed);
    CHECK(std::equal(got.begin(), got.end(), expect.begin()));
  }
}
