#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cover14/geometry.hpp"
#include "cover14/rational.hpp"
#include "cover14/vec.hpp"

namespace cover14::cfg {

// One point per cube face: p parameterizes the six points so that opposite
// faces carry points differing by exactly one unit vector.
struct ConfigPoint {
  std::array<Rational, 6> p{};

  Rational& operator[](int i) { return p[static_cast<size_t>(i)]; }
  const Rational& operator[](int i) const { return p[static_cast<size_t>(i)]; }
  friend bool operator==(const ConfigPoint&, const ConfigPoint&) = default;
  friend std::strong_ordering operator<=>(const ConfigPoint& a, const ConfigPoint& b) {
    for (int i = 0; i < 6; ++i)
      if (auto o = a[i] <=> b[i]; o != 0) return o;
    return std::strong_ordering::equal;
  }
};

// Axis-aligned box in the configuration space [0,1]^6.
struct Box6 {
  std::array<Rational, 6> lo{}, hi{};
  std::optional<int> region_id;

  ConfigPoint corner(unsigned mask) const;  // bit i set selects hi in coordinate i (i=0 most significant)
  ConfigPoint center() const;
  Rational width(int i) const { return hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)]; }
  Rational volume() const;
  bool contains(const ConfigPoint& q) const;
  friend bool operator==(const Box6& a, const Box6& b) { return a.lo == b.lo && a.hi == b.hi; }
  friend std::strong_ordering operator<=>(const Box6& a, const Box6& b) {
    for (int i = 0; i < 6; ++i)
      if (auto o = a.lo[static_cast<size_t>(i)] <=> b.lo[static_cast<size_t>(i)]; o != 0) return o;
    for (int i = 0; i < 6; ++i)
      if (auto o = a.hi[static_cast<size_t>(i)] <=> b.hi[static_cast<size_t>(i)]; o != 0) return o;
    return std::strong_ordering::equal;
  }
};

// Element of the order-48 symmetry group of the cube: flips x_i -> 1-x_i
// applied first, then the axis permutation.
struct CubeSymmetry {
  std::array<int, 3> axis_permutation{0, 1, 2};
  std::array<bool, 3> flips{false, false, false};

  Vec3 apply(const Vec3& x) const;
  bool is_identity() const { return axis_permutation == std::array<int, 3>{0, 1, 2} && flips == std::array<bool, 3>{false, false, false}; }
};

// All 48 symmetries in a fixed order (permutations lexicographic, then flip
// masks in binary order).
const std::vector<CubeSymmetry>& cube_symmetries();

// Face (axis, side): {x in [0,1]^3 : x_axis = side}, indexed 0..5 in the
// order (1,0),(1,1),(2,0),(2,1),(3,0),(3,1) with 0-based axes here.
struct FaceId {
  int axis;  // 0..2
  int side;  // 0..1
  friend bool operator==(const FaceId&, const FaceId&) = default;
};
inline constexpr int kNumFaces = 6;
inline FaceId face_of_index(int f) { return {f / 2, f % 2}; }
inline int face_index(FaceId f) { return 2 * f.axis + f.side; }

// Edge k of the cube, k = 4*axis + 2*b1 + b2: parallel to `axis`, with the
// two fixed coordinates (in increasing axis order) equal to b1, b2.
inline constexpr int kNumEdges = 12;
struct EdgeGeometry {
  Vec3 base;       // vertex with the parallel coordinate 0
  Vec3 direction;  // unit vector of the parallel axis
};
EdgeGeometry edge_geometry(int k);
std::array<FaceId, 2> edge_faces(int k);          // the two faces containing edge k
std::array<int, 4> face_edges(FaceId f);          // the four edges inside face f, increasing
bool edge_in_face(int k, FaceId f);

// The six configured points in face order; opposite-face points differ by
// exactly the face axis unit vector.
std::array<Vec3, 6> v_points(const ConfigPoint& p);

// Convex hull of the six configured points (at most 8 facets).
geo::HPolytope o_polytope(const ConfigPoint& p);

// p' with V_{p'} = s(V_p) as a point set.
ConfigPoint apply_symmetry(const CubeSymmetry& s, const ConfigPoint& p);

// Fundamental domain D = {p in [0,1/2]^3 x [0,1]^3 : p2+p4 <= p1+p6 <= p3+p5}.
bool in_D(const ConfigPoint& p);

// Symmetry image of p inside D; among the group images landing in D the
// lexicographically smallest is chosen.
std::pair<ConfigPoint, CubeSymmetry> reduce_to_D(const ConfigPoint& p);

// Grid boxes of side 1/(2M) covering D, selected by the integer inequalities
// k2+k4 <= k1+k6+1 <= k3+k5+2, streamed in lexicographic k-order. next_k()
// walks the integer grid without materializing rationals.
class BoxStream {
 public:
  explicit BoxStream(int M);
  std::optional<std::array<long, 6>> next_k();
  std::optional<Box6> next();
  std::uint64_t index() const { return index_; }  // boxes yielded so far

  static Box6 materialize(int M, const std::array<long, 6>& k);

 private:
  bool advance();
  bool admissible() const;
  int m_;
  std::array<long, 6> k_{};
  bool done_ = false, fresh_ = true;
  std::uint64_t index_ = 0;
};

int region_of_k(const std::array<long, 6>& k, int M);

std::uint64_t count_boxes(int M);  // cached per M
// Boxes at the given ascending sequence numbers, in one streaming pass.
std::vector<Box6> boxes_at(int M, const std::vector<std::uint64_t>& sorted_indices);

// The 512 quarter-side regions partitioning [0,1/2]^3 x [0,1]^3.
std::vector<Box6> regions();
int region_of(const Box6& box);
inline constexpr int kNumRegions = 512;

// Q_P: intersection of the 64 corner polytopes O_v, redundancy removed.
// Throws DegenerateHull / EmptyIntersection, both of which abort the box.
geo::HPolytope q_polytope(const Box6& box);

// The four corners of R_P on face f: the face rectangle swept by the
// configured point as p ranges over the box.
std::array<Vec3, 4> r_rect(const Box6& box, FaceId f);

// Box line serialization: 12 fields "num/den" (lo1..lo6 hi1..hi6), lowest terms.
std::string box_to_fields(const Box6& box);
std::optional<Box6> box_from_fields(const std::vector<std::string>& fields);

}  // namespace cover14::cfg
