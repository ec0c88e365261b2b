#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cover14/config_space.hpp"
#include "cover14/geometry.hpp"
#include "cover14/simplex.hpp"

namespace cover14::cover {

// Injective assignment face -> edge: which edge's middle portion the face
// translate also covers. Restricted maps pick one of the four edges lying in
// the face.
struct TauMap {
  std::array<int, 6> edge_of_face{};  // indexed by face index

  bool injective() const;
  bool restricted() const;  // every assigned edge lies in its face
  friend bool operator==(const TauMap&, const TauMap&) = default;
  friend std::strong_ordering operator<=>(const TauMap& a, const TauMap& b) {
    for (int f = 0; f < 6; ++f)
      if (auto o = a.edge_of_face[static_cast<size_t>(f)] <=> b.edge_of_face[static_cast<size_t>(f)]; o != 0) return o;
    return std::strong_ordering::equal;
  }

  // Ascending list of the six selected edges.
  std::array<int, 6> selected_edges() const;
};

// Deterministic lexicographic enumeration; restricted mode yields the 1496
// injective face->incident-edge maps.
std::vector<TauMap> enumerate_taus(bool restricted);

// Variable order of the covering system: 8 vertex translates (24 scalars,
// cube vertices lexicographic), 6 face translates (18, face order), t_0..t_11
// (12), then s_k for the six selected edges in ascending k (6). 60 total.
struct CoverLayout {
  static constexpr std::size_t kNumVars = 60;

  explicit CoverLayout(const TauMap& tau);

  static std::size_t vertex_var(int vertex_index, int axis) { return static_cast<std::size_t>(3 * vertex_index + axis); }
  static std::size_t face_var(int face_index, int axis) { return static_cast<std::size_t>(24 + 3 * face_index + axis); }
  static std::size_t t_var(int edge) { return static_cast<std::size_t>(42 + edge); }
  std::size_t s_var(int edge) const;
  bool selected(int edge) const { return s_of_edge_[static_cast<size_t>(edge)] >= 0; }

  static int vertex_index(const Vec3& v);  // v in {0,1}^3, lexicographic
  std::vector<std::string> names() const;

 private:
  std::array<int, 12> s_of_edge_;
};

// The covering feasibility system: 68q rows over the 60 layout variables
// (8q vertex containments, 24q face-corner containments, 12q for unselected
// edges, 24q for selected edges), then 36 bound rows 0 <= t,s <= 1.
lp::LinearSystem build_lp(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q);

struct VerifyOptions {
  bool prescreen = true;
};

struct BoxVerdict {
  bool feasible = false;
  lp::Witness witness;          // 60 values when feasible
  bool prescreen_rejected = false;  // the float screen answered Infeasible
  long pivots = 0;
};

// Full protocol for one (box, tau) pair: build Q_P and L(P,tau), screen in
// doubles, confirm exactly. A screen verdict of Infeasible is taken at face
// value; soundness only ever rests on the exact path. Geometry failures
// surface as BoxGeometryError.
BoxVerdict verify_box(const cfg::Box6& box, const TauMap& tau, const VerifyOptions& opts = {});
BoxVerdict verify_box_with(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q,
                           const VerifyOptions& opts = {});

// Substituted-witness covering check, independent of the LP rows: every cube
// vertex in its translate, every face-rectangle corner in its face translate,
// every edge stitched by its intermediate points, parameters within [0,1].
bool witness_covers(const cfg::Box6& box, const TauMap& tau, const geo::HPolytope& q,
                    const lp::Witness& w);

// The 8 cube vertices and the 6 face centers.
std::array<Vec3, 14> fourteen_point_set();

struct PairVerdict {
  int i, j;
  bool closed_feasible;  // a common translate of the closed body exists
  Rational margin;       // max margin; <= 0 means no interior translate covers both
};
struct LowerBoundReport {
  std::vector<PairVerdict> pairs;  // all 91
  bool ok = false;                 // every pair has margin <= 0
};

// No translate of the open central body covers two of the fourteen points;
// decided by 91 exact margin programs.
LowerBoundReport lower_bound_check();

// Exact inclusion Q_P subset of O_p via support functions, for p in the box.
bool inclusion_check(const cfg::Box6& box, const cfg::ConfigPoint& p);
bool inclusion_check_with(const geo::HPolytope& q, const cfg::ConfigPoint& p);

struct StrictTranslate {
  Vec3 translate;
  Rational margin;  // > 0: the translate sits in the interior with this slack
};

// Translate of Q_P into the interior of O_p with maximal margin; throws
// NoStrictTranslate when no positive margin exists.
StrictTranslate strict_translate(const cfg::Box6& box, const cfg::ConfigPoint& p);
StrictTranslate strict_translate_with(const geo::HPolytope& q, const cfg::ConfigPoint& p);

// Samples points of O_q' intersect O_r' (its vertices) and confirms they lie
// in O_p, for q',r' differing in one coordinate and p on the segment.
bool segment_fact_check(const cfg::ConfigPoint& q, const cfg::ConfigPoint& r,
                        const cfg::ConfigPoint& p, int trials, std::uint64_t seed = 0);

}  // namespace cover14::cover
