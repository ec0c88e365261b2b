#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cover14/geometry.hpp"
#include "cover14/linear_system.hpp"

// Independent verification oracles. Everything here decides the same
// questions as the main kernel by a different route (exhaustive enumeration
// or elimination) and is deliberately kept free of the code paths it checks.
namespace cover14::oracles {

// Facets of conv(points) by testing every 3-subset's plane for
// supporting-ness. Cubic and slow; the reference for hull3.
std::vector<geo::Halfspace> brute_force_facets(std::span<const Vec3> points);

// Extreme points of the set: x is extreme iff it is not a convex combination
// of the others (decided by a feasibility program over the weights).
std::vector<Vec3> extreme_points(std::span<const Vec3> points);

// Vertices of the polytope by solving every facet triple and filtering by
// feasibility. The reference for vertices().
std::vector<Vec3> vertices_by_triples(const geo::HPolytope& p);

// Exact Fourier-Motzkin elimination; the reference for feasible_exact on
// small systems.
bool fourier_motzkin_feasible(const lp::LinearSystem& s);

// Unique solution of a 3x3 rational system, if any.
std::optional<Vec3> solve3(const std::array<std::array<Rational, 3>, 3>& a,
                           const std::array<Rational, 3>& b);

// Grid-box count by direct filtering of all k-tuples.
std::uint64_t brute_force_box_count(int M);

// Injective face->incident-edge maps counted from all 4^6 assignments.
std::uint64_t brute_force_restricted_tau_count();

}  // namespace cover14::oracles
