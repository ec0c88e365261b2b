#include "cover14/props.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "cover14/certify.hpp"
#include "cover14/config_space.hpp"
#include "cover14/cover_system.hpp"
#include "cover14/oracles.hpp"
#include "cover14/search.hpp"
#include "cover14/simplex.hpp"
#include "cover14/util.hpp"

namespace cover14::props {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

cfg::ConfigPoint random_config(util::Rng& rng, long den) {
  cfg::ConfigPoint p;
  for (int i = 0; i < 6; ++i) p[i] = rng.unit_rational(den);
  return p;
}

// Random admissible grid box, optionally bisected a few times toward a
// random child, mimicking search descendants.
cfg::Box6 random_descendant(util::Rng& rng, int M, int extra_depth) {
  const std::uint64_t total = cfg::count_boxes(M);
  const std::vector<cfg::Box6> picked = cfg::boxes_at(M, {rng.below(total)});
  cfg::Box6 box = picked.front();
  for (int d = 0; d < extra_depth; ++d) {
    auto [a, b] = search::split(box);
    box = rng.coin() ? b : a;
  }
  return box;
}

cfg::ConfigPoint random_point_in(util::Rng& rng, const cfg::Box6& box, bool strict_interior) {
  cfg::ConfigPoint p;
  const long den = 16;
  for (int i = 0; i < 6; ++i) {
    const long k = strict_interior ? rng.range(1, den - 1) : rng.range(0, den);
    p[i] = box.lo[static_cast<size_t>(i)] + Rational(k, den) * box.width(i);
  }
  return p;
}

SuiteResult finish(SuiteResult r, const util::Stopwatch& sw) {
  r.pass = r.failures == 0;
  r.seconds = sw.seconds();
  return r;
}

}  // namespace

SuiteResult run_lower_bound() {
  util::Stopwatch sw;
  SuiteResult r{.name = "lower-bound"};
  const auto rep = cover::lower_bound_check();
  r.trials = rep.pairs.size();
  int closed = 0;
  for (const auto& p : rep.pairs) {
    if (p.margin.sign() > 0) ++r.failures;
    if (p.closed_feasible) ++closed;
  }
  r.detail = std::to_string(closed) + " of " + std::to_string(rep.pairs.size()) +
             " pairs are boundary-tight for the closed body";
  return finish(std::move(r), sw);
}

SuiteResult run_lemma_inclusion(int samples, std::uint64_t seed, unsigned workers) {
  util::Stopwatch sw;
  SuiteResult r{.name = "lemma-inclusion"};
  r.trials = static_cast<std::uint64_t>(samples);
  std::atomic<std::uint64_t> failures{0};
  util::parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    util::Rng rng(mix(seed, i));
    const cfg::Box6 box = random_descendant(rng, 10, static_cast<int>(rng.below(3)));
    const geo::HPolytope q = cfg::q_polytope(box);
    const cfg::ConfigPoint p = random_point_in(rng, box, false);
    if (!cover::inclusion_check_with(q, p)) ++failures;
  });
  r.failures = failures;
  return finish(std::move(r), sw);
}

SuiteResult run_lemma_strict(int samples, std::uint64_t seed, unsigned workers) {
  util::Stopwatch sw;
  SuiteResult r{.name = "lemma-strict"};
  r.trials = static_cast<std::uint64_t>(samples);
  std::atomic<std::uint64_t> failures{0};
  util::parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    util::Rng rng(mix(seed, i));
    const cfg::Box6 box = random_descendant(rng, 10, static_cast<int>(rng.below(3)));
    const geo::HPolytope q = cfg::q_polytope(box);
    const cfg::ConfigPoint p = random_point_in(rng, box, true);
    try {
      const auto st = cover::strict_translate_with(q, p);
      if (st.margin.sign() <= 0) ++failures;
    } catch (const NoStrictTranslate&) {
      ++failures;
    }
  });
  r.failures = failures;
  return finish(std::move(r), sw);
}

SuiteResult run_segment_fact(int samples, std::uint64_t seed) {
  util::Stopwatch sw;
  SuiteResult r{.name = "segment-fact"};
  r.trials = static_cast<std::uint64_t>(samples);
  for (int i = 0; i < samples; ++i) {
    util::Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
    cfg::ConfigPoint q = random_config(rng, 12);
    cfg::ConfigPoint rr = q;
    const int axis = static_cast<int>(rng.below(6));
    Rational a = rng.unit_rational(12), b = rng.unit_rational(12);
    if (b < a) std::swap(a, b);
    q[axis] = a;
    rr[axis] = b;
    cfg::ConfigPoint p = q;
    p[axis] = a + rng.unit_rational(8) * (b - a);
    if (!cover::segment_fact_check(q, rr, p, 100, mix(seed, static_cast<std::uint64_t>(i) + 7)))
      ++r.failures;
  }
  return finish(std::move(r), sw);
}

SuiteResult run_symmetry(int samples, std::uint64_t seed) {
  util::Stopwatch sw;
  SuiteResult r{.name = "symmetry"};
  r.trials = static_cast<std::uint64_t>(samples);
  const auto& group = cfg::cube_symmetries();
  for (int i = 0; i < samples; ++i) {
    util::Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
    const cfg::ConfigPoint p = random_config(rng, 24);

    // group action is pointwise on the configured points
    const cfg::CubeSymmetry& s = group[rng.below(group.size())];
    const auto direct = cfg::v_points(cfg::apply_symmetry(s, p));
    std::multiset<Vec3> lhs(direct.begin(), direct.end()), rhs;
    for (const Vec3& v : cfg::v_points(p)) rhs.insert(s.apply(v));
    bool ok = lhs == rhs;

    // reduction lands in D and is realized by its reported symmetry
    const auto [pd, sd] = cfg::reduce_to_D(p);
    ok = ok && cfg::in_D(pd);
    const auto reduced = cfg::v_points(pd);
    std::multiset<Vec3> lhs2(reduced.begin(), reduced.end()), rhs2;
    for (const Vec3& v : cfg::v_points(p)) rhs2.insert(sd.apply(v));
    ok = ok && lhs2 == rhs2;

    if (!ok) ++r.failures;
  }
  return finish(std::move(r), sw);
}

SuiteResult run_coverage(int samples, std::uint64_t seed) {
  util::Stopwatch sw;
  SuiteResult r{.name = "coverage"};
  r.trials = static_cast<std::uint64_t>(samples);
  for (int i = 0; i < samples; ++i) {
    util::Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
    const auto [p, s] = cfg::reduce_to_D(random_config(rng, 40));
    for (const int M : {1, 2, 10}) {
      // any grid box containing p has k_i = floor(p_i/h), or one less when
      // p_i sits exactly on a grid line; try all such candidates
      const Rational h(1, 2L * M);
      std::array<std::vector<long>, 6> cand;
      bool found = false;
      for (int c = 0; c < 6; ++c) {
        const long f = (p[c] / h).floor_long();
        cand[static_cast<size_t>(c)].push_back(f);
        if (Rational(f) * h == p[c]) cand[static_cast<size_t>(c)].push_back(f - 1);
      }
      std::array<long, 6> k{};
      auto rec = [&](auto&& self, int c) -> void {
        if (found) return;
        if (c == 6) {
          for (int j = 0; j < 6; ++j) {
            const long cap = j < 3 ? M - 1 : 2L * M - 1;
            if (k[static_cast<size_t>(j)] < 0 || k[static_cast<size_t>(j)] > cap) return;
          }
          if (k[1] + k[3] <= k[0] + k[5] + 1 && k[0] + k[5] <= k[2] + k[4] + 1) found = true;
          return;
        }
        for (long v : cand[static_cast<size_t>(c)]) {
          k[static_cast<size_t>(c)] = v;
          self(self, c + 1);
        }
      };
      rec(rec, 0);
      if (!found) {
        ++r.failures;
        break;
      }
    }
  }
  return finish(std::move(r), sw);
}

SuiteResult run_hull_oracle(int samples, std::uint64_t seed) {
  util::Stopwatch sw;
  SuiteResult r{.name = "hull-oracle"};
  r.trials = static_cast<std::uint64_t>(samples);
  for (int i = 0; i < samples; ++i) {
    util::Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
    // random 6-point rational configurations, resampled when degenerate
    std::vector<Vec3> pts;
    geo::HPolytope hull;
    for (;;) {
      const auto arr = cfg::v_points(random_config(rng, 16));
      pts.assign(arr.begin(), arr.end());
      try {
        hull = geo::hull3(pts);
        break;
      } catch (const DegenerateHull&) {
      }
    }
    bool ok = true;

    const auto oracle = oracles::brute_force_facets(pts);
    ok = ok && oracle.size() == hull.halfspaces.size() &&
         std::equal(oracle.begin(), oracle.end(), hull.halfspaces.begin());

    const auto verts = geo::vertices(hull).vertices;
    const auto extremes = oracles::extreme_points(pts);
    ok = ok && verts.size() == extremes.size() &&
         std::equal(verts.begin(), verts.end(), extremes.begin());

    const auto roundtrip = geo::hull3(verts);
    ok = ok && roundtrip.halfspaces.size() == hull.halfspaces.size() &&
         std::equal(roundtrip.halfspaces.begin(), roundtrip.halfspaces.end(), hull.halfspaces.begin());

    if (!ok) ++r.failures;
  }
  return finish(std::move(r), sw);
}

SuiteResult run_lp_oracle(int samples, std::uint64_t seed) {
  util::Stopwatch sw;
  SuiteResult r{.name = "lp-oracle"};
  r.trials = static_cast<std::uint64_t>(samples);
  for (int i = 0; i < samples; ++i) {
    util::Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
    const std::size_t n = 1 + rng.below(4), m = 1 + rng.below(8);
    lp::LinearSystem s(m, n);
    for (std::size_t row = 0; row < m; ++row) {
      for (std::size_t col = 0; col < n; ++col) s.at(row, col) = rng.range(-3, 3);
      s.rhs(row) = rng.range(-3, 3);
    }
    const auto rep = lp::feasible_exact(s);
    bool ok = rep.feasible == oracles::fourier_motzkin_feasible(s);
    if (rep.feasible) ok = ok && lp::check_witness(s, rep.witness);
    if (!ok) ++r.failures;
  }
  return finish(std::move(r), sw);
}

std::vector<std::string> suite_names() {
  return {"lower-bound", "lemma-inclusion", "lemma-strict", "segment-fact",
          "symmetry",    "coverage",        "hull-oracle",  "lp-oracle"};
}

SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed, unsigned workers) {
  if (name == "lower-bound") return run_lower_bound();
  if (name == "lemma-inclusion") return run_lemma_inclusion(samples, seed, workers);
  if (name == "lemma-strict") return run_lemma_strict(samples, seed, workers);
  if (name == "segment-fact") return run_segment_fact(samples, seed);
  if (name == "symmetry") return run_symmetry(samples, seed);
  if (name == "coverage") return run_coverage(samples, seed);
  if (name == "hull-oracle") return run_hull_oracle(samples, seed);
  if (name == "lp-oracle") return run_lp_oracle(samples, seed);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace cover14::props
