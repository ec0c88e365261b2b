#include "cover14/oracles.hpp"

#include <algorithm>
#include <set>

#include "cover14/config_space.hpp"
#include "cover14/simplex.hpp"

namespace cover14::oracles {

std::vector<geo::Halfspace> brute_force_facets(std::span<const Vec3> points) {
  std::vector<Vec3> pts;
  {
    std::set<Vec3> seen;
    for (const Vec3& p : points)
      if (seen.insert(p).second) pts.push_back(p);
  }
  const int n = static_cast<int>(pts.size());
  std::set<geo::Halfspace> found;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec3 normal = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (normal.is_zero()) continue;
        Rational offset = normal.dot(pts[i]);
        int pos = 0, neg = 0;
        for (const Vec3& p : pts) {
          const int s = (normal.dot(p) - offset).sign();
          pos += s > 0;
          neg += s < 0;
        }
        if (pos && neg) continue;  // not supporting
        if (pos) {                 // points violate n.x <= c: flip outward
          normal = -normal;
          offset = -offset;
        }
        geo::Halfspace h{normal, offset};
        h.canonicalize();
        found.insert(h);
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Vec3> extreme_points(std::span<const Vec3> points) {
  std::vector<Vec3> pts;
  {
    std::set<Vec3> seen;
    for (const Vec3& p : points)
      if (seen.insert(p).second) pts.push_back(p);
  }
  const std::size_t n = pts.size();
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) {
      out.push_back(pts[i]);
      continue;
    }
    // weights w_j >= 0, sum w = 1, sum w_j p_j = p_i, as inequalities
    const std::size_t m = n - 1;
    lp::LinearSystem s(2 * 4 + m, m);
    std::size_t row = 0;
    for (int c = 0; c < 3; ++c) {
      std::size_t col = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        s.at(row, col) = pts[j][c];
        s.at(row + 1, col) = -pts[j][c];
        ++col;
      }
      s.rhs(row) = pts[i][c];
      s.rhs(row + 1) = -pts[i][c];
      row += 2;
    }
    {
      std::size_t col = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        s.at(row, col) = 1;
        s.at(row + 1, col) = -1;
        ++col;
      }
      s.rhs(row) = 1;
      s.rhs(row + 1) = -1;
      row += 2;
    }
    for (std::size_t j = 0; j < m; ++j) {
      s.at(row, j) = -1;
      s.rhs(row) = 0;
      ++row;
    }
    if (!lp::feasible_exact(s).feasible) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Vec3> solve3(const std::array<std::array<Rational, 3>, 3>& a,
                           const std::array<Rational, 3>& b) {
  // Cramer's rule over rationals.
  auto det = [](const std::array<std::array<Rational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const Rational d = det(a);
  if (d.is_zero()) return std::nullopt;
  Vec3 x;
  for (int c = 0; c < 3; ++c) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = b[static_cast<size_t>(r)];
    x[c] = det(m) / d;
  }
  return x;
}

std::vector<Vec3> vertices_by_triples(const geo::HPolytope& p) {
  const int n = p.facet_count();
  std::set<Vec3> found;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        std::array<std::array<Rational, 3>, 3> a;
        std::array<Rational, 3> b;
        const geo::Halfspace* hs[3] = {&p.halfspaces[static_cast<size_t>(i)],
                                       &p.halfspaces[static_cast<size_t>(j)],
                                       &p.halfspaces[static_cast<size_t>(k)]};
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = hs[r]->normal[c];
          b[static_cast<size_t>(r)] = hs[r]->offset;
        }
        auto x = solve3(a, b);
        if (x && geo::contains(p, *x)) found.insert(*x);
      }
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// One elimination step: project out the last variable.
struct FmRow {
  std::vector<Rational> a;
  Rational c;
};

bool fm_recurse(std::vector<FmRow> rows, std::size_t vars) {
  for (;;) {
    // prune trivial rows: 0 <= c feasible iff c >= 0
    std::vector<FmRow> keep;
    for (FmRow& r : rows) {
      bool all_zero = true;
      for (const Rational& v : r.a)
        if (!v.is_zero()) all_zero = false;
      if (all_zero) {
        if (r.c.sign() < 0) return false;
      } else {
        keep.push_back(std::move(r));
      }
    }
    rows = std::move(keep);
    if (rows.empty()) return true;
    if (vars == 0) return true;  // unreachable: nonzero rows require vars > 0

    const std::size_t v = vars - 1;
    std::vector<FmRow> pos, neg, zero;
    for (FmRow& r : rows) {
      const int s = r.a[v].sign();
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(std::move(r));
    }
    std::vector<FmRow> next = std::move(zero);
    for (const FmRow& rp : pos) {
      for (const FmRow& rn : neg) {
        // rp: a.x + p*xv <= c1 (p>0), rn: b.x - q*xv <= c2 (q>0)
        const Rational p = rp.a[v], q = -rn.a[v];
        FmRow r;
        r.a.resize(v);
        for (std::size_t i = 0; i < v; ++i) r.a[i] = q * rp.a[i] + p * rn.a[i];
        r.c = q * rp.c + p * rn.c;
        next.push_back(std::move(r));
      }
    }
    for (FmRow& r : next) r.a.resize(v);
    rows = std::move(next);
    vars = v;
  }
}

}  // namespace

bool fourier_motzkin_feasible(const lp::LinearSystem& s) {
  std::vector<FmRow> rows(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    rows[i].a.assign(s.row(i).begin(), s.row(i).end());
    rows[i].c = s.rhs(i);
  }
  return fm_recurse(std::move(rows), s.cols());
}

std::uint64_t brute_force_box_count(int M) {
  std::uint64_t n = 0;
  for (long k1 = 0; k1 < M; ++k1)
    for (long k2 = 0; k2 < M; ++k2)
      for (long k3 = 0; k3 < M; ++k3)
        for (long k4 = 0; k4 < 2 * M; ++k4)
          for (long k5 = 0; k5 < 2 * M; ++k5)
            for (long k6 = 0; k6 < 2 * M; ++k6)
              if (k2 + k4 <= k1 + k6 + 1 && k1 + k6 + 1 <= k3 + k5 + 2) ++n;
  return n;
}

std::uint64_t brute_force_restricted_tau_count() {
  std::uint64_t n = 0;
  std::array<std::array<int, 4>, 6> choices{};
  for (int f = 0; f < 6; ++f) choices[static_cast<size_t>(f)] = cfg::face_edges(cfg::face_of_index(f));
  std::array<int, 6> pick{};
  auto rec = [&](auto&& self, int f) -> void {
    if (f == 6) {
      std::set<int> s(pick.begin(), pick.end());
      if (s.size() == 6) ++n;
      return;
    }
    for (int k : choices[static_cast<size_t>(f)]) {
      pick[static_cast<size_t>(f)] = k;
      self(self, f + 1);
    }
  };
  rec(rec, 0);
  return n;
}

}  // namespace cover14::oracles
