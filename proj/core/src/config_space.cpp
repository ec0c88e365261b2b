#include "cover14/config_space.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cover14::cfg {

ConfigPoint Box6::corner(unsigned mask) const {
  ConfigPoint q;
  for (int i = 0; i < 6; ++i) {
    const bool high = (mask >> (5 - i)) & 1u;
    q[i] = high ? hi[static_cast<size_t>(i)] : lo[static_cast<size_t>(i)];
  }
  return q;
}

ConfigPoint Box6::center() const {
  ConfigPoint q;
  const Rational half(1, 2);
  for (int i = 0; i < 6; ++i) q[i] = half * (lo[static_cast<size_t>(i)] + hi[static_cast<size_t>(i)]);
  return q;
}

Rational Box6::volume() const {
  Rational v = 1;
  for (int i = 0; i < 6; ++i) v *= width(i);
  return v;
}

bool Box6::contains(const ConfigPoint& q) const {
  for (int i = 0; i < 6; ++i)
    if (q[i] < lo[static_cast<size_t>(i)] || q[i] > hi[static_cast<size_t>(i)]) return false;
  return true;
}

Vec3 CubeSymmetry::apply(const Vec3& x) const {
  Vec3 y;
  for (int i = 0; i < 3; ++i) {
    const Rational v = flips[static_cast<size_t>(i)] ? Rational(1) - x[i] : x[i];
    y[axis_permutation[static_cast<size_t>(i)]] = v;
  }
  return y;
}

const std::vector<CubeSymmetry>& cube_symmetries() {
  static const std::vector<CubeSymmetry> all = [] {
    std::vector<CubeSymmetry> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (unsigned mask = 0; mask < 8; ++mask) {
        CubeSymmetry s;
        s.axis_permutation = perm;
        for (int i = 0; i < 3; ++i) s.flips[static_cast<size_t>(i)] = (mask >> i) & 1u;
        out.push_back(s);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return all;
}

EdgeGeometry edge_geometry(int k) {
  const int axis = k / 4, b1 = (k % 4) / 2, b2 = k % 2;
  const int o1 = axis == 0 ? 1 : 0;
  const int o2 = axis == 2 ? 1 : 2;
  EdgeGeometry e;
  e.base[o1] = b1;
  e.base[o2] = b2;
  e.direction[axis] = 1;
  return e;
}

std::array<FaceId, 2> edge_faces(int k) {
  const int axis = k / 4, b1 = (k % 4) / 2, b2 = k % 2;
  const int o1 = axis == 0 ? 1 : 0;
  const int o2 = axis == 2 ? 1 : 2;
  return {FaceId{o1, b1}, FaceId{o2, b2}};
}

bool edge_in_face(int k, FaceId f) {
  const auto fs = edge_faces(k);
  return fs[0] == f || fs[1] == f;
}

std::array<int, 4> face_edges(FaceId f) {
  std::array<int, 4> out{};
  int n = 0;
  for (int k = 0; k < kNumEdges; ++k)
    if (edge_in_face(k, f)) out[static_cast<size_t>(n++)] = k;
  if (n != 4) throw std::logic_error("face_edges: face does not contain 4 edges");
  return out;
}

std::array<Vec3, 6> v_points(const ConfigPoint& p) {
  return {Vec3{0, p[0], p[1]},    Vec3{1, p[0], p[1]},     // faces (1,0), (1,1)
          Vec3{p[2], 0, p[3]},    Vec3{p[2], 1, p[3]},     // faces (2,0), (2,1)
          Vec3{p[4], p[5], 0},    Vec3{p[4], p[5], 1}};    // faces (3,0), (3,1)
}

geo::HPolytope o_polytope(const ConfigPoint& p) {
  const auto pts = v_points(p);
  return geo::hull3(pts);
}

ConfigPoint apply_symmetry(const CubeSymmetry& s, const ConfigPoint& p) {
  const auto pts = v_points(p);
  std::array<Vec3, 6> img;
  for (int f = 0; f < kNumFaces; ++f) {
    const FaceId src = face_of_index(f);
    const int dst_axis = s.axis_permutation[static_cast<size_t>(src.axis)];
    const int dst_side = s.flips[static_cast<size_t>(src.axis)] ? 1 - src.side : src.side;
    img[static_cast<size_t>(face_index(FaceId{dst_axis, dst_side}))] = s.apply(pts[static_cast<size_t>(f)]);
  }
  ConfigPoint q;
  q[0] = img[0][1];
  q[1] = img[0][2];
  q[2] = img[2][0];
  q[3] = img[2][2];
  q[4] = img[4][0];
  q[5] = img[4][1];
  return q;
}

bool in_D(const ConfigPoint& p) {
  const Rational half(1, 2);
  for (int i = 0; i < 6; ++i)
    if (p[i].sign() < 0 || p[i] > 1) return false;
  for (int i = 0; i < 3; ++i)
    if (p[i] > half) return false;
  return p[1] + p[3] <= p[0] + p[5] && p[0] + p[5] <= p[2] + p[4];
}

std::pair<ConfigPoint, CubeSymmetry> reduce_to_D(const ConfigPoint& p) {
  std::optional<std::pair<ConfigPoint, CubeSymmetry>> best;
  for (const CubeSymmetry& s : cube_symmetries()) {
    ConfigPoint q = apply_symmetry(s, p);
    if (!in_D(q)) continue;
    if (!best || q < best->first) best = {std::move(q), s};
  }
  if (!best) throw std::logic_error("reduce_to_D: no symmetry image lies in D");
  return *best;
}

// --- grid enumeration ------------------------------------------------------

BoxStream::BoxStream(int M) : m_(M) {
  if (M < 1) throw std::invalid_argument("BoxStream: M must be positive");
}

bool BoxStream::admissible() const {
  return k_[1] + k_[3] <= k_[0] + k_[5] + 1 && k_[0] + k_[5] <= k_[2] + k_[4] + 1;
}

bool BoxStream::advance() {
  for (int i = 5; i >= 0; --i) {
    const long cap = i < 3 ? m_ - 1 : 2 * m_ - 1;
    if (k_[static_cast<size_t>(i)] < cap) {
      ++k_[static_cast<size_t>(i)];
      for (int j = i + 1; j < 6; ++j) k_[static_cast<size_t>(j)] = 0;
      return true;
    }
  }
  return false;
}

std::optional<std::array<long, 6>> BoxStream::next_k() {
  while (!done_) {
    if (fresh_) {
      fresh_ = false;
    } else if (!advance()) {
      done_ = true;
      break;
    }
    if (!admissible()) continue;
    ++index_;
    return k_;
  }
  return std::nullopt;
}

Box6 BoxStream::materialize(int M, const std::array<long, 6>& k) {
  Box6 b;
  for (int i = 0; i < 6; ++i) {
    b.lo[static_cast<size_t>(i)] = Rational(k[static_cast<size_t>(i)], 2L * M);
    b.hi[static_cast<size_t>(i)] = Rational(k[static_cast<size_t>(i)] + 1, 2L * M);
  }
  b.region_id = region_of_k(k, M);
  return b;
}

std::optional<Box6> BoxStream::next() {
  auto k = next_k();
  if (!k) return std::nullopt;
  return materialize(m_, *k);
}

int region_of_k(const std::array<long, 6>& k, int M) {
  // floor(lo * 4) = floor(2k / M) per coordinate
  std::array<long, 6> j{};
  for (int i = 0; i < 6; ++i) {
    const long cap = i < 3 ? 1 : 3;
    long v = 2 * k[static_cast<size_t>(i)] / M;
    if (2 * k[static_cast<size_t>(i)] < 0) v = -1;  // unreachable for valid grids
    j[static_cast<size_t>(i)] = std::clamp(v, 0L, cap);
  }
  return static_cast<int>(((j[0] * 2 + j[1]) * 2 + j[2]) * 64 + j[3] * 16 + j[4] * 4 + j[5]);
}

std::uint64_t count_boxes(int M) {
  if (M < 1) throw std::invalid_argument("count_boxes: M must be positive");
  static std::map<int, std::uint64_t> cache;
  static std::mutex mu;
  {
    std::scoped_lock lk(mu);
    if (auto it = cache.find(M); it != cache.end()) return it->second;
  }
  // Direct tally over the k-grid; integer arithmetic only.
  std::uint64_t n = 0;
  for (long k1 = 0; k1 < M; ++k1)
    for (long k2 = 0; k2 < M; ++k2)
      for (long k3 = 0; k3 < M; ++k3)
        for (long k4 = 0; k4 < 2 * M; ++k4)
          for (long k6 = 0; k6 < 2 * M; ++k6) {
            if (k2 + k4 > k1 + k6 + 1) continue;
            // k1+k6 <= k3+k5+1  <=>  k5 >= k1+k6-k3-1
            const long k5min = std::max(0L, k1 + k6 - k3 - 1);
            if (k5min < 2 * M) n += static_cast<std::uint64_t>(2 * M - k5min);
          }
  std::scoped_lock lk(mu);
  cache[M] = n;
  return n;
}

std::vector<Box6> boxes_at(int M, const std::vector<std::uint64_t>& sorted_indices) {
  std::vector<Box6> out;
  out.reserve(sorted_indices.size());
  BoxStream stream(M);
  std::size_t want = 0;
  std::uint64_t seq = 0;
  while (want < sorted_indices.size()) {
    auto k = stream.next_k();
    if (!k) throw std::out_of_range("boxes_at: index beyond enumeration");
    if (seq == sorted_indices[want]) {
      out.push_back(BoxStream::materialize(M, *k));
      ++want;
    }
    ++seq;
  }
  return out;
}

std::vector<Box6> regions() {
  std::vector<Box6> out;
  out.reserve(kNumRegions);
  const Rational quarter(1, 4);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j3 = 0; j3 < 2; ++j3)
        for (int j4 = 0; j4 < 4; ++j4)
          for (int j5 = 0; j5 < 4; ++j5)
            for (int j6 = 0; j6 < 4; ++j6) {
              Box6 b;
              const std::array<int, 6> j{j1, j2, j3, j4, j5, j6};
              for (int i = 0; i < 6; ++i) {
                b.lo[static_cast<size_t>(i)] = Rational(j[static_cast<size_t>(i)], 4);
                b.hi[static_cast<size_t>(i)] = Rational(j[static_cast<size_t>(i)] + 1, 4);
              }
              b.region_id = static_cast<int>(out.size());
              out.push_back(std::move(b));
            }
  return out;
}

int region_of(const Box6& box) {
  std::array<long, 6> j{};
  for (int i = 0; i < 6; ++i) {
    const long cap = i < 3 ? 1 : 3;
    j[static_cast<size_t>(i)] = std::clamp((box.lo[static_cast<size_t>(i)] * 4).floor_long(), 0L, cap);
  }
  return static_cast<int>(((j[0] * 2 + j[1]) * 2 + j[2]) * 64 + j[3] * 16 + j[4] * 4 + j[5]);
}

geo::HPolytope q_polytope(const Box6& box) {
  std::vector<geo::HPolytope> parts;
  parts.reserve(64);
  for (unsigned mask = 0; mask < 64; ++mask) parts.push_back(o_polytope(box.corner(mask)));
  return geo::intersect(parts);
}

std::array<Vec3, 4> r_rect(const Box6& box, FaceId f) {
  const int pair_lo = 2 * f.axis;  // p-coordinates (pair_lo, pair_lo+1) sweep this face
  std::array<Vec3, 4> out;
  int n = 0;
  for (const Rational& second : {box.lo[static_cast<size_t>(pair_lo) + 1], box.hi[static_cast<size_t>(pair_lo) + 1]}) {
    for (const Rational& first : {box.lo[static_cast<size_t>(pair_lo)], box.hi[static_cast<size_t>(pair_lo)]}) {
      ConfigPoint p;
      p[pair_lo] = first;
      p[pair_lo + 1] = second;
      out[static_cast<size_t>(n++)] = v_points(p)[static_cast<size_t>(face_index(f))];
    }
  }
  return out;
}

std::string box_to_fields(const Box6& box) {
  std::ostringstream os;
  for (int i = 0; i < 6; ++i) os << (i ? " " : "") << box.lo[static_cast<size_t>(i)].str_slash();
  for (int i = 0; i < 6; ++i) os << " " << box.hi[static_cast<size_t>(i)].str_slash();
  return os.str();
}

std::optional<Box6> box_from_fields(const std::vector<std::string>& fields) {
  if (fields.size() != 12) return std::nullopt;
  Box6 b;
  for (int i = 0; i < 12; ++i) {
    auto r = Rational::parse_canonical(fields[static_cast<size_t>(i)]);
    if (!r) return std::nullopt;
    (i < 6 ? b.lo[static_cast<size_t>(i)] : b.hi[static_cast<size_t>(i - 6)]) = *r;
  }
  for (int i = 0; i < 6; ++i) {
    if (b.lo[static_cast<size_t>(i)].sign() < 0 || b.hi[static_cast<size_t>(i)] > 1) return std::nullopt;
    if (!(b.lo[static_cast<size_t>(i)] < b.hi[static_cast<size_t>(i)])) return std::nullopt;
  }
  return b;
}

}  // namespace cover14::cfg
