#pragma once

#include <array>
#include <compare>
#include <string>

#include "cover14/rational.hpp"

namespace cover14 {

// Point / direction in E^3 with exact rational coordinates.
struct Vec3 {
  std::array<Rational, 3> c{};

  Vec3() = default;
  Vec3(Rational a, Rational b, Rational d) : c{std::move(a), std::move(b), std::move(d)} {}

  Rational& operator[](int i) { return c[static_cast<size_t>(i)]; }
  const Rational& operator[](int i) const { return c[static_cast<size_t>(i)]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
  friend Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
  Vec3 operator-() const { return {-c[0], -c[1], -c[2]}; }

  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend std::strong_ordering operator<=>(const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i)
      if (auto o = a[i] <=> b[i]; o != 0) return o;
    return std::strong_ordering::equal;
  }

  Rational dot(const Vec3& o) const { return c[0] * o[0] + c[1] * o[1] + c[2] * o[2]; }
  Vec3 cross(const Vec3& o) const {
    return {c[1] * o[2] - c[2] * o[1], c[2] * o[0] - c[0] * o[2], c[0] * o[1] - c[1] * o[0]};
  }
  bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
  Rational l1_norm() const { return c[0].abs() + c[1].abs() + c[2].abs(); }

  std::string str() const { return "(" + c[0].str() + "," + c[1].str() + "," + c[2].str() + ")"; }
};

// Sign of det[b-a; c-a; d-a]: positive when d lies on the positive side of the
// plane through a,b,c spanned with normal (b-a)x(c-a).
inline int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a).sign();
}

}  // namespace cover14
