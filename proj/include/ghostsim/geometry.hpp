// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_GEOMETRY_HPP_
#define GHOSTSIM_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ghostsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Comparison tolerances shared by every module.
namespace tol {
/// Absolute per-component tolerance for vector equality.
inline constexpr double kVector = 1e-9;
/// Tolerance for phases compared modulo 2π.
inline constexpr double kPhase = 1e-9;
/// Probability sums must hit 1 within this.
inline constexpr double kNormalization = 1e-9;
/// Stochastic branches lighter than this are treated as impossible.
inline constexpr double kWeightFloor = 1e-14;
/// Largest admissible length of a ball vector.
inline constexpr double kBallRadius = 1.0 + 1e-9;
}  // namespace tol

/// Map an angle into [0, 2π).
inline double normalize_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Distance between two angles on the circle, in [0, π].
inline double phase_distance(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

inline bool phases_equal(double a, double b, double tolerance = tol::kPhase) {
  return phase_distance(a, b) <= tolerance;
}

/// Plain 3-vector; used for ball vectors and as the storage of UnitVec3.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  constexpr Vec3& operator+=(Vec3 o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend constexpr bool operator==(Vec3, Vec3) = default;

  [[nodiscard]] constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
};

inline std::ostream& operator<<(std::ostream& os, Vec3 v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

inline bool approx_equal(Vec3 a, Vec3 b, double tolerance = tol::kVector) {
  return std::abs(a.x - b.x) <= tolerance && std::abs(a.y - b.y) <= tolerance &&
         std::abs(a.z - b.z) <= tolerance;
}

/// A point of the unit sphere. Construction normalizes its argument.
class UnitVec3 {
 public:
  UnitVec3() = default;  // +ẑ
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}
  explicit UnitVec3(Vec3 v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("UnitVec3: cannot normalize a zero or non-finite vector");
    }
    v_ = (1.0 / n) * v;
  }

  static UnitVec3 plus_x() { return {1.0, 0.0, 0.0}; }
  static UnitVec3 plus_y() { return {0.0, 1.0, 0.0}; }
  static UnitVec3 plus_z() { return {0.0, 0.0, 1.0}; }

  [[nodiscard]] double x() const { return v_.x; }
  [[nodiscard]] double y() const { return v_.y; }
  [[nodiscard]] double z() const { return v_.z; }
  [[nodiscard]] Vec3 vec() const { return v_; }
  [[nodiscard]] double dot(UnitVec3 o) const { return v_.dot(o.v_); }

  friend UnitVec3 operator-(UnitVec3 a) {
    UnitVec3 r;
    r.v_ = -a.v_;
    return r;
  }
  friend bool operator==(UnitVec3, UnitVec3) = default;

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

inline std::ostream& operator<<(std::ostream& os, UnitVec3 v) { return os << v.vec(); }

inline bool approx_equal(UnitVec3 a, UnitVec3 b, double tolerance = tol::kVector) {
  return approx_equal(a.vec(), b.vec(), tolerance);
}

/// Polar angle in [0, π], azimuth in [0, 2π).
struct Spherical {
  double theta = 0.0;
  double phi = 0.0;
};

// Right-handed rotations; rotate_x(ẑ, π/2) = −ŷ fixes the handedness.
inline Vec3 rotate_x(Vec3 v, double xi) {
  const double c = std::cos(xi);
  const double s = std::sin(xi);
  return {v.x, v.y * c - v.z * s, v.y * s + v.z * c};
}

inline Vec3 rotate_z(Vec3 v, double omega) {
  const double c = std::cos(omega);
  const double s = std::sin(omega);
  return {v.x * c - v.y * s, v.x * s + v.y * c, v.z};
}

inline UnitVec3 rotate_x(UnitVec3 v, double xi) { return UnitVec3(rotate_x(v.vec(), xi)); }
inline UnitVec3 rotate_z(UnitVec3 v, double omega) { return UnitVec3(rotate_z(v.vec(), omega)); }

inline Spherical to_spherical(UnitVec3 v) {
  const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
  if (std::hypot(v.x(), v.y()) <= 1e-15) return {theta, 0.0};
  return {theta, normalize_phase(std::atan2(v.y(), v.x()))};
}

inline UnitVec3 from_spherical(Spherical s) {
  const double st = std::sin(s.theta);
  return {st * std::cos(s.phi), st * std::sin(s.phi), std::cos(s.theta)};
}

}  // namespace ghostsim

#endif  // GHOSTSIM_GEOMETRY_HPP_
