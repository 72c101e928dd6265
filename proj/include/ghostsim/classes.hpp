// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_CLASSES_HPP_
#define GHOSTSIM_CLASSES_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ghostsim/gates.hpp"
#include "ghostsim/geometry.hpp"
#include "ghostsim/ontic.hpp"

namespace ghostsim {

/// Unit vector N labeling the class [N].
struct ClassLabel {
  UnitVec3 n;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// Member of [N] for N ≠ ±ẑ: phases of the ghosts accompanying the path-0
/// and path-1 real particle respectively.
struct GenericParams {
  double alpha = 0.0;
  double beta = 0.0;
  friend bool operator==(const GenericParams&, const GenericParams&) = default;
};

/// Pole member with a ghost: real vector +ẑ, ghost phase gamma.
struct PoleGhostParams {
  double gamma = 0.0;
  friend bool operator==(const PoleGhostParams&, const PoleGhostParams&) = default;
};

/// Pole member with the other path empty; the vector may be anything but −ẑ.
struct PoleEmptyParams {
  UnitVec3 n;
  friend bool operator==(const PoleEmptyParams&, const PoleEmptyParams&) = default;
};

using ClassMemberParams = std::variant<GenericParams, PoleGhostParams, PoleEmptyParams>;

/// Vector in the closed unit ball labeling an epistemic class.
class BallVec {
 public:
  BallVec() = default;
  explicit BallVec(Vec3 v) : v_(v) {
    if (!(v.norm() <= tol::kBallRadius)) {
      throw std::invalid_argument("BallVec: length exceeds 1");
    }
  }
  BallVec(UnitVec3 u) : v_(u.vec()) {}  // NOLINT: every unit vector is a ball vector

  [[nodiscard]] Vec3 vec() const { return v_; }
  [[nodiscard]] double length() const { return v_.norm(); }

 private:
  Vec3 v_;
};

/// Tolerances for class recognition.
namespace tol {
inline constexpr double kClassWeight = 1e-7;
inline constexpr double kPoleSine = 1e-6;
}  // namespace tol

inline bool is_north(UnitVec3 n) { return approx_equal(n, UnitVec3::plus_z()); }
inline bool is_south(UnitVec3 n) { return approx_equal(n, -UnitVec3::plus_z()); }
inline bool is_pole(UnitVec3 n) { return is_north(n) || is_south(n); }

/// ½(1 + (−1)^i ẑ·N)
inline double born_probability(const BallVec& n, Path i) {
  return 0.5 * (1.0 + parity(i) * n.vec().z);
}

inline WeightedStates class_member(const ClassLabel& label, const ClassMemberParams& params) {
  const UnitVec3 n = label.n;
  if (const auto* g = std::get_if<GenericParams>(&params)) {
    if (is_pole(n)) throw std::invalid_argument("class_member: generic parameters at a pole");
    const double w0 = 0.5 * (1.0 + n.z());
    return WeightedStates({
        {w0, {Path::upper, rotate_z(n, g->alpha), Companion::ghost(g->alpha)}},
        {1.0 - w0, {Path::lower, -rotate_z(n, g->beta), Companion::ghost(g->beta)}},
    });
  }
  if (!is_pole(n)) throw std::invalid_argument("class_member: pole parameters off the poles");
  const Path i = is_north(n) ? Path::upper : Path::lower;
  if (const auto* pg = std::get_if<PoleGhostParams>(&params)) {
    return WeightedStates::point({i, UnitVec3::plus_z(), Companion::ghost(pg->gamma)});
  }
  const auto& pe = std::get<PoleEmptyParams>(params);
  if (is_south(pe.n)) throw std::invalid_argument("class_member: empty-path member with vector -z");
  return WeightedStates::point({i, pe.n, Companion::empty()});
}

struct ClassId {
  ClassLabel label;
  ClassMemberParams params;
};

/// Recognize a distribution as a member of some class [N]; nullopt means the
/// distribution lies outside the union of all classes.
inline std::optional<ClassId> identify_class(const WeightedStates& p) {
  const auto entries = p.entries();
  if (entries.size() == 1) {
    const OnticState& s = entries[0].state;
    const UnitVec3 label = s.path == Path::upper ? UnitVec3::plus_z() : -UnitVec3::plus_z();
    if (s.companion.is_ghost()) {
      if (!is_north(s.real_vec)) return std::nullopt;
      return ClassId{{label}, PoleGhostParams{s.companion.phase()}};
    }
    if (is_south(s.real_vec)) return std::nullopt;
    return ClassId{{label}, PoleEmptyParams{s.real_vec}};
  }
  if (entries.size() != 2) return std::nullopt;

  const WeightedState* upper = &entries[0];
  const WeightedState* lower = &entries[1];
  if (upper->state.path == Path::lower) std::swap(upper, lower);
  if (upper->state.path != Path::upper || lower->state.path != Path::lower) return std::nullopt;
  if (!upper->state.companion.is_ghost() || !lower->state.companion.is_ghost()) return std::nullopt;

  const double alpha = upper->state.companion.phase();
  const double beta = lower->state.companion.phase();
  const UnitVec3 n = rotate_z(upper->state.real_vec, -alpha);
  if (!approx_equal(lower->state.real_vec, -rotate_z(n, beta))) return std::nullopt;
  if (std::abs(upper->weight - 0.5 * (1.0 + n.z())) > tol::kClassWeight) return std::nullopt;
  // Two-point supports never arise at an exact pole; near one the label is still well defined.
  return ClassId{{n}, GenericParams{alpha, beta}};
}

/// Label after an outcome (or the single label for a deterministic gate).
struct ClassBranch {
  std::vector<Outcome> outcomes;
  double probability = 1.0;
  ClassLabel label;
};

/// Class-level action of a gate. Detector branches of zero probability are omitted.
inline std::vector<ClassBranch> class_transform(const ClassLabel& label, const GateSpec& g) {
  const UnitVec3 n = label.n;
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    return {{{}, 1.0, {rotate_z(n, phase_sign(ps->path) * ps->omega)}}};
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) return {{{}, 1.0, {rotate_x(n, bs->xi)}}};

  const UnitVec3 north = UnitVec3::plus_z();
  const double p0 = born_probability(n, Path::upper);
  const double p1 = born_probability(n, Path::lower);
  std::vector<ClassBranch> out;
  const auto add = [&](std::vector<Outcome> o, double p, UnitVec3 v) {
    if (p > tol::kWeightFloor) out.push_back({std::move(o), p, {v}});
  };
  if (const auto* d = std::get_if<Detector>(&g)) {
    // Click in path j projects onto the pole of path j.
    const Path j = d->path;
    const UnitVec3 here = j == Path::upper ? north : -north;
    add({{j, Firing::click}}, born_probability(n, j), here);
    add({{j, Firing::no_click}}, born_probability(n, other(j)), -here);
    return out;
  }
  add({{Path::upper, Firing::click}, {Path::lower, Firing::no_click}}, p0, north);
  add({{Path::upper, Firing::no_click}, {Path::lower, Firing::click}}, p1, -north);
  return out;
}

/// Post-measurement epistemic vector: ±ẑ for a registered outcome, (ẑ·N)ẑ otherwise.
inline BallVec measurement_update(const BallVec& n, std::optional<Path> outcome) {
  if (outcome) return BallVec(Vec3{0.0, 0.0, parity(*outcome)});
  return BallVec(Vec3{0.0, 0.0, n.vec().z});
}

/// Epistemic vector of a mixture of class members, evaluated point by point.
inline BallVec epistemic_vector(const WeightedStates& p) {
  Vec3 sum;
  for (const auto& e : p) {
    const OnticState& s = e.state;
    Vec3 contribution;
    if (s.companion.is_ghost()) {
      contribution = parity(s.path) * rotate_z(s.real_vec.vec(), -s.companion.phase());
    } else {
      contribution = Vec3{0.0, 0.0, parity(s.path)};
    }
    sum += e.weight * contribution;
  }
  // Guard against rounding just past the unit sphere.
  const double len = sum.norm();
  if (len > 1.0 && len <= tol::kBallRadius) sum = (1.0 / len) * sum;
  return BallVec(sum);
}

/// Epistemic-vector action of a rotation gate (phase shifter or beam splitter).
inline BallVec epistemic_rotate(const BallVec& n, const GateSpec& g) {
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    return BallVec(rotate_z(n.vec(), phase_sign(ps->path) * ps->omega));
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) return BallVec(rotate_x(n.vec(), bs->xi));
  throw std::invalid_argument("epistemic_rotate: detectors are not rotations");
}

/// Named members of the ±ŷ and ±ẑ classes, generated from the class formula.
namespace fixtures {
inline WeightedStates plus_y(double alpha = 0.0, double beta = 0.0) {
  return class_member({UnitVec3::plus_y()}, GenericParams{alpha, beta});
}
inline WeightedStates minus_y(double alpha = 0.0, double beta = 0.0) {
  return class_member({-UnitVec3::plus_y()}, GenericParams{alpha, beta});
}
inline WeightedStates plus_z(double gamma = 0.0) {
  return class_member({UnitVec3::plus_z()}, PoleGhostParams{gamma});
}
inline WeightedStates minus_z(double gamma = 0.0) {
  return class_member({-UnitVec3::plus_z()}, PoleGhostParams{gamma});
}
}  // namespace fixtures

}  // namespace ghostsim

#endif  // GHOSTSIM_CLASSES_HPP_
