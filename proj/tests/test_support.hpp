// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

// Generators and matchers shared by the test suites.

#ifndef GHOSTSIM_TESTS_TEST_SUPPORT_HPP_
#define GHOSTSIM_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghostsim/ghostsim.hpp"

namespace ghostsim::testing {

using Engine = std::mt19937_64;

inline double uniform_angle(Engine& rng) { return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng); }

/// Uniform on the sphere (normal deviates, normalized).
inline UnitVec3 random_unit(Engine& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    if (v.norm() > 1e-3) return UnitVec3(v);
  }
}

/// Random unit vector kept away from the poles.
inline UnitVec3 random_off_pole(Engine& rng) {
  for (;;) {
    const UnitVec3 v = random_unit(rng);
    if (std::abs(v.z()) < 0.999) return v;
  }
}

inline Path random_path(Engine& rng) { return path_from_index(std::uniform_int_distribution<int>(0, 1)(rng)); }

/// Random member of E drawn from the generic and pole families.
inline WeightedStates random_class_member(Engine& rng, ClassId* id = nullptr) {
  const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
  ClassLabel label;
  ClassMemberParams params;
  if (kind < 6) {
    label = {random_off_pole(rng)};
    params = GenericParams{uniform_angle(rng), uniform_angle(rng)};
  } else {
    label = {random_path(rng) == Path::upper ? UnitVec3::plus_z() : -UnitVec3::plus_z()};
    if (kind < 8) {
      params = PoleGhostParams{uniform_angle(rng)};
    } else {
      UnitVec3 n = random_unit(rng);
      if (n.z() < -0.999) n = UnitVec3::plus_z();
      params = PoleEmptyParams{n};
    }
  }
  if (id) *id = {label, params};
  return class_member(label, params);
}

inline GateSpec random_gate(Engine& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return PhaseShifter{random_path(rng), uniform_angle(rng)};
    case 1:
      return BeamSplitter{uniform_angle(rng)};
    case 2:
      return Detector{random_path(rng)};
    default:
      return DetectorPair{};
  }
}

inline std::string describe(const WeightedStates& p) {
  std::ostringstream os;
  os.precision(17);
  os << p;
  return os.str();
}

}  // namespace ghostsim::testing

#endif  // GHOSTSIM_TESTS_TEST_SUPPORT_HPP_
