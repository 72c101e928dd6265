// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_QUANTUM_HPP_
#define GHOSTSIM_QUANTUM_HPP_

#include <cmath>
#include <complex>
#include <stdexcept>
#include <variant>

#include "ghostsim/gates.hpp"
#include "ghostsim/geometry.hpp"
#include "ghostsim/ontic.hpp"

namespace ghostsim::quantum {

/// Qubit state ρ = ½(1 + n·σ); |n| = 1 for pure states.
struct BlochState {
  Vec3 n{0.0, 0.0, 1.0};
};

inline BlochState basis_state(Path i) { return {{0.0, 0.0, parity(i)}}; }

inline BlochState bloch_apply(const BlochState& s, const GateSpec& g) {
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    return {rotate_z(s.n, ps->path == Path::upper ? -ps->omega : ps->omega)};
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) return {rotate_x(s.n, bs->xi)};
  throw std::invalid_argument("bloch_apply: detectors are handled by bloch_measure");
}

struct Measurement {
  double probability = 0.0;
  BlochState collapsed;
};

/// Probability of finding the particle in path i, and the post-measurement state.
inline Measurement bloch_measure(const BlochState& s, Path i) {
  return {0.5 * (1.0 + parity(i) * s.n.z), basis_state(i)};
}

/// Measurement whose outcome is not registered.
inline BlochState bloch_dephase(const BlochState& s) { return {{0.0, 0.0, s.n.z}}; }

using Complex = std::complex<double>;

struct Amplitudes {
  Complex a0{1.0, 0.0};
  Complex a1{0.0, 0.0};

  [[nodiscard]] double norm_squared() const { return std::norm(a0) + std::norm(a1); }
};

inline Amplitudes basis_amplitudes(Path i) {
  return i == Path::upper ? Amplitudes{{1.0, 0.0}, {0.0, 0.0}} : Amplitudes{{0.0, 0.0}, {1.0, 0.0}};
}

/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩
inline Amplitudes from_bloch(UnitVec3 n) {
  const Spherical s = to_spherical(n);
  return {{std::cos(s.theta / 2.0), 0.0}, std::polar(std::sin(s.theta / 2.0), s.phi)};
}

/// Bloch vector of a pure state; the global phase drops out.
inline Vec3 bloch_vector(const Amplitudes& a) {
  const Complex c = std::conj(a.a0) * a.a1;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a.a0) - std::norm(a.a1)};
}

/// Matrix action: B(ξ) = [[i cos ξ/2, sin ξ/2], [sin ξ/2, i cos ξ/2]],
/// P₀(ω) = diag(e^{iω}, 1), P₁(ω) = diag(1, e^{iω}).
inline Amplitudes matrix_apply(const Amplitudes& a, const GateSpec& g) {
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    const Complex phase = std::polar(1.0, ps->omega);
    return ps->path == Path::upper ? Amplitudes{phase * a.a0, a.a1} : Amplitudes{a.a0, phase * a.a1};
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) {
    const Complex ic{0.0, std::cos(bs->xi / 2.0)};
    const double s = std::sin(bs->xi / 2.0);
    return {ic * a.a0 + s * a.a1, s * a.a0 + ic * a.a1};
  }
  throw std::invalid_argument("matrix_apply: detectors are not unitary");
}

}  // namespace ghostsim::quantum

#endif  // GHOSTSIM_QUANTUM_HPP_
