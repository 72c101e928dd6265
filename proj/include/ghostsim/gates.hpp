// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_GATES_HPP_
#define GHOSTSIM_GATES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ghostsim/geometry.hpp"
#include "ghostsim/ontic.hpp"
#include "ghostsim/rng.hpp"

namespace ghostsim {

struct PhaseShifter {
  Path path = Path::upper;
  double omega = 0.0;
  friend bool operator==(const PhaseShifter&, const PhaseShifter&) = default;
};

struct BeamSplitter {
  double xi = 0.0;
  friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

struct Detector {
  Path path = Path::upper;
  friend bool operator==(const Detector&, const Detector&) = default;
};

/// Detectors in both paths at once.
struct DetectorPair {
  friend bool operator==(const DetectorPair&, const DetectorPair&) = default;
};

using GateSpec = std::variant<PhaseShifter, BeamSplitter, Detector, DetectorPair>;

inline bool is_detector(const GateSpec& g) {
  return std::holds_alternative<Detector>(g) || std::holds_alternative<DetectorPair>(g);
}

inline void validate(const GateSpec& g) {
  const bool ok = std::visit(
      [](const auto& gate) {
        using G = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<G, PhaseShifter>) return std::isfinite(gate.omega);
        if constexpr (std::is_same_v<G, BeamSplitter>) return std::isfinite(gate.xi);
        return true;
      },
      g);
  if (!ok) throw std::invalid_argument("gate angle must be finite");
}

enum class Firing : std::uint8_t { click, no_click };

struct Outcome {
  Path detector = Path::upper;
  Firing fired = Firing::click;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Outcome& o) {
  return os << 'D' << o.detector << (o.fired == Firing::click ? ":CLICK" : ":NOCLICK");
}

/// Sign of the real-particle rotation for the phase shifter in path j: σ₀ = −1, σ₁ = +1.
constexpr double phase_sign(Path j) { return j == Path::upper ? -1.0 : 1.0; }

inline OnticState apply_phase_shifter(const OnticState& s, Path j, double omega) {
  OnticState out = s;
  if (s.path == j) {
    out.real_vec = rotate_z(s.real_vec, phase_sign(j) * omega);
  } else if (s.companion.is_ghost()) {
    out.companion = Companion::ghost(s.companion.phase() - phase_sign(j) * omega);
  }
  return out;
}

/// Vector leaving the beam splitter on the "stay" branch.
inline UnitVec3 beam_splitter_vector(const OnticState& s, double xi) {
  if (s.companion.is_empty()) return rotate_x(UnitVec3::plus_z(), xi);
  return rotate_x(rotate_z(s.real_vec, -s.companion.phase()), xi);
}

/// The two stochastic branches of B(ξ): stay (index 0) and swap (index 1).
/// Weights are cos²(θ'/2) = (1 + z')/2 and sin²(θ'/2) = (1 − z')/2.
inline std::array<WeightedState, 2> beam_splitter_branches(const OnticState& s, double xi) {
  const UnitVec3 n = beam_splitter_vector(s, xi);
  const double stay = std::clamp(0.5 * (1.0 + n.z()), 0.0, 1.0);
  return {WeightedState{stay, {s.path, n, Companion::ghost(0.0)}},
          WeightedState{1.0 - stay, {other(s.path), -n, Companion::ghost(0.0)}}};
}

inline WeightedStates apply_beam_splitter(const OnticState& s, double xi) {
  auto branches = beam_splitter_branches(s, xi);
  return WeightedStates({branches[0], branches[1]});
}

inline std::pair<Outcome, OnticState> apply_detector(const OnticState& s, Path j) {
  OnticState out = s;
  if (s.path == j) {
    out.real_vec = UnitVec3::plus_z();
    return {{j, Firing::click}, out};
  }
  out.companion = Companion::empty();
  return {{j, Firing::no_click}, out};
}

struct PairReading {
  /// Indexed by detector path.
  std::array<Outcome, 2> outcomes;
  /// Path of the detector that clicked.
  [[nodiscard]] Path clicked() const {
    return outcomes[0].fired == Firing::click ? Path::upper : Path::lower;
  }
};

inline std::pair<PairReading, OnticState> apply_detector_pair(const OnticState& s) {
  auto [o0, s0] = apply_detector(s, Path::upper);
  auto [o1, s1] = apply_detector(s0, Path::lower);
  return {PairReading{{o0, o1}}, s1};
}

/// One outcome-conditioned piece of a gate's image.
struct GateBranch {
  /// Empty for gates without detectors; one entry per detector otherwise.
  std::vector<Outcome> outcomes;
  double probability = 1.0;
  WeightedStates conditional;
};

struct PushForward {
  std::vector<GateBranch> branches;
  /// Image of the whole ensemble with outcomes ignored.
  WeightedStates unconditioned;
};

namespace detail {

inline std::vector<Outcome> outcomes_for(const GateSpec& g, const OnticState& s) {
  if (const auto* d = std::get_if<Detector>(&g)) return {apply_detector(s, d->path).first};
  const auto reading = apply_detector_pair(s).first;
  return {reading.outcomes[0], reading.outcomes[1]};
}

inline OnticState detect(const GateSpec& g, const OnticState& s) {
  if (const auto* d = std::get_if<Detector>(&g)) return apply_detector(s, d->path).second;
  return apply_detector_pair(s).second;
}

}  // namespace detail

inline PushForward push_forward(const WeightedStates& p, const GateSpec& g) {
  validate(g);
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    std::vector<WeightedState> out;
    for (const auto& e : p) out.push_back({e.weight, apply_phase_shifter(e.state, ps->path, ps->omega)});
    WeightedStates image(std::move(out));
    return {{GateBranch{{}, 1.0, image}}, image};
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) {
    std::vector<WeightedState> out;
    for (const auto& e : p) {
      for (const auto& b : beam_splitter_branches(e.state, bs->xi)) {
        out.push_back({e.weight * b.weight, b.state});
      }
    }
    WeightedStates image(std::move(out));
    return {{GateBranch{{}, 1.0, image}}, image};
  }

  struct Group {
    std::vector<Outcome> outcomes;
    double mass = 0.0;
    std::vector<WeightedState> entries;
  };
  std::vector<Group> groups;
  std::vector<WeightedState> all;
  for (const auto& e : p) {
    auto outcomes = detail::outcomes_for(g, e.state);
    OnticState after = detail::detect(g, e.state);
    all.push_back({e.weight, after});
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& gr) { return gr.outcomes == outcomes; });
    if (it == groups.end()) {
      groups.push_back({std::move(outcomes), 0.0, {}});
      it = std::prev(groups.end());
    }
    it->mass += e.weight;
    it->entries.push_back({e.weight, after});
  }
  // Outcome order: Click before NoClick for a single detector, D0 before D1 for a pair.
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    const auto key = [](const Group& gr) {
      return gr.outcomes.size() == 1 ? static_cast<int>(gr.outcomes[0].fired)
                                     : (gr.outcomes[0].fired == Firing::click ? 0 : 1);
    };
    return key(a) < key(b);
  });
  PushForward result{{}, WeightedStates(std::move(all))};
  for (auto& gr : groups) {
    for (auto& e : gr.entries) e.weight /= gr.mass;
    result.branches.push_back({std::move(gr.outcomes), gr.mass, WeightedStates(std::move(gr.entries))});
  }
  return result;
}

struct SampledStep {
  /// Set for detector gates.
  std::optional<std::vector<Outcome>> outcomes;
  OnticState state;
};

inline SampledStep sample_gate(const OnticState& s, const GateSpec& g, ShotRng& rng) {
  if (const auto* ps = std::get_if<PhaseShifter>(&g)) {
    return {std::nullopt, apply_phase_shifter(s, ps->path, ps->omega)};
  }
  if (const auto* bs = std::get_if<BeamSplitter>(&g)) {
    const auto branches = beam_splitter_branches(s, bs->xi);
    const double u = rng.uniform();
    const bool stay = branches[1].weight <= tol::kWeightFloor ||
                      (branches[0].weight > tol::kWeightFloor && u < branches[0].weight);
    return {std::nullopt, stay ? branches[0].state : branches[1].state};
  }
  return {detail::outcomes_for(g, s), detail::detect(g, s)};
}

}  // namespace ghostsim

#endif  // GHOSTSIM_GATES_HPP_
