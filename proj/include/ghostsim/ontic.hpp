// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_ONTIC_HPP_
#define GHOSTSIM_ONTIC_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghostsim/geometry.hpp"

namespace ghostsim {

/// One of the two interferometer arms.
enum class Path : std::uint8_t { upper = 0, lower = 1 };

constexpr int index(Path p) { return static_cast<int>(p); }
constexpr Path other(Path p) { return p == Path::upper ? Path::lower : Path::upper; }
/// (−1)^i for path i.
constexpr double parity(Path p) { return p == Path::upper ? 1.0 : -1.0; }

inline Path path_from_index(int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("path index must be 0 or 1, got " + std::to_string(i));
  return static_cast<Path>(i);
}

inline std::ostream& operator<<(std::ostream& os, Path p) { return os << index(p); }

/// Content of the arm not holding the real particle: a ghost with a phase, or nothing.
class Companion {
 public:
  static Companion ghost(double phase) { return Companion(normalize_phase(phase)); }
  static Companion empty() { return Companion(); }

  [[nodiscard]] bool is_ghost() const { return phase_.has_value(); }
  [[nodiscard]] bool is_empty() const { return !phase_.has_value(); }
  /// Precondition: is_ghost().
  [[nodiscard]] double phase() const { return *phase_; }
  [[nodiscard]] std::optional<double> maybe_phase() const { return phase_; }

  friend bool operator==(const Companion&, const Companion&) = default;

 private:
  Companion() = default;
  explicit Companion(double phase) : phase_(phase) {}
  std::optional<double> phase_;
};

inline bool approx_equal(const Companion& a, const Companion& b, double tolerance = tol::kPhase) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  return phases_equal(a.phase(), b.phase(), tolerance);
}

struct OnticState {
  Path path = Path::upper;
  UnitVec3 real_vec;
  Companion companion = Companion::empty();

  friend bool operator==(const OnticState&, const OnticState&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const OnticState& s) {
  os << '(' << s.path << "; " << s.real_vec << "; ";
  if (s.companion.is_ghost()) {
    os << "ghost " << s.companion.phase();
  } else {
    os << "empty";
  }
  return os << ')';
}

/// Tolerant equality: vectors per component, ghost phases modulo 2π.
inline bool states_equal(const OnticState& a, const OnticState& b) {
  return a.path == b.path && approx_equal(a.real_vec, b.real_vec) &&
         approx_equal(a.companion, b.companion);
}

struct WeightedState {
  double weight = 0.0;
  OnticState state;

  friend bool operator==(const WeightedState&, const WeightedState&) = default;
};

/// A finitely supported probability distribution over ontic states, kept in
/// canonical form: positive weights summing to 1 and pairwise distinct states.
class WeightedStates {
 public:
  /// Canonicalize arbitrary entries. Throws if the weights do not sum to 1.
  explicit WeightedStates(std::vector<WeightedState> entries) {
    double total = 0.0;
    for (const auto& e : entries) {
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
        throw std::invalid_argument("WeightedStates: weights must be finite and nonnegative");
      }
      total += e.weight;
    }
    if (std::abs(total - 1.0) > tol::kNormalization) {
      throw std::invalid_argument("WeightedStates: weights sum to " + std::to_string(total) +
                                  ", expected 1");
    }
    for (auto& e : entries) {
      if (e.weight <= tol::kWeightFloor) continue;
      bool merged = false;
      for (auto& have : entries_) {
        if (states_equal(have.state, e.state)) {
          have.weight += e.weight;
          merged = true;
          break;
        }
      }
      if (!merged) entries_.push_back(std::move(e));
    }
    double kept = 0.0;
    for (const auto& e : entries_) kept += e.weight;
    if (entries_.empty()) throw std::invalid_argument("WeightedStates: empty support");
    for (auto& e : entries_) e.weight /= kept;
  }

  static WeightedStates point(OnticState s) { return WeightedStates({{1.0, std::move(s)}}); }

  [[nodiscard]] std::span<const WeightedState> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  friend bool operator==(const WeightedStates&, const WeightedStates&) = default;

 private:
  std::vector<WeightedState> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const WeightedStates& p) {
  os << '{';
  bool first = true;
  for (const auto& e : p) {
    if (!first) os << ", ";
    first = false;
    os << e.weight << ": " << e.state;
  }
  return os << '}';
}

/// Same support (up to states_equal) with weights matching within `weight_tol`.
inline bool approx_equal(const WeightedStates& a, const WeightedStates& b, double weight_tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (const auto& ea : a) {
    bool found = false;
    for (const auto& eb : b) {
      if (states_equal(ea.state, eb.state)) {
        if (std::abs(ea.weight - eb.weight) > weight_tol) return false;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Real particle in path i with vector +ẑ, the other path empty.
inline WeightedStates initial_state(Path i) {
  return WeightedStates::point({i, UnitVec3::plus_z(), Companion::empty()});
}

/// Convex combination of distributions.
inline WeightedStates mix(std::span<const std::pair<double, WeightedStates>> parts) {
  double total = 0.0;
  for (const auto& [p, dist] : parts) {
    if (!(p >= 0.0)) throw std::invalid_argument("mix: negative mixing probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kNormalization) {
    throw std::invalid_argument("mix: probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  std::vector<WeightedState> entries;
  for (const auto& [p, dist] : parts) {
    for (const auto& e : dist) entries.push_back({p * e.weight, e.state});
  }
  return WeightedStates(std::move(entries));
}

inline WeightedStates mix(std::initializer_list<std::pair<double, WeightedStates>> parts) {
  return mix(std::span<const std::pair<double, WeightedStates>>(parts.begin(), parts.size()));
}

}  // namespace ghostsim

#endif  // GHOSTSIM_ONTIC_HPP_
