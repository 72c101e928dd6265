// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_HARNESS_HPP_
#define GHOSTSIM_HARNESS_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "ghostsim/circuit.hpp"
#include "ghostsim/classes.hpp"
#include "ghostsim/gates.hpp"
#include "ghostsim/ontic.hpp"
#include "ghostsim/quantum.hpp"
#include "ghostsim/rng.hpp"

namespace ghostsim {

/// One symbol of an outcome history. A single detector contributes its own
/// reading; a detector pair contributes one symbol naming the path that clicked.
struct Record {
  bool pair = false;
  Path path = Path::upper;
  Firing fired = Firing::click;

  friend auto operator<=>(const Record&, const Record&) = default;
};

using History = std::vector<Record>;

inline std::string to_string(const History& h) {
  std::string out;
  for (const auto& r : h) {
    if (!out.empty()) out += ' ';
    if (r.pair) {
      out += "M:" + std::to_string(index(r.path));
    } else {
      out += "D" + std::to_string(index(r.path)) + (r.fired == Firing::click ? ":CLICK" : ":NOCLICK");
    }
  }
  return out;
}

inline Record record_of(const GateSpec& g, const std::vector<Outcome>& outcomes) {
  if (std::holds_alternative<DetectorPair>(g)) {
    const bool upper = outcomes.at(0).fired == Firing::click;
    return {true, upper ? Path::upper : Path::lower, Firing::click};
  }
  return {false, outcomes.at(0).detector, outcomes.at(0).fired};
}

inline bool select_matches(const SelectStep& sel, const Record& last) {
  if (last.pair) return (last.path == sel.path) == (sel.required == Firing::click);
  return last.path == sel.path && last.fired == sel.required;
}

/// Outcome-history probabilities from one backend, conditioned on all SELECT steps.
struct ProbabilityTable {
  std::map<History, double> probability;
  /// Probability that every SELECT in the circuit is satisfied.
  double selection_probability = 1.0;
};

namespace detail {

template <typename State>
struct Live {
  History history;
  double probability;
  State state;
};

/// Shared branching driver. `advance(state, gate)` returns the outcome-tagged
/// successors of `state`, as (outcomes, probability, state) triples.
template <typename State, typename Advance>
std::pair<std::vector<Live<State>>, double> propagate(const Circuit& c, State init, Advance advance) {
  validate(c);
  std::vector<Live<State>> live{{{}, 1.0, std::move(init)}};
  for (const auto& step : c.steps) {
    if (const auto* sel = std::get_if<SelectStep>(&step)) {
      std::erase_if(live, [&](const Live<State>& b) { return !select_matches(*sel, b.history.back()); });
      continue;
    }
    const GateSpec& g = std::get<GateStep>(step).gate;
    std::vector<Live<State>> next;
    for (auto& b : live) {
      for (auto& [outcomes, p, s] : advance(b.state, g)) {
        History h = b.history;
        if (is_detector(g)) h.push_back(record_of(g, outcomes));
        next.push_back({std::move(h), b.probability * p, std::move(s)});
      }
    }
    live = std::move(next);
  }
  double kept = 0.0;
  for (const auto& b : live) kept += b.probability;
  if (!(kept > tol::kWeightFloor)) throw std::domain_error("post-selection has zero probability");
  for (auto& b : live) b.probability /= kept;
  return {std::move(live), kept};
}

template <typename State>
ProbabilityTable tabulate(std::pair<std::vector<Live<State>>, double> run) {
  ProbabilityTable t;
  t.selection_probability = run.second;
  for (const auto& b : run.first) t.probability[b.history] += b.probability;
  return t;
}

template <typename State>
using Successors = std::vector<std::tuple<std::vector<Outcome>, double, State>>;

}  // namespace detail

struct BranchNode {
  History history;
  /// Conditional on the circuit's post-selections.
  double probability = 0.0;
  WeightedStates state;
  std::optional<ClassId> class_id;
  BallVec epistemic;
};

struct BranchTree {
  std::vector<BranchNode> leaves;
  double selection_probability = 1.0;
};

/// Exact ontic evolution with one leaf per outcome history.
inline BranchTree run_exact(const Circuit& c) {
  auto advance = [](const WeightedStates& p, const GateSpec& g) {
    detail::Successors<WeightedStates> out;
    for (auto& b : push_forward(p, g).branches) out.emplace_back(std::move(b.outcomes), b.probability, std::move(b.conditional));
    return out;
  };
  auto [live, kept] = detail::propagate(c, initial_distribution(c), advance);
  BranchTree tree;
  tree.selection_probability = kept;
  for (auto& b : live) {
    auto id = identify_class(b.state);
    auto ev = epistemic_vector(b.state);
    tree.leaves.push_back({std::move(b.history), b.probability, std::move(b.state), std::move(id), ev});
  }
  return tree;
}

inline ProbabilityTable exact_probabilities(const Circuit& c) {
  const BranchTree tree = run_exact(c);
  ProbabilityTable t;
  t.selection_probability = tree.selection_probability;
  for (const auto& leaf : tree.leaves) t.probability[leaf.history] += leaf.probability;
  return t;
}

/// Epistemic vector of the circuit's starting ensemble.
inline BallVec initial_label(const Circuit& c) {
  if (const auto* p = std::get_if<Path>(&c.init)) return BallVec(Vec3{0.0, 0.0, parity(*p)});
  return epistemic_vector(std::get<WeightedStates>(c.init));
}

/// Class-calculus step: rotations of the label, detectors project onto ±ẑ.
inline detail::Successors<BallVec> class_step(const BallVec& n, const GateSpec& g) {
  detail::Successors<BallVec> out;
  if (std::abs(n.length() - 1.0) <= tol::kVector) {
    for (auto& b : class_transform({UnitVec3(n.vec())}, g)) out.emplace_back(std::move(b.outcomes), b.probability, BallVec(b.label.n));
    return out;
  }
  // Interior points of the ball: mixtures over several classes.
  if (!is_detector(g)) {
    out.emplace_back(std::vector<Outcome>{}, 1.0, epistemic_rotate(n, g));
    return out;
  }
  const auto add = [&](std::vector<Outcome> o, Path real_path) {
    const double p = born_probability(n, real_path);
    if (p > tol::kWeightFloor) out.emplace_back(std::move(o), p, measurement_update(n, real_path));
  };
  if (const auto* d = std::get_if<Detector>(&g)) {
    add({{d->path, Firing::click}}, d->path);
    add({{d->path, Firing::no_click}}, other(d->path));
  } else {
    add({{Path::upper, Firing::click}, {Path::lower, Firing::no_click}}, Path::upper);
    add({{Path::upper, Firing::no_click}, {Path::lower, Firing::click}}, Path::lower);
  }
  return out;
}

inline ProbabilityTable class_probabilities(const Circuit& c) {
  return detail::tabulate(detail::propagate(c, initial_label(c), class_step));
}

/// Class labels of every live branch after each step.
struct ClassTraceStep {
  std::size_t step = 0;
  std::vector<std::pair<History, std::pair<double, BallVec>>> branches;
};

inline std::vector<ClassTraceStep> class_trace(const Circuit& c) {
  std::vector<ClassTraceStep> trace;
  Circuit prefix{c.init, {}};
  trace.push_back({0, {}});
  for (const auto& b : detail::propagate(prefix, initial_label(c), class_step).first) {
    trace.back().branches.push_back({b.history, {b.probability, b.state}});
  }
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    prefix.steps.push_back(c.steps[k]);
    trace.push_back({k + 1, {}});
    for (const auto& b : detail::propagate(prefix, initial_label(c), class_step).first) {
      trace.back().branches.push_back({b.history, {b.probability, b.state}});
    }
  }
  return trace;
}

inline detail::Successors<quantum::BlochState> quantum_step(const quantum::BlochState& s, const GateSpec& g) {
  detail::Successors<quantum::BlochState> out;
  if (!is_detector(g)) {
    out.emplace_back(std::vector<Outcome>{}, 1.0, quantum::bloch_apply(s, g));
    return out;
  }
  const auto add = [&](std::vector<Outcome> o, Path found) {
    const auto m = quantum::bloch_measure(s, found);
    if (m.probability > tol::kWeightFloor) out.emplace_back(std::move(o), m.probability, m.collapsed);
  };
  if (const auto* d = std::get_if<Detector>(&g)) {
    add({{d->path, Firing::click}}, d->path);
    add({{d->path, Firing::no_click}}, other(d->path));
  } else {
    add({{Path::upper, Firing::click}, {Path::lower, Firing::no_click}}, Path::upper);
    add({{Path::upper, Firing::no_click}, {Path::lower, Firing::click}}, Path::lower);
  }
  return out;
}

inline ProbabilityTable quantum_probabilities(const Circuit& c) {
  quantum::BlochState init;
  if (const auto* p = std::get_if<Path>(&c.init)) {
    init = quantum::basis_state(*p);
  } else {
    init = {epistemic_vector(std::get<WeightedStates>(c.init)).vec()};
  }
  return detail::tabulate(detail::propagate(c, init, quantum_step));
}

/// Monte Carlo counts.
struct SampleCounts {
  std::map<History, std::uint64_t> counts;
  std::uint64_t shots = 0;
  /// Shots surviving every SELECT.
  std::uint64_t accepted = 0;
  [[nodiscard]] std::uint64_t discarded() const { return shots - accepted; }

  void merge(const SampleCounts& o) {
    for (const auto& [h, n] : o.counts) counts[h] += n;
    shots += o.shots;
    accepted += o.accepted;
  }
  friend bool operator==(const SampleCounts&, const SampleCounts&) = default;
};

/// Trajectory of a single shot; nullopt when a SELECT rejects it.
inline std::optional<History> sample_shot(const Circuit& c, std::uint64_t seed, std::uint64_t shot) {
  ShotRng rng(seed, shot);
  OnticState state;
  if (const auto* p = std::get_if<Path>(&c.init)) {
    state = initial_state(*p).entries()[0].state;
  } else {
    const auto& dist = std::get<WeightedStates>(c.init);
    const double u = rng.uniform();
    double acc = 0.0;
    state = dist.entries().back().state;
    for (const auto& e : dist) {
      acc += e.weight;
      if (u < acc) {
        state = e.state;
        break;
      }
    }
  }
  History h;
  for (const auto& step : c.steps) {
    if (const auto* sel = std::get_if<SelectStep>(&step)) {
      if (!select_matches(*sel, h.back())) return std::nullopt;
      continue;
    }
    const GateSpec& g = std::get<GateStep>(step).gate;
    auto r = sample_gate(state, g, rng);
    if (r.outcomes) h.push_back(record_of(g, *r.outcomes));
    state = r.state;
  }
  return h;
}

/// Sample `shots` trajectories. Shot k always uses the stream (seed, k), so the
/// result is independent of `workers`.
inline SampleCounts run_sample(const Circuit& c, std::uint64_t shots, std::uint64_t seed, unsigned workers = 1) {
  if (shots == 0) throw std::invalid_argument("run_sample: shots must be at least 1");
  validate(c);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(shots, 1024))));
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    SampleCounts local;
    for (std::uint64_t k = begin; k < end; ++k) {
      ++local.shots;
      if (auto h = sample_shot(c, seed, k)) {
        ++local.accepted;
        ++local.counts[*h];
      }
    }
    return local;
  };
  if (workers == 1) return chunk(0, shots);
  std::vector<SampleCounts> parts(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = shots * w / workers;
    const std::uint64_t end = shots * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] { parts[w] = chunk(begin, end); });
  }
  for (auto& t : pool) t.join();
  SampleCounts total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

struct CompareOptions {
  std::uint64_t shots = 0;  // 0 skips Monte Carlo
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double sigma_band = 5.0;
  unsigned workers = 1;
};

struct ReportRow {
  History history;
  double exact_p = 0.0;
  double class_p = 0.0;
  double quantum_p = 0.0;
  std::optional<std::uint64_t> counts;
  /// Binomial standard deviation of the sampled frequency, from exact_p.
  std::optional<double> sigma;
  bool pass = true;
};

struct RunReport {
  std::vector<ReportRow> rows;
  double exact_selection = 1.0;
  double class_selection = 1.0;
  double quantum_selection = 1.0;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> accepted;
  bool pass = true;
  /// Empty on PASS; otherwise names the first divergent history.
  std::string failure;
};

/// Binomial σ of a frequency estimate of probability p over n trials.
inline double binomial_sigma(double p, std::uint64_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

inline bool within_band(double observed, double expected, double sigma, double band) {
  return std::abs(observed - expected) <= band * sigma + 1e-12;
}

inline RunReport compare_tables(const ProbabilityTable& exact, const ProbabilityTable& classes,
                                const ProbabilityTable& quantum, const std::optional<SampleCounts>& sampled,
                                const CompareOptions& opt) {
  RunReport report;
  report.exact_selection = exact.selection_probability;
  report.class_selection = classes.selection_probability;
  report.quantum_selection = quantum.selection_probability;

  std::map<History, ReportRow> rows;
  for (const auto& [h, p] : exact.probability) rows[h].exact_p = p;
  for (const auto& [h, p] : classes.probability) rows[h].class_p = p;
  for (const auto& [h, p] : quantum.probability) rows[h].quantum_p = p;
  if (sampled) {
    for (const auto& [h, n] : sampled->counts) rows[h];
    report.shots = sampled->shots;
    report.accepted = sampled->accepted;
  }

  const auto fail = [&](const std::string& why) {
    if (report.pass) report.failure = why;
    report.pass = false;
  };
  if (std::abs(exact.selection_probability - classes.selection_probability) > opt.tol ||
      std::abs(exact.selection_probability - quantum.selection_probability) > opt.tol) {
    fail("selection probabilities disagree across backends");
  }
  if (sampled) {
    const double rate = static_cast<double>(sampled->accepted) / static_cast<double>(sampled->shots);
    if (!within_band(rate, exact.selection_probability, binomial_sigma(exact.selection_probability, sampled->shots),
                     opt.sigma_band)) {
      fail("sampled post-selection rate outside the statistical band");
    }
  }

  for (auto& [h, row] : rows) {
    row.history = h;
    const bool agree = std::abs(row.exact_p - row.class_p) <= opt.tol && std::abs(row.exact_p - row.quantum_p) <= opt.tol;
    bool ok = agree;
    if (sampled) {
      const auto it = sampled->counts.find(h);
      row.counts = it == sampled->counts.end() ? 0 : it->second;
      row.sigma = binomial_sigma(row.exact_p, sampled->accepted);
      const double freq = sampled->accepted == 0 ? 0.0
                                                 : static_cast<double>(*row.counts) / static_cast<double>(sampled->accepted);
      if (!within_band(freq, row.exact_p, *row.sigma, opt.sigma_band)) {
        ok = false;
        fail("history '" + to_string(h) + "': Monte Carlo frequency outside the statistical band");
      }
    }
    if (!agree) fail("history '" + to_string(h) + "': exact backends disagree");
    row.pass = ok;
    report.rows.push_back(row);
  }
  return report;
}

/// Run every backend on `c` and check that they agree.
inline RunReport compare(const Circuit& c, const CompareOptions& opt = {}) {
  std::optional<SampleCounts> sampled;
  if (opt.shots > 0) sampled = run_sample(c, opt.shots, opt.seed, opt.workers);
  return compare_tables(exact_probabilities(c), class_probabilities(c), quantum_probabilities(c), sampled, opt);
}

struct RandomCircuitOptions {
  /// Total gate count including the final MEASURE.
  int max_gates = 10;
  int max_mid_detectors = 2;
};

/// Random circuit with uniform angles in [0, 2π), terminated by MEASURE.
template <typename Engine>
Circuit random_circuit(Engine& rng, const RandomCircuitOptions& opt = {}) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> length(1, std::max(1, opt.max_gates - 1));
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  Circuit c{path_from_index(coin(rng)), {}};
  int detectors = 0;
  const int n = length(rng);
  for (int k = 0; k < n; ++k) {
    const int roll = kind(rng);
    if (roll < 4) {
      c.then(BeamSplitter{angle(rng)});
    } else if (roll < 8 || detectors >= opt.max_mid_detectors) {
      const Path p = path_from_index(coin(rng));
      c.then(PhaseShifter{p, angle(rng)});
    } else {
      c.then(Detector{path_from_index(coin(rng))});
      ++detectors;
    }
  }
  c.then(DetectorPair{});
  return c;
}

/// The three two-beam-splitter interferometers: plain, with P₀(π), with D₀ in between.
inline Circuit demo_circuit(std::string_view name) {
  Circuit c{Path::upper, {}};
  c.then(BeamSplitter{kPi / 2.0});
  if (name == "mz") {
  } else if (name == "mz-phase") {
    c.then(PhaseShifter{Path::upper, kPi});
  } else if (name == "mz-detector") {
    c.then(Detector{Path::upper});
  } else {
    throw std::invalid_argument("unknown demo '" + std::string(name) + "' (expected mz, mz-phase or mz-detector)");
  }
  c.then(BeamSplitter{kPi / 2.0}).then(DetectorPair{});
  return c;
}

}  // namespace ghostsim

#endif  // GHOSTSIM_HARNESS_HPP_
