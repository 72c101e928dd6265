// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghostsim/harness.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_support.hpp"

namespace ghostsim {
namespace {

using testing::Engine;

Record M(Path p) { return {true, p, Firing::click}; }
Record D(Path p, Firing f) { return {false, p, f}; }

TEST(History, Strings) {
  EXPECT_EQ(to_string(History{}), "");
  EXPECT_EQ(to_string({D(Path::upper, Firing::click), M(Path::lower)}), "D0:CLICK M:1");
  EXPECT_EQ(to_string({D(Path::lower, Firing::no_click)}), "D1:NOCLICK");
}

TEST(Exact, MachZehnderFixtures) {
  auto t = exact_probabilities(demo_circuit("mz"));
  ASSERT_EQ(t.probability.size(), 1u);
  EXPECT_NEAR(t.probability.at({M(Path::lower)}), 1.0, 1e-12);

  t = exact_probabilities(demo_circuit("mz-phase"));
  ASSERT_EQ(t.probability.size(), 1u);
  EXPECT_NEAR(t.probability.at({M(Path::upper)}), 1.0, 1e-12);

  t = exact_probabilities(demo_circuit("mz-detector"));
  ASSERT_EQ(t.probability.size(), 4u);
  for (const auto& [h, p] : t.probability) EXPECT_NEAR(p, 0.25, 1e-12) << to_string(h);
  EXPECT_THROW(demo_circuit("mz2"), std::invalid_argument);
}

TEST(Exact, LeavesCarryClassLabels) {
  const BranchTree tree = run_exact(demo_circuit("mz-detector"));
  for (const auto& leaf : tree.leaves) {
    ASSERT_TRUE(leaf.class_id.has_value());
    const Path m = leaf.history.back().path;
    EXPECT_TRUE(approx_equal(leaf.class_id->label.n, m == Path::upper ? UnitVec3::plus_z() : -UnitVec3::plus_z()));
    EXPECT_NEAR(leaf.epistemic.vec().z, parity(m), 1e-12);
  }
}

TEST(Exact, MatchesTrajectoryAndAmplitudeOracles) {
  Engine rng(51);
  for (int k = 0; k < 300; ++k) {
    const Circuit c = random_circuit(rng, {12, 3});
    const auto exact = oracle::keyed(exact_probabilities(c));
    const auto paths = oracle::trajectory_probabilities(c);
    const auto amps = oracle::amplitude_probabilities(c);
    EXPECT_LE(oracle::max_difference(exact, paths.probability), 1e-9) << serialize(c);
    EXPECT_LE(oracle::max_difference(exact, amps.probability), 1e-9) << serialize(c);
    EXPECT_LE(oracle::max_difference(oracle::keyed(class_probabilities(c)), amps.probability), 1e-9);
    EXPECT_LE(oracle::max_difference(oracle::keyed(quantum_probabilities(c)), amps.probability), 1e-9);
  }
}

TEST(Exact, EveryLeafIsAClassMemberMatchingTheClassBackend) {
  Engine rng(53);
  for (int k = 0; k < 200; ++k) {
    Circuit c = random_circuit(rng);
    c.steps.pop_back();  // keep the leaves off the computational poles
    if (c.steps.empty() || !std::holds_alternative<GateStep>(c.steps.back()) ||
        is_detector(std::get<GateStep>(c.steps.back()).gate)) {
      c.then(BeamSplitter{testing::uniform_angle(rng)});
    }
    const BranchTree tree = run_exact(c);
    const auto trace = class_trace(c);
    const auto& final_labels = trace.back().branches;
    ASSERT_EQ(final_labels.size(), tree.leaves.size());
    for (const auto& leaf : tree.leaves) {
      ASSERT_TRUE(leaf.class_id.has_value()) << testing::describe(leaf.state);
      EXPECT_TRUE(approx_equal(leaf.epistemic.vec(), leaf.class_id->label.n.vec(), 1e-9));
      const auto it = std::find_if(final_labels.begin(), final_labels.end(),
                                   [&](const auto& b) { return b.first == leaf.history; });
      ASSERT_NE(it, final_labels.end());
      EXPECT_NEAR(it->second.first, leaf.probability, 1e-9);
      EXPECT_TRUE(approx_equal(it->second.second.vec(), leaf.class_id->label.n.vec(), 1e-9));
    }
  }
}

TEST(Select, ConditionsAndReportsEfficiency) {
  // A NoClick in the upper arm leaves the particle in the lower arm, so the
  // second 50:50 splitter sends it to either port with probability ½.
  Circuit c{Path::upper, {}};
  c.then(BeamSplitter{kPi / 2}).then(Detector{Path::upper}).select(Path::upper, Firing::no_click);
  c.then(BeamSplitter{kPi / 2}).then(DetectorPair{});
  for (const auto& t : {exact_probabilities(c), class_probabilities(c), quantum_probabilities(c)}) {
    EXPECT_NEAR(t.selection_probability, 0.5, 1e-12);
    double total = 0;
    for (const auto& [h, p] : t.probability) {
      EXPECT_EQ(h.front(), D(Path::upper, Firing::no_click));
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(t.probability.at({D(Path::upper, Firing::no_click), M(Path::lower)}), 0.5, 1e-12);
  }
  const auto s = run_sample(c, 20000, 3);
  EXPECT_EQ(s.shots, 20000u);
  EXPECT_TRUE(within_band(double(s.accepted) / s.shots, 0.5, binomial_sigma(0.5, s.shots), 5));
  EXPECT_EQ(s.discarded(), s.shots - s.accepted);

  Circuit never{Path::upper, {}};
  never.then(Detector{Path::lower}).select(Path::lower, Firing::click);
  EXPECT_THROW(exact_probabilities(never), std::domain_error);
}

TEST(Select, MeasureSelection) {
  Circuit c{Path::upper, {}};
  c.then(BeamSplitter{1.1}).then(DetectorPair{}).select(Path::lower, Firing::click);
  const auto t = exact_probabilities(c);
  EXPECT_NEAR(t.selection_probability, std::pow(std::sin(0.55), 2), 1e-12);
  ASSERT_EQ(t.probability.size(), 1u);
  EXPECT_NEAR(oracle::max_difference(oracle::keyed(t), oracle::amplitude_probabilities(c).probability), 0, 1e-12);
}

TEST(Sample, DeterministicAndWorkerIndependent) {
  Engine rng(57);
  for (int k = 0; k < 5; ++k) {
    const Circuit c = random_circuit(rng);
    const auto a = run_sample(c, 5000, 99, 1);
    EXPECT_EQ(a, run_sample(c, 5000, 99, 1));
    EXPECT_EQ(a, run_sample(c, 5000, 99, 4));
    EXPECT_EQ(a, run_sample(c, 5000, 99, 3));
    std::uint64_t total = 0;
    for (const auto& [h, n] : a.counts) total += n;
    EXPECT_EQ(total, a.accepted);
  }
  EXPECT_THROW(run_sample(demo_circuit("mz"), 0, 1), std::invalid_argument);
}

TEST(Sample, MergeIsCommutative) {
  const Circuit c = demo_circuit("mz-detector");
  auto a = run_sample(c, 300, 1);
  auto b = run_sample(c, 700, 2);
  SampleCounts ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(ab.shots, 1000u);
}

TEST(Sample, BandIsCalibrated) {
  // With the 3σ band, roughly 0.3% of frequencies should fall outside.
  Engine rng(59);
  int outside = 0, checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const Circuit c = random_circuit(rng, {6, 1});
    const auto exact = exact_probabilities(c);
    const auto s = run_sample(c, 4000, 1000 + rep);
    for (const auto& [h, p] : exact.probability) {
      if (p < 1e-6 || p > 1 - 1e-6) continue;
      const auto it = s.counts.find(h);
      const double f = it == s.counts.end() ? 0.0 : double(it->second) / s.accepted;
      ++checked;
      if (!within_band(f, p, binomial_sigma(p, s.accepted), 3)) ++outside;
    }
  }
  ASSERT_GT(checked, 40);
  EXPECT_LT(double(outside) / checked, 0.02);
}

TEST(Compare, PassesOnRandomCircuits) {
  Engine rng(61);
  for (int k = 0; k < 20; ++k) {
    const Circuit c = random_circuit(rng);
    const RunReport r = compare(c, {.shots = 20000, .seed = 5});
    EXPECT_TRUE(r.pass) << r.failure << "\n" << serialize(c);
    EXPECT_EQ(r.shots, 20000u);
  }
}

TEST(Compare, DetectsAMutatedBackend) {
  // A class backend with the phase-shifter sign flipped must be caught.
  Circuit c{Path::upper, {}};
  c.then(BeamSplitter{kPi / 2}).then(PhaseShifter{Path::upper, kPi / 3}).then(BeamSplitter{0.8});
  c.then(PhaseShifter{Path::upper, kPi / 4}).then(BeamSplitter{kPi / 2}).then(DetectorPair{});
  Circuit flipped = c;
  std::get<PhaseShifter>(std::get<GateStep>(flipped.steps[3]).gate).omega = -kPi / 4;
  const auto exact = exact_probabilities(c);
  const RunReport bad = compare_tables(exact, class_probabilities(flipped), quantum_probabilities(c), std::nullopt, {});
  EXPECT_FALSE(bad.pass);
  EXPECT_NE(bad.failure.find("disagree"), std::string::npos);
  const RunReport good = compare_tables(exact, class_probabilities(c), quantum_probabilities(c), std::nullopt, {});
  EXPECT_TRUE(good.pass) << good.failure;
}

TEST(Compare, DetectsBiasedSampling) {
  const Circuit c = demo_circuit("mz-detector");
  SampleCounts s;
  s.shots = s.accepted = 10000;
  s.counts[{D(Path::upper, Firing::click), M(Path::upper)}] = 4000;
  s.counts[{D(Path::upper, Firing::click), M(Path::lower)}] = 2000;
  s.counts[{D(Path::upper, Firing::no_click), M(Path::upper)}] = 2000;
  s.counts[{D(Path::upper, Firing::no_click), M(Path::lower)}] = 2000;
  const RunReport r = compare_tables(exact_probabilities(c), class_probabilities(c), quantum_probabilities(c), s, {});
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.failure.find("Monte Carlo"), std::string::npos);
}

TEST(ClassTrace, StepsOfTheDetectorInterferometer) {
  const auto trace = class_trace(demo_circuit("mz-detector"));
  ASSERT_EQ(trace.size(), 5u);
  EXPECT_TRUE(approx_equal(trace[1].branches.at(0).second.second.vec(), Vec3{0, -1, 0}, 1e-12));
  ASSERT_EQ(trace[2].branches.size(), 2u);
  for (const auto& [h, pv] : trace[3].branches) {
    EXPECT_NEAR(pv.first, 0.5, 1e-12);
    EXPECT_NEAR(std::abs(pv.second.vec().y), 1.0, 1e-12);
  }
}

TEST(Backends, MixedInitialEnsemble) {
  Engine rng(67);
  for (int k = 0; k < 50; ++k) {
    const auto a = testing::random_class_member(rng);
    const auto b = testing::random_class_member(rng);
    Circuit c = random_circuit(rng);
    c.init = mix({{0.3, a}, {0.7, b}});
    const auto exact = oracle::keyed(exact_probabilities(c));
    EXPECT_LE(oracle::max_difference(exact, oracle::trajectory_probabilities(c).probability), 1e-9);
    EXPECT_LE(oracle::max_difference(exact, oracle::keyed(class_probabilities(c))), 1e-9) << serialize(Circuit{Path::upper, c.steps});
    EXPECT_LE(oracle::max_difference(exact, oracle::keyed(quantum_probabilities(c))), 1e-9);
  }
}

}  // namespace
}  // namespace ghostsim
