// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghostsim/ontic.hpp"

#include <gtest/gtest.h>

#include "ghostsim/classes.hpp"
#include "test_support.hpp"

namespace ghostsim {
namespace {

const UnitVec3 kZ = UnitVec3::plus_z();

OnticState State(Path p, UnitVec3 v, Companion c) { return {p, v, c}; }

void ExpectCanonical(const WeightedStates& p) {
  double total = 0.0;
  for (const auto& e : p) {
    EXPECT_GT(e.weight, 0.0);
    total += e.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      EXPECT_FALSE(states_equal(p.entries()[a].state, p.entries()[b].state));
    }
  }
}

TEST(Ontic, InitialStates) {
  for (Path i : {Path::upper, Path::lower}) {
    const auto p = initial_state(i);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_DOUBLE_EQ(p.entries()[0].weight, 1.0);
    EXPECT_EQ(p.entries()[0].state.path, i);
    EXPECT_EQ(p.entries()[0].state.real_vec, kZ);
    EXPECT_TRUE(p.entries()[0].state.companion.is_empty());
  }
  const auto id = identify_class(initial_state(Path::upper));
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(is_north(id->label.n));
}

TEST(Ontic, StatesEqual) {
  EXPECT_TRUE(states_equal(State(Path::upper, kZ, Companion::ghost(0.0)),
                           State(Path::upper, kZ, Companion::ghost(kTwoPi - 1e-12))));
  EXPECT_FALSE(states_equal(State(Path::upper, kZ, Companion::ghost(0.0)), State(Path::upper, kZ, Companion::empty())));
  EXPECT_FALSE(states_equal(State(Path::upper, kZ, Companion::empty()), State(Path::lower, kZ, Companion::empty())));
  EXPECT_TRUE(states_equal(State(Path::lower, kZ, Companion::empty()), State(Path::lower, kZ, Companion::empty())));
  EXPECT_FALSE(states_equal(State(Path::lower, kZ, Companion::empty()), State(Path::lower, -kZ, Companion::empty())));
}

TEST(Ontic, GhostPhaseIsNormalized) {
  EXPECT_NEAR(Companion::ghost(-kPi / 2).phase(), 3 * kPi / 2, 1e-15);
  EXPECT_NEAR(Companion::ghost(5 * kPi).phase(), kPi, 1e-12);
}

TEST(Ontic, MixExamples) {
  const auto p0 = initial_state(Path::upper);
  const auto p1 = initial_state(Path::lower);
  EXPECT_EQ(mix({{1.0, p0}}), p0);
  const auto half = mix({{0.5, p0}, {0.5, p1}});
  ASSERT_EQ(half.size(), 2u);
  EXPECT_DOUBLE_EQ(half.entries()[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(half.entries()[1].weight, 0.5);
  EXPECT_TRUE(approx_equal(mix({{0.5, p0}, {0.5, p0}}), p0));
  EXPECT_TRUE(approx_equal(mix({{0.0, p1}, {1.0, p0}}), p0));
}

TEST(Ontic, MixRejectsBadProbabilities) {
  const auto p0 = initial_state(Path::upper);
  EXPECT_THROW(mix({{0.5, p0}, {0.4, p0}}), std::invalid_argument);
  EXPECT_THROW(mix({{1.5, p0}, {-0.5, p0}}), std::invalid_argument);
}

TEST(Ontic, ConstructorMergesAndRenormalizes) {
  const WeightedStates p({{0.25, State(Path::upper, kZ, Companion::ghost(0.1))},
                          {0.25, State(Path::upper, kZ, Companion::ghost(0.1 + 1e-12))},
                          {0.5, State(Path::lower, kZ, Companion::empty())},
                          {0.0, State(Path::lower, -kZ, Companion::empty())}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p.entries()[0].weight, 0.5);
  ExpectCanonical(p);
}

TEST(Ontic, MixIsCommutativeAndAssociative) {
  testing::Engine rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto a = testing::random_class_member(rng);
    const auto b = testing::random_class_member(rng);
    const auto c = testing::random_class_member(rng);
    const double u = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const double v = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto ab = mix({{u, a}, {1 - u, b}});
    ExpectCanonical(ab);
    EXPECT_TRUE(approx_equal(ab, mix({{1 - u, b}, {u, a}})));
    // (u a + (1-u) b) v + (1-v) c  ==  u v a + ((1-u) v) b + (1-v) c
    const auto left = mix({{v, ab}, {1 - v, c}});
    const auto flat = mix({{u * v, a}, {(1 - u) * v, b}, {1 - v, c}});
    EXPECT_TRUE(approx_equal(left, flat)) << testing::describe(left) << " vs " << testing::describe(flat);
  }
}

}  // namespace
}  // namespace ghostsim
