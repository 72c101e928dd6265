// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_GHOSTSIM_HPP_
#define GHOSTSIM_GHOSTSIM_HPP_

#include "ghostsim/circuit.hpp"
#include "ghostsim/classes.hpp"
#include "ghostsim/gates.hpp"
#include "ghostsim/geometry.hpp"
#include "ghostsim/harness.hpp"
#include "ghostsim/ontic.hpp"
#include "ghostsim/quantum.hpp"
#include "ghostsim/rng.hpp"

#endif  // GHOSTSIM_GHOSTSIM_HPP_
