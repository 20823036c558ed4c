// Copyright 2026 The ectx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>

#include "ectx/entropy.hpp"
#include "ectx/joint.hpp"

namespace ectx {

// A feasible witness must reproduce the target marginals this closely.
inline constexpr double kMarginalMatchTol = 1e-7;

struct FeasibilityVerdict {
  bool feasible = false;
  // Present iff feasible: a joint distribution whose pair marginals match
  // the targets within kMarginalMatchTol.
  std::optional<JointDistribution5> witness;
  // Max constraint violation of the best point found. ~1e-15 when feasible;
  // the certified infeasibility gap otherwise.
  double residual = 0.0;
};

// Decides whether a global joint distribution over (X_1..X_5) exists whose
// five cyclically adjacent pair marginals equal `targets` (targets[k] is the
// pair (X_{k+1}, X_{k+2 mod 5}); the forbidden (+1,+1) cells are constrained
// to zero). Linear feasibility over the 32 atoms, solved by a dense phase-1
// simplex with Bland's rule; the phase-1 optimum certifies infeasibility.
// Throws MalformedTargetsError if a target violates the PairDistribution
// invariants or sits at the wrong position.
FeasibilityVerdict check_joint_extension(const std::array<PairDistribution, 5>& targets);

}  // namespace ectx
