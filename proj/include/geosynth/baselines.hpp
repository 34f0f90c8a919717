// Copyright 2026 The geosynth authors
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

#include <random>

#include "geosynth/pauli.hpp"
#include "geosynth/run_types.hpp"

namespace geosynth {

// Unit-norm state columns, dimension x count.
using StateBatch = Eigen::MatrixXcd;

// Exact gradient of 1 - Re Tr(U(v)^dag target) / N with respect to the
// masked parameters; zero outside the mask.  With phase_invariant the
// objective is 1 - |Tr(U(v)^dag target)| / N instead.
LieVector infidelity_gradient(const LieVector& v, const UnitaryMatrix& target,
                              const RestrictionMask& mask, bool phase_invariant = false);

// Adam (bias-corrected decaying moment averages) on the infidelity.
RunResult run_gd(const UnitaryMatrix& target, const RestrictionMask& mask,
                 const GdConfig& config);

// Haar-distributed pure states, drawn as normalized complex Gaussians.
StateBatch haar_states(int count, std::int64_t dim, std::mt19937_64& rng);

// 1 - (1/d) sum_i |<psi_i| U(v)^dag target |psi_i>|^2 over the batch.
// Insensitive to a global phase of either unitary by construction.
double state_infidelity_batch(const LieVector& v, const UnitaryMatrix& target,
                              const StateBatch& batch);

// Decayed learning rate lambda0 / (1 + kappa * step) for 0-based step.
double sgd_learning_rate(double lambda0, double kappa, int step);

// Stochastic gradient descent on the state-averaged infidelity: each step
// draws a fresh training batch of d_train Haar states, takes a plain
// gradient step with the decayed rate, and stops when the infidelity over
// a validation batch of d_test states (drawn once at the start) falls
// below epsilon.
RunResult run_sgd(const UnitaryMatrix& target, const RestrictionMask& mask,
                  const SgdConfig& config);

}  // namespace geosynth
