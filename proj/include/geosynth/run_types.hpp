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

#include <cstdint>
#include <variant>
#include <vector>

#include "geosynth/linalg.hpp"

namespace geosynth {

struct GeodesicConfig {
  double epsilon = 1e-3;        // convergence threshold on infidelity
  double eta = 1.0;             // escape step scale
  int max_steps = 5000;
  double delta_max = 10.0;      // line-search interval upper end
  double ls_tol = 1e-6;         // line-search interval width at termination
  bool use_ansatz = true;       // restrict iterates to the symmetry subspace
  double init_scale = 1.0;      // initial parameters uniform in [-scale, scale]
  bool phase_invariant = false; // score fidelity up to a global phase
  std::uint64_t seed = 0;

  void validate() const;
};

struct GdConfig {
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double epsilon = 1e-3;
  int max_steps = 50000;
  bool phase_invariant = false;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SgdConfig {
  int d_train = 200;      // fresh sample states per step
  int d_test = 100;       // fixed validation states
  double lambda0 = 1.0;   // initial learning rate
  double kappa = 0.005;   // learning-rate decay
  double epsilon = 1e-3;  // threshold on validation infidelity
  int max_steps = 50000;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class StepKind { LeastSquares, Escape, Gradient };

struct StepRecord {
  int step = 0;                // 1-based position in the run
  double fidelity_before = 0;  // for sgd these hold validation fidelities
  double fidelity_after = 0;
  StepKind kind = StepKind::LeastSquares;
  double step_size = 0;        // Euclidean length of the parameter update
  double residual = 0;         // least-squares residual; zero for other kinds
  bool near_branch_cut = false;
};

struct RunResult {
  LieVector final_params;
  double final_infidelity = 1.0;
  int steps = 0;
  bool converged = false;  // holds exactly when final_infidelity < epsilon
  std::vector<StepRecord> trajectory;
  std::uint64_t seed = 0;
  // True when a non-empty symmetry subspace constrained the run.
  bool ansatz_effective = false;
  std::variant<GeodesicConfig, GdConfig, SgdConfig> config;
};

}  // namespace geosynth
