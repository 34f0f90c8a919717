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

#include <vector>

#include "geosynth/pauli.hpp"

namespace geosynth {

// Hermitian generator of the straight path from one unitary to another:
// exp(i * gamma) reconstructs the relative rotation that produced it.
struct GeodesicDirection {
  UnitaryMatrix gamma;    // full Hermitian generator, including any trace part
  LieVector gamma_vec;    // coefficients of the traceless part
  double trace_part = 0;  // Tr(gamma) / N, a global phase rate
  // Set when some eigenvalue of the source unitary lies within 1e-9 of -1,
  // where the principal branch is discontinuous.
  bool near_branch_cut = false;
};

// Derivatives of the exponential map at a parameter point: the columns of
// d exp / d theta_j, pulled back by U(theta)^-1.
struct EffectiveGeneratorSet {
  std::vector<std::int64_t> indices;   // allowed 1-based basis indices, ascending
  std::vector<UnitaryMatrix> omegas;   // anti-Hermitian; dU/dtheta_j = U * omega_j
  LieVector base_point;
};

// exp(i * h) for Hermitian h, via the eigendecomposition.
UnitaryMatrix exp_i_hermitian(const UnitaryMatrix& h);

// U(v) = exp(i * sum_j v_j G_j).
UnitaryMatrix unitary_from_params(const LieVector& v);

// Principal-branch Hermitian logarithm: w = exp(i * gamma) with every
// eigenphase in (-pi, pi].  Requires w unitary to 1e-10.
GeodesicDirection principal_log_unitary(const UnitaryMatrix& w);

// Point along the geodesic: u * exp(i * gamma * t).
UnitaryMatrix geodesic_point(const UnitaryMatrix& u, const GeodesicDirection& direction,
                             double t);

// Re Tr(u^dag v) / N.  Equals 1 exactly when u == v.
double fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v);

// |Tr(u^dag v)| / N, insensitive to a global phase on either argument.
double fidelity_phase_invariant(const UnitaryMatrix& u, const UnitaryMatrix& v);

// Rescales a unitary by the principal N-th root of its determinant so the
// result has unit determinant.
UnitaryMatrix su_project_target(const UnitaryMatrix& v);

// Generators of the parameter-space directions allowed by the mask,
// evaluated at base point v.
EffectiveGeneratorSet effective_generators(const LieVector& v, const RestrictionMask& mask);

}  // namespace geosynth
