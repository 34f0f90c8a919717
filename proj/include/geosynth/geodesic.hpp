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

#include <functional>
#include <random>
#include <utility>

#include "geosynth/pauli.hpp"
#include "geosynth/run_types.hpp"

namespace geosynth {

// Minimum-norm least-squares solve for the masked parameter update that
// best reproduces, to first order, the straight path from U(v) to the
// target.  Returns the update (supported on the mask) and the Euclidean
// residual of the first-order system; the residual vanishes exactly when
// the path direction lies in the span of the allowed tangent directions.
std::pair<LieVector, double> geodesic_step_direction(const LieVector& v,
                                                     const UnitaryMatrix& target,
                                                     const RestrictionMask& mask);

// Maximizes a unimodal objective on [lo, hi] by golden-section bracketing;
// returns the midpoint of the final bracket.  Uses at most
// ceil(log((hi - lo) / tol) / log(1 / rho)) + 2 evaluations, rho the golden
// ratio conjugate.  Throws if the objective returns a non-finite value.
double golden_section_search(const std::function<double(double)>& objective, double lo,
                             double hi, double tol);

// Random masked direction orthogonal to the masked component of gamma_vec,
// scaled by eta: draws a full-length uniform(-1, 1) vector, restricts it,
// and removes its projection onto the gamma direction.  When the masked
// gamma component vanishes the restricted draw is returned unprojected.
LieVector gram_schmidt_escape(const LieVector& gamma_vec, const RestrictionMask& mask,
                              std::mt19937_64& rng, double eta);

// Full synthesis run: repeated least-squares steps along fidelity-maximizing
// geodesic arcs, with random orthogonal escapes whenever the line search
// fails to improve fidelity.  The target must be unitary with unit
// determinant; initial parameters are drawn uniformly on the mask.
RunResult run_geodesic(const UnitaryMatrix& target, const RestrictionMask& mask,
                       const GeodesicConfig& config);

// Same run from a caller-chosen starting point, which must be supported on
// the mask.
RunResult run_geodesic(const UnitaryMatrix& target, const RestrictionMask& mask,
                       const GeodesicConfig& config, const LieVector& initial);

}  // namespace geosynth
