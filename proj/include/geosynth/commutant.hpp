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

// Orthonormal basis of the masked parameter directions whose generators
// commute with the logarithm of the target.  Restricting iterates to this
// subspace preserves the commutation property along the whole run.
struct CommutantBasis {
  int qubits = 0;
  std::vector<LieVector> basis;  // orthonormal; every vector mask-supported
  UnitaryMatrix target_log;      // Hermitian principal logarithm of the target
  bool empty() const { return basis.empty(); }
};

// Computes the null space of the map v -> [H(v), log(target)] over the
// masked coefficient space.  Directions with singular value below
// 1e-10 * sigma_max count as null.  Each returned vector b satisfies
// max|[H(b), log(target)]| <= 1e-8.  The basis may be empty.
CommutantBasis commutant_basis(const UnitaryMatrix& target, const RestrictionMask& mask);

// Orthogonal projection onto the span of the basis; the zero vector when
// the basis is empty.
LieVector project_to_commutant(const CommutantBasis& cb, const LieVector& v);

}  // namespace geosynth
