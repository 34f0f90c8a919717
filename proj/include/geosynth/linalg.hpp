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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace geosynth {

using Complex = std::complex<double>;

// Dense complex matrices carry both unitaries and Hermitian generators;
// validity (unitarity, hermiticity) is checked by the operations that
// require it rather than encoded in the type.
using UnitaryMatrix = Eigen::MatrixXcd;

// Real coefficient vector over the traceless Hermitian basis.  The entry
// for basis word with 1-based index j is stored at coeffs[j - 1].
using LieVector = Eigen::VectorXd;

inline UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  UnitaryMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const UnitaryMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const UnitaryMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  UnitaryMatrix defect = u.adjoint() * u;
  defect.diagonal().array() -= 1.0;
  return max_abs(defect) <= tol;
}

inline bool is_hermitian(const UnitaryMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

}  // namespace geosynth
