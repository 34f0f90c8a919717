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

#include "geosynth/commutant.hpp"

#include <stdexcept>

#include "geosynth/manifold.hpp"

namespace geosynth {

namespace {

constexpr double kNullCutoff = 1e-10;      // relative to the largest singular value
constexpr double kResidualBound = 1e-8;    // guaranteed commutator norm per basis vector

UnitaryMatrix commutator_with(const UnitaryMatrix& log_v, std::int64_t index, int qubits) {
  const UnitaryMatrix g = pauli_apply_left(index, qubits, UnitaryMatrix::Identity(log_v.rows(), log_v.cols()));
  return g * log_v - log_v * g;
}

}  // namespace

CommutantBasis commutant_basis(const UnitaryMatrix& target, const RestrictionMask& mask) {
  CommutantBasis out;
  out.qubits = qubits_from_matrix_dim(target.rows());
  if (mask.qubits() != out.qubits)
    throw std::invalid_argument("commutant_basis: mask does not match target dimension");
  out.target_log = principal_log_unitary(target).gamma;

  const std::vector<std::int64_t>& indices = mask.allowed_indices();
  const Eigen::Index dim = target.rows();
  const Eigen::Index cols = static_cast<Eigen::Index>(indices.size());

  // Real stacking of the complex commutators, one masked direction per column.
  Eigen::MatrixXd stacked(2 * dim * dim, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const UnitaryMatrix comm = commutator_with(out.target_log, indices[c], out.qubits);
    const Eigen::Map<const Eigen::VectorXcd> flat(comm.data(), comm.size());
    stacked.col(c).head(dim * dim) = flat.real();
    stacked.col(c).tail(dim * dim) = flat.imag();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() == 0 ? 0.0 : kNullCutoff * sigma[0];
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > cutoff) ++rank;

  for (Eigen::Index c = rank; c < cols; ++c) {
    LieVector direction = LieVector::Zero(mask.size());
    for (Eigen::Index r = 0; r < cols; ++r) direction[indices[r] - 1] = svd.matrixV()(r, c);

    const UnitaryMatrix h = hermitian_from_vector(direction);
    const double residual = max_abs(h * out.target_log - out.target_log * h);
    if (residual > kResidualBound)
      throw std::runtime_error("commutant_basis: null direction fails the commutator bound");
    out.basis.push_back(std::move(direction));
  }
  return out;
}

LieVector project_to_commutant(const CommutantBasis& cb, const LieVector& v) {
  if (cb.basis.empty()) return LieVector::Zero(v.size());
  if (cb.basis.front().size() != v.size())
    throw std::invalid_argument("project_to_commutant: vector length mismatch");
  LieVector out = LieVector::Zero(v.size());
  for (const LieVector& b : cb.basis) out += b.dot(v) * b;
  return out;
}

}  // namespace geosynth
