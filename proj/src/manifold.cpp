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

#include "geosynth/manifold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geosynth {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kBranchCutTol = 1e-9;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void require_square_unitary(const UnitaryMatrix& u, const char* who) {
  if (u.rows() != u.cols() || u.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (!is_unitary(u, kUnitaryTol))
    throw std::invalid_argument(std::string(who) + ": matrix deviates from unitary beyond tolerance");
}

}  // namespace

UnitaryMatrix exp_i_hermitian(const UnitaryMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("exp_i_hermitian: matrix must be square");
  if (!is_hermitian(h, kUnitaryTol))
    throw std::invalid_argument("exp_i_hermitian: matrix deviates from Hermitian beyond tolerance");
  Eigen::SelfAdjointEigenSolver<UnitaryMatrix> es(h);
  const Eigen::VectorXcd phases =
      (Complex(0, 1) * es.eigenvalues().cast<Complex>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryMatrix unitary_from_params(const LieVector& v) {
  return exp_i_hermitian(hermitian_from_vector(v));
}

GeodesicDirection principal_log_unitary(const UnitaryMatrix& w) {
  require_square_unitary(w, "principal_log_unitary");
  qubits_from_matrix_dim(w.rows());  // coefficient extraction needs a 2^n dimension
  const double dim = static_cast<double>(w.rows());

  // A unitary is normal, so the Schur form is diagonal and the Schur basis
  // is an eigenbasis; the diagonal holds the unit-modulus eigenvalues.
  Eigen::ComplexSchur<UnitaryMatrix> schur(w, true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("principal_log_unitary: Schur decomposition failed");
  const UnitaryMatrix& q = schur.matrixU();

  GeodesicDirection out;
  Eigen::VectorXd phases(w.rows());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const Complex eig = schur.matrixT()(i, i);
    if (std::abs(eig + Complex(1, 0)) <= kBranchCutTol) out.near_branch_cut = true;
    double phase = std::arg(eig);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;  // keep (-pi, pi]
    phases[i] = phase;
  }

  UnitaryMatrix gamma = q * phases.cast<Complex>().asDiagonal() * q.adjoint();
  out.gamma = 0.5 * (gamma + gamma.adjoint());
  out.trace_part = phases.sum() / dim;
  UnitaryMatrix traceless = out.gamma;
  traceless.diagonal().array() -= Complex(out.trace_part, 0);
  out.gamma_vec = vector_from_hermitian(traceless);
  return out;
}

UnitaryMatrix geodesic_point(const UnitaryMatrix& u, const GeodesicDirection& direction,
                             double t) {
  if (u.rows() != direction.gamma.rows() || u.cols() != direction.gamma.cols())
    throw std::invalid_argument("geodesic_point: dimension mismatch");
  return u * exp_i_hermitian(direction.gamma * t);
}

double fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex overlap = u.conjugate().cwiseProduct(v).sum();
  return overlap.real() / static_cast<double>(u.rows());
}

double fidelity_phase_invariant(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex overlap = u.conjugate().cwiseProduct(v).sum();
  return std::abs(overlap) / static_cast<double>(u.rows());
}

UnitaryMatrix su_project_target(const UnitaryMatrix& v) {
  require_square_unitary(v, "su_project_target");
  const Complex det = v.determinant();
  const double dim = static_cast<double>(v.rows());
  const Complex root =
      std::pow(std::abs(det), 1.0 / dim) * std::exp(Complex(0, std::arg(det) / dim));
  return v / root;
}

EffectiveGeneratorSet effective_generators(const LieVector& v, const RestrictionMask& mask) {
  const int n = qubits_from_vector_length(v.size());
  if (mask.qubits() != n)
    throw std::invalid_argument("effective_generators: mask does not match vector length");

  Eigen::SelfAdjointEigenSolver<UnitaryMatrix> es(hermitian_from_vector(v));
  const UnitaryMatrix& q = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::Index dim = lam.size();

  // First divided difference of exp(i .) between eigenvalue pairs, pulled
  // back by U^-1.  The closed form below is smooth through coinciding
  // eigenvalues and exactly anti-Hermitian under K(a,b) = -conj(K(b,a)).
  UnitaryMatrix k(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double half = 0.5 * (lam[a] - lam[b]);
      k(a, b) = Complex(0, 1) * std::exp(Complex(0, -half)) * sinc(half);
    }

  EffectiveGeneratorSet out;
  out.base_point = v;
  out.indices = mask.allowed_indices();
  out.omegas.reserve(out.indices.size());
  for (std::int64_t index : out.indices) {
    const UnitaryMatrix g_tilde = q.adjoint() * pauli_apply_left(index, n, q);
    out.omegas.push_back(q * k.cwiseProduct(g_tilde) * q.adjoint());
  }
  return out;
}

}  // namespace geosynth
