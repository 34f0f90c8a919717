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

#include "geosynth/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "geosynth/manifold.hpp"

namespace geosynth {

namespace {

constexpr double kStateNormTol = 1e-12;

void require_in_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie strictly between 0 and 1");
}

void require_synthesis_target(const UnitaryMatrix& target) {
  if (!is_unitary(target, 1e-10))
    throw std::invalid_argument("target deviates from unitary beyond tolerance");
  if (std::abs(target.determinant() - Complex(1, 0)) > 1e-8)
    throw std::invalid_argument("target determinant must be 1; rescale it first");
}

Complex frobenius(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum();  // Tr(a^dag b)
}

LieVector masked_uniform_start(const RestrictionMask& mask, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  LieVector phi(mask.size());
  for (Eigen::Index k = 0; k < phi.size(); ++k) phi[k] = uniform(rng);
  return apply_restriction(mask, phi);
}

// Mean state infidelity against a precomputed relative rotation w = U^dag V.
double batch_infidelity(const UnitaryMatrix& w, const StateBatch& batch) {
  const UnitaryMatrix moved = w * batch;
  double sum = 0;
  for (Eigen::Index c = 0; c < batch.cols(); ++c)
    sum += std::norm(batch.col(c).dot(moved.col(c)));
  return 1.0 - sum / static_cast<double>(batch.cols());
}

}  // namespace

void GdConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw std::invalid_argument("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw std::invalid_argument("beta2 must lie in [0, 1)");
  if (!(adam_eps > 0.0)) throw std::invalid_argument("adam_eps must be positive");
  require_in_unit_interval(epsilon, "epsilon");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

void SgdConfig::validate() const {
  if (d_train < 1) throw std::invalid_argument("d_train must be at least 1");
  if (d_test < 1) throw std::invalid_argument("d_test must be at least 1");
  if (!(lambda0 > 0.0)) throw std::invalid_argument("lambda0 must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be non-negative");
  require_in_unit_interval(epsilon, "epsilon");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

LieVector infidelity_gradient(const LieVector& v, const UnitaryMatrix& target,
                              const RestrictionMask& mask, bool phase_invariant) {
  if ((apply_restriction(mask, v) - v).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("infidelity_gradient: v must be supported on the mask");
  const EffectiveGeneratorSet gens = effective_generators(v, mask);
  const UnitaryMatrix u = unitary_from_params(v);
  if (u.rows() != target.rows() || target.rows() != target.cols())
    throw std::invalid_argument("infidelity_gradient: dimension mismatch");
  const UnitaryMatrix w = u.adjoint() * target;
  const double dim = static_cast<double>(w.rows());

  LieVector grad = LieVector::Zero(mask.size());
  if (!phase_invariant) {
    for (std::size_t c = 0; c < gens.omegas.size(); ++c)
      grad[gens.indices[c] - 1] = -frobenius(gens.omegas[c], w).real() / dim;
    return grad;
  }
  const Complex overlap = w.trace() / dim;
  const double magnitude = std::abs(overlap);
  if (magnitude == 0.0) return grad;  // objective is not differentiable; take no direction
  for (std::size_t c = 0; c < gens.omegas.size(); ++c) {
    const Complex d_overlap = frobenius(gens.omegas[c], w) / dim;
    grad[gens.indices[c] - 1] = -(std::conj(overlap) * d_overlap).real() / magnitude;
  }
  return grad;
}

RunResult run_gd(const UnitaryMatrix& target, const RestrictionMask& mask,
                 const GdConfig& config) {
  config.validate();
  require_synthesis_target(target);
  if (mask.qubits() != qubits_from_matrix_dim(target.rows()))
    throw std::invalid_argument("run_gd: mask does not match target dimension");

  double (*fid)(const UnitaryMatrix&, const UnitaryMatrix&) =
      config.phase_invariant ? fidelity_phase_invariant : fidelity;

  std::mt19937_64 rng(config.seed);
  LieVector phi = masked_uniform_start(mask, rng);

  RunResult result;
  result.seed = config.seed;
  result.config = config;

  LieVector moment1 = LieVector::Zero(mask.size());
  LieVector moment2 = LieVector::Zero(mask.size());
  double f_cur = fid(unitary_from_params(phi), target);

  while (1.0 - f_cur >= config.epsilon && result.steps < config.max_steps) {
    const LieVector grad = infidelity_gradient(phi, target, mask, config.phase_invariant);
    const int t = result.steps + 1;
    moment1 = config.beta1 * moment1 + (1.0 - config.beta1) * grad;
    moment2 = config.beta2 * moment2 + (1.0 - config.beta2) * grad.cwiseProduct(grad);
    const Eigen::ArrayXd hat1 = moment1.array() / (1.0 - std::pow(config.beta1, t));
    const Eigen::ArrayXd hat2 = moment2.array() / (1.0 - std::pow(config.beta2, t));
    const LieVector delta =
        (-config.learning_rate * hat1 / (hat2.sqrt() + config.adam_eps)).matrix();
    phi += delta;

    const double f_new = fid(unitary_from_params(phi), target);
    StepRecord rec;
    rec.step = t;
    rec.fidelity_before = f_cur;
    rec.fidelity_after = f_new;
    rec.kind = StepKind::Gradient;
    rec.step_size = delta.norm();
    result.trajectory.push_back(rec);
    f_cur = f_new;
    ++result.steps;
  }

  result.final_params = std::move(phi);
  result.final_infidelity = 1.0 - f_cur;
  result.converged = result.final_infidelity < config.epsilon;
  return result;
}

StateBatch haar_states(int count, std::int64_t dim, std::mt19937_64& rng) {
  if (count < 1) throw std::invalid_argument("haar_states: count must be at least 1");
  if (dim < 1) throw std::invalid_argument("haar_states: dimension must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  StateBatch batch(dim, count);
  for (int c = 0; c < count; ++c) {
    for (std::int64_t r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      batch(r, c) = Complex(re, im);
    }
    batch.col(c).normalize();
  }
  return batch;
}

double state_infidelity_batch(const LieVector& v, const UnitaryMatrix& target,
                              const StateBatch& batch) {
  const UnitaryMatrix u = unitary_from_params(v);
  if (u.rows() != target.rows() || target.rows() != target.cols())
    throw std::invalid_argument("state_infidelity_batch: dimension mismatch");
  if (batch.rows() != target.rows() || batch.cols() < 1)
    throw std::invalid_argument("state_infidelity_batch: bad batch shape");
  for (Eigen::Index c = 0; c < batch.cols(); ++c)
    if (std::abs(batch.col(c).norm() - 1.0) > kStateNormTol)
      throw std::invalid_argument("state_infidelity_batch: states must have unit norm");
  return batch_infidelity(u.adjoint() * target, batch);
}

double sgd_learning_rate(double lambda0, double kappa, int step) {
  if (step < 0) throw std::invalid_argument("sgd_learning_rate: step must be non-negative");
  return lambda0 / (1.0 + kappa * static_cast<double>(step));
}

RunResult run_sgd(const UnitaryMatrix& target, const RestrictionMask& mask,
                  const SgdConfig& config) {
  config.validate();
  require_synthesis_target(target);
  if (mask.qubits() != qubits_from_matrix_dim(target.rows()))
    throw std::invalid_argument("run_sgd: mask does not match target dimension");

  std::mt19937_64 rng(config.seed);
  LieVector phi = masked_uniform_start(mask, rng);
  const StateBatch validation = haar_states(config.d_test, target.rows(), rng);

  RunResult result;
  result.seed = config.seed;
  result.config = config;

  UnitaryMatrix u = unitary_from_params(phi);
  double val_infid = batch_infidelity(u.adjoint() * target, validation);

  while (val_infid >= config.epsilon && result.steps < config.max_steps) {
    const EffectiveGeneratorSet gens = effective_generators(phi, mask);
    const UnitaryMatrix w = u.adjoint() * target;
    const StateBatch train = haar_states(config.d_train, target.rows(), rng);

    // Gradient of the batch infidelity: overlaps a_i = <psi_i| w |psi_i>
    // weight the state projectors.
    const UnitaryMatrix moved = w * train;
    Eigen::VectorXcd overlaps(train.cols());
    for (Eigen::Index c = 0; c < train.cols(); ++c)
      overlaps[c] = train.col(c).dot(moved.col(c));
    const UnitaryMatrix weighted =
        w * (train * overlaps.conjugate().asDiagonal() * train.adjoint());

    LieVector grad = LieVector::Zero(mask.size());
    const double scale = -2.0 / static_cast<double>(config.d_train);
    for (std::size_t c = 0; c < gens.omegas.size(); ++c)
      grad[gens.indices[c] - 1] = scale * frobenius(gens.omegas[c], weighted).real();

    const double rate = sgd_learning_rate(config.lambda0, config.kappa, result.steps);
    phi -= rate * grad;

    u = unitary_from_params(phi);
    const double new_infid = batch_infidelity(u.adjoint() * target, validation);
    StepRecord rec;
    rec.step = result.steps + 1;
    rec.fidelity_before = 1.0 - val_infid;
    rec.fidelity_after = 1.0 - new_infid;
    rec.kind = StepKind::Gradient;
    rec.step_size = rate * grad.norm();
    result.trajectory.push_back(rec);
    val_infid = new_infid;
    ++result.steps;
  }

  result.final_params = std::move(phi);
  result.final_infidelity = val_infid;
  result.converged = val_infid < config.epsilon;
  return result;
}

}  // namespace geosynth
