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

#include "geosynth/geodesic.hpp"

#include <cmath>
#include <stdexcept>

#include "geosynth/commutant.hpp"
#include "geosynth/manifold.hpp"

namespace geosynth {

namespace {

constexpr double kSvCutoff = 1e-12;   // relative rank cutoff in the least-squares solve
constexpr double kDetTol = 1e-8;      // accepted deviation of |det(target) - 1|

void require_in_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie strictly between 0 and 1");
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

void require_synthesis_target(const UnitaryMatrix& target) {
  if (!is_unitary(target, 1e-10))
    throw std::invalid_argument("target deviates from unitary beyond tolerance");
  if (std::abs(target.determinant() - Complex(1, 0)) > kDetTol)
    throw std::invalid_argument("target determinant must be 1; rescale it first");
}

// Masked update x minimizing |A x - gamma_vec| in the Euclidean norm, where
// column j of A holds the coefficients of -i * omega_j; minimum-norm among
// minimizers via a thresholded SVD.
std::pair<LieVector, double> solve_direction(const GeodesicDirection& log_dir,
                                             const EffectiveGeneratorSet& gens) {
  const Eigen::Index rows = log_dir.gamma_vec.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(gens.omegas.size());
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    a.col(c) = vector_from_hermitian(Complex(0, -1) * gens.omegas[c]);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kSvCutoff);
  const Eigen::VectorXd x = svd.solve(log_dir.gamma_vec);
  const double residual = (a * x - log_dir.gamma_vec).norm();

  LieVector direction = LieVector::Zero(rows);
  for (Eigen::Index c = 0; c < cols; ++c) direction[gens.indices[c] - 1] = x[c];
  return {direction, residual};
}

RunResult run_geodesic_impl(const UnitaryMatrix& target, const RestrictionMask& mask,
                            const GeodesicConfig& config, LieVector phi,
                            std::mt19937_64& rng) {
  double (*fid)(const UnitaryMatrix&, const UnitaryMatrix&) =
      config.phase_invariant ? fidelity_phase_invariant : fidelity;

  CommutantBasis cb;
  bool project_updates = false;
  if (config.use_ansatz) {
    cb = commutant_basis(target, mask);
    if (!cb.empty()) {
      project_updates = true;
      phi = project_to_commutant(cb, phi);
    }
  }

  RunResult result;
  result.seed = config.seed;
  result.config = config;
  result.ansatz_effective = project_updates;

  UnitaryMatrix u = unitary_from_params(phi);
  double f_cur = fid(u, target);

  while (1.0 - f_cur >= config.epsilon && result.steps < config.max_steps) {
    const GeodesicDirection log_dir = principal_log_unitary(u.adjoint() * target);
    const EffectiveGeneratorSet gens = effective_generators(phi, mask);
    auto [direction, residual] = solve_direction(log_dir, gens);
    if (project_updates) direction = project_to_commutant(cb, direction);

    StepRecord rec;
    rec.step = result.steps + 1;
    rec.fidelity_before = f_cur;
    rec.residual = residual;
    rec.near_branch_cut = log_dir.near_branch_cut;

    // Fidelity-maximizing arc length along the update direction; a step is
    // accepted only when it strictly improves fidelity.
    bool escaped = true;
    const double dir_norm = direction.norm();
    if (dir_norm > 0.0) {
      const LieVector unit = direction / dir_norm;
      const auto objective = [&](double delta) {
        return fid(unitary_from_params(phi + delta * unit), target);
      };
      const double best = golden_section_search(objective, 0.0, config.delta_max, config.ls_tol);
      const double f_best = objective(best);
      if (f_best > f_cur) {
        phi += best * unit;
        rec.kind = StepKind::LeastSquares;
        rec.step_size = best;
        escaped = false;
      }
    }
    if (escaped) {
      // A vanishing gamma leaves no orthogonal complement to escape into;
      // the run is stuck (or has hit a pure-phase stationary point).
      if (log_dir.gamma_vec.norm() == 0.0) break;
      LieVector esc = gram_schmidt_escape(log_dir.gamma_vec, mask, rng, config.eta);
      if (project_updates) esc = project_to_commutant(cb, esc);
      phi += esc;
      rec.kind = StepKind::Escape;
      rec.step_size = esc.norm();
    }

    u = unitary_from_params(phi);
    f_cur = fid(u, target);
    rec.fidelity_after = f_cur;
    result.trajectory.push_back(rec);
    ++result.steps;
  }

  result.final_params = std::move(phi);
  result.final_infidelity = 1.0 - f_cur;
  result.converged = result.final_infidelity < config.epsilon;
  return result;
}

}  // namespace

void GeodesicConfig::validate() const {
  require_in_unit_interval(epsilon, "epsilon");
  require_positive(eta, "eta");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  require_positive(delta_max, "delta_max");
  require_positive(ls_tol, "ls_tol");
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init_scale must be non-negative");
}

std::pair<LieVector, double> geodesic_step_direction(const LieVector& v,
                                                     const UnitaryMatrix& target,
                                                     const RestrictionMask& mask) {
  if ((apply_restriction(mask, v) - v).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("geodesic_step_direction: v must be supported on the mask");
  const UnitaryMatrix u = unitary_from_params(v);
  if (u.rows() != target.rows() || target.rows() != target.cols())
    throw std::invalid_argument("geodesic_step_direction: dimension mismatch");
  const GeodesicDirection log_dir = principal_log_unitary(u.adjoint() * target);
  return solve_direction(log_dir, effective_generators(v, mask));
}

double golden_section_search(const std::function<double(double)>& objective, double lo,
                             double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("line search needs lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("line search needs tol > 0");
  const auto eval = [&objective](double t) {
    const double value = objective(t);
    if (!std::isfinite(value))
      throw std::runtime_error("line-search objective returned a non-finite value");
    return value;
  };
  const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - rho * (b - a);
  double x2 = a + rho * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - rho * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + rho * (b - a);
      f2 = eval(x2);
    }
  }
  return 0.5 * (a + b);
}

LieVector gram_schmidt_escape(const LieVector& gamma_vec, const RestrictionMask& mask,
                              std::mt19937_64& rng, double eta) {
  if (gamma_vec.size() != mask.size())
    throw std::invalid_argument("gram_schmidt_escape: vector length does not match mask");
  if (gamma_vec.norm() == 0.0)
    throw std::invalid_argument("gram_schmidt_escape: undefined for a zero gamma");
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  LieVector random_full(mask.size());
  for (Eigen::Index k = 0; k < random_full.size(); ++k) random_full[k] = uniform(rng);

  // Projecting out the masked component of gamma keeps the output both
  // supported on the mask and orthogonal to the full gamma vector.
  LieVector draw = apply_restriction(mask, random_full);
  LieVector gamma_masked = apply_restriction(mask, gamma_vec);
  const double norm = gamma_masked.norm();
  if (norm > 0.0) {
    gamma_masked /= norm;
    draw -= gamma_masked.dot(draw) * gamma_masked;
  }
  return eta * draw;
}

RunResult run_geodesic(const UnitaryMatrix& target, const RestrictionMask& mask,
                       const GeodesicConfig& config) {
  config.validate();
  require_synthesis_target(target);
  if (mask.qubits() != qubits_from_matrix_dim(target.rows()))
    throw std::invalid_argument("run_geodesic: mask does not match target dimension");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(-config.init_scale, config.init_scale);
  LieVector phi(mask.size());
  for (Eigen::Index k = 0; k < phi.size(); ++k) phi[k] = uniform(rng);
  return run_geodesic_impl(target, mask, config, apply_restriction(mask, phi), rng);
}

RunResult run_geodesic(const UnitaryMatrix& target, const RestrictionMask& mask,
                       const GeodesicConfig& config, const LieVector& initial) {
  config.validate();
  require_synthesis_target(target);
  if (mask.qubits() != qubits_from_matrix_dim(target.rows()))
    throw std::invalid_argument("run_geodesic: mask does not match target dimension");
  if (initial.size() != mask.size())
    throw std::invalid_argument("run_geodesic: initial parameter length does not match mask");
  if ((apply_restriction(mask, initial) - initial).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("run_geodesic: initial parameters must be supported on the mask");

  std::mt19937_64 rng(config.seed);
  return run_geodesic_impl(target, mask, config, initial, rng);
}

}  // namespace geosynth
