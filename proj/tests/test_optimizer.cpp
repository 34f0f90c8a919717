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
#include <random>

#include <doctest.h>

#include "geosynth/gates.hpp"
#include "geosynth/manifold.hpp"
#include "test_helpers.hpp"

namespace {

using geosynth::GeodesicConfig;
using geosynth::LieVector;
using geosynth::PauliWord;
using geosynth::RestrictionMask;
using geosynth::RunResult;
using geosynth::StepKind;
using geosynth::UnitaryMatrix;

constexpr double kPi = 3.14159265358979323846;

LieVector random_params(std::int64_t length, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-scale, scale);
  LieVector v(length);
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = uniform(rng);
  return v;
}

// Dense reference for the first-order system: column j holds the basis
// coefficients of -i * omega_j.
Eigen::MatrixXd tangent_matrix(const LieVector& v, const RestrictionMask& mask) {
  const geosynth::EffectiveGeneratorSet gens = geosynth::effective_generators(v, mask);
  Eigen::MatrixXd a(v.size(), static_cast<Eigen::Index>(gens.omegas.size()));
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    a.col(c) = geosynth::vector_from_hermitian(
        (geosynth::Complex(0, -1) * gens.omegas[c]).eval());
  return a;
}

}  // namespace

TEST_CASE("golden-section search maximizes unimodal objectives") {
  int evals = 0;
  const auto parabola = [&](double x) {
    ++evals;
    return -(x - 2.0) * (x - 2.0);
  };
  const double tol = 1e-6;
  const double got = geosynth::golden_section_search(parabola, 0.0, 10.0, tol);
  CHECK(std::abs(got - 2.0) < tol);

  const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
  const int bound = static_cast<int>(std::ceil(std::log(10.0 / tol) / std::log(1.0 / rho))) + 2;
  CHECK(evals <= bound);

  const auto wave = [](double x) { return std::sin(x); };
  CHECK(std::abs(geosynth::golden_section_search(wave, 0.0, 3.0, 1e-8) - kPi / 2) < 1e-7);
}

TEST_CASE("golden-section search rejects bad input") {
  const auto fine = [](double) { return 0.0; };
  CHECK_THROWS_AS(geosynth::golden_section_search(fine, 1.0, 1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(geosynth::golden_section_search(fine, 0.0, 1.0, 0.0), std::invalid_argument);
  const auto broken = [](double) { return std::nan(""); };
  CHECK_THROWS_AS(geosynth::golden_section_search(broken, 0.0, 1.0, 1e-3), std::runtime_error);
}

TEST_CASE("step direction matches a dense normal-equations solve") {
  std::mt19937_64 rng(3);
  const int n = 2;
  const UnitaryMatrix target =
      geosynth::su_project_target(geosynth_test::random_unitary(4, rng));

  SUBCASE("full algebra, zero residual") {
    const RestrictionMask mask = RestrictionMask::all(n);
    const LieVector v = random_params(mask.size(), 0.5, rng);
    const auto [x, residual] = geosynth::geodesic_step_direction(v, target, mask);

    const Eigen::MatrixXd a = tangent_matrix(v, mask);
    const LieVector gamma =
        geosynth::principal_log_unitary(geosynth::unitary_from_params(v).adjoint() * target)
            .gamma_vec;
    const Eigen::VectorXd oracle =
        (a.transpose() * a).ldlt().solve(a.transpose() * gamma);

    CHECK((x - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(residual < 1e-8);
    CHECK(std::abs((a * x - gamma).norm() - residual) < 1e-12);
  }

  SUBCASE("strict mask, positive residual") {
    const RestrictionMask mask = RestrictionMask::from_words(
        n, {PauliWord::from_string("XI"), PauliWord::from_string("IZ"),
            PauliWord::from_string("XX")});
    const LieVector v = geosynth::apply_restriction(mask, random_params(mask.size(), 0.5, rng));
    const auto [x, residual] = geosynth::geodesic_step_direction(v, target, mask);
    CHECK((geosynth::apply_restriction(mask, x) - x).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::MatrixXd a = tangent_matrix(v, mask);
    const LieVector gamma =
        geosynth::principal_log_unitary(geosynth::unitary_from_params(v).adjoint() * target)
            .gamma_vec;
    const Eigen::VectorXd oracle =
        (a.transpose() * a).ldlt().solve(a.transpose() * gamma);

    Eigen::VectorXd x_masked(a.cols());
    Eigen::Index c = 0;
    for (std::int64_t index : mask.allowed_indices()) x_masked[c++] = x[index - 1];
    CHECK((x_masked - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(residual > 1e-3);
    CHECK(std::abs((a * x_masked - gamma).norm() - residual) < 1e-12);
  }

  SUBCASE("already at the target") {
    const RestrictionMask mask = RestrictionMask::all(n);
    const LieVector v = random_params(mask.size(), 0.5, rng);
    const auto [x, residual] =
        geosynth::geodesic_step_direction(v, geosynth::unitary_from_params(v), mask);
    CHECK(x.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(residual < 1e-12);
  }

  SUBCASE("off-mask parameters are rejected") {
    const RestrictionMask mask = RestrictionMask::from_words(n, {PauliWord::from_string("XI")});
    LieVector v = LieVector::Zero(mask.size());
    v[0] = 0.2;  // "IX" entry, outside the mask
    CHECK_THROWS_AS(geosynth::geodesic_step_direction(v, target, mask), std::invalid_argument);
  }
}

TEST_CASE("escape directions are masked, orthogonal, and eta-scaled") {
  std::mt19937_64 rng(19);
  const RestrictionMask mask = RestrictionMask::two_local(2);
  const LieVector gamma = random_params(mask.size(), 1.0, rng);

  std::mt19937_64 r1(5);
  std::mt19937_64 r2(5);
  const LieVector e1 = geosynth::gram_schmidt_escape(gamma, mask, r1, 1.0);
  const LieVector e2 = geosynth::gram_schmidt_escape(gamma, mask, r2, 2.5);
  CHECK((2.5 * e1 - e2).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(e1.dot(gamma)) < 1e-12);
  CHECK((geosynth::apply_restriction(mask, e1) - e1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(e1.norm() > 0.0);
}

TEST_CASE("escape handles gamma outside the mask and rejects zero gamma") {
  const RestrictionMask x_only = RestrictionMask::from_words(1, {PauliWord::from_string("X")});
  LieVector gamma_z = LieVector::Zero(3);
  gamma_z[2] = 0.7;

  std::mt19937_64 rng(23);
  const LieVector e = geosynth::gram_schmidt_escape(gamma_z, x_only, rng, 1.0);
  CHECK(std::abs(e.dot(gamma_z)) == 0.0);  // disjoint supports
  CHECK(e[1] == 0.0);
  CHECK(e[2] == 0.0);
  CHECK(e.norm() > 0.0);

  const LieVector zero = LieVector::Zero(3);
  CHECK_THROWS_AS(geosynth::gram_schmidt_escape(zero, x_only, rng, 1.0), std::invalid_argument);
}

TEST_CASE("geodesic run converges on a reachable single-qubit target") {
  LieVector truth = LieVector::Zero(3);
  truth[0] = 0.3;
  truth[2] = 0.5;
  const UnitaryMatrix target = geosynth::unitary_from_params(truth);

  GeodesicConfig config;
  config.epsilon = 1e-6;
  config.use_ansatz = false;
  config.seed = 11;
  const RestrictionMask mask = RestrictionMask::all(1);
  const RunResult r = geosynth::run_geodesic(target, mask, config);

  CHECK(r.converged);
  CHECK(r.final_infidelity < 1e-6);
  CHECK(r.converged == (r.final_infidelity < config.epsilon));
  CHECK(r.steps == static_cast<int>(r.trajectory.size()));
  REQUIRE(r.steps >= 1);
  for (int i = 0; i < r.steps; ++i) {
    const geosynth::StepRecord& rec = r.trajectory[i];
    CHECK(rec.step == i + 1);
    CHECK(rec.residual >= 0.0);
    if (rec.kind == StepKind::LeastSquares) {
      CHECK(rec.fidelity_after > rec.fidelity_before);
      CHECK(rec.step_size >= 0.0);
      CHECK(rec.step_size <= config.delta_max);
    }
  }
  // The reported infidelity reflects the returned parameters.
  const double replay =
      1.0 - geosynth::fidelity(geosynth::unitary_from_params(r.final_params), target);
  CHECK(std::abs(replay - r.final_infidelity) < 1e-15);
}

TEST_CASE("geodesic runs are deterministic in the seed") {
  const UnitaryMatrix target = geosynth::su_project_target(geosynth::weight_parity_z(2));
  const RestrictionMask mask = RestrictionMask::two_local(2);
  GeodesicConfig config;
  config.seed = 7;

  const RunResult a = geosynth::run_geodesic(target, mask, config);
  const RunResult b = geosynth::run_geodesic(target, mask, config);
  REQUIRE(a.steps == b.steps);
  CHECK(a.final_infidelity == b.final_infidelity);
  CHECK((a.final_params - b.final_params).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < a.steps; ++i) {
    CHECK(a.trajectory[i].fidelity_before == b.trajectory[i].fidelity_before);
    CHECK(a.trajectory[i].fidelity_after == b.trajectory[i].fidelity_after);
    CHECK(a.trajectory[i].step_size == b.trajectory[i].step_size);
  }

  GeodesicConfig other = config;
  other.seed = 8;
  const RunResult c = geosynth::run_geodesic(target, mask, other);
  REQUIRE(c.steps >= 1);
  CHECK(c.trajectory[0].fidelity_before != a.trajectory[0].fidelity_before);
}

TEST_CASE("geodesic run validates targets and configs") {
  const RestrictionMask mask3 = RestrictionMask::two_local(3);
  GeodesicConfig config;

  // Determinant -1: must be rescaled by the caller first.
  CHECK_THROWS_AS(geosynth::run_geodesic(geosynth::toffoli(), mask3, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      geosynth::run_geodesic(2.0 * UnitaryMatrix::Identity(8, 8), mask3, config),
      std::invalid_argument);
  CHECK_THROWS_AS(
      geosynth::run_geodesic(UnitaryMatrix::Identity(4, 4), mask3, config),
      std::invalid_argument);

  const UnitaryMatrix target = geosynth::su_project_target(geosynth::toffoli());
  GeodesicConfig bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.eta = 0.0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.max_steps = 0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.delta_max = 0.0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.ls_tol = 0.0;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);
  bad = config;
  bad.init_scale = -0.5;
  CHECK_THROWS_AS(geosynth::run_geodesic(target, mask3, bad), std::invalid_argument);

  // Explicit initial points must sit on the mask.
  const RestrictionMask x_only = RestrictionMask::from_words(1, {PauliWord::from_string("X")});
  LieVector off = LieVector::Zero(3);
  off[2] = 0.1;
  CHECK_THROWS_AS(
      geosynth::run_geodesic(UnitaryMatrix::Identity(2, 2), x_only, config, off),
      std::invalid_argument);
}

TEST_CASE("ansatz flag reflects whether a symmetry subspace was found") {
  const UnitaryMatrix target = geosynth::su_project_target(geosynth::toffoli());
  const RestrictionMask mask = RestrictionMask::two_local(3);

  GeodesicConfig on;
  on.use_ansatz = true;
  on.max_steps = 2;
  CHECK(geosynth::run_geodesic(target, mask, on).ansatz_effective);

  GeodesicConfig off;
  off.use_ansatz = false;
  off.max_steps = 2;
  CHECK_FALSE(geosynth::run_geodesic(target, mask, off).ansatz_effective);

  // Empty commutant: requesting the ansatz must not pretend it acted.
  LieVector zdir = LieVector::Zero(3);
  zdir[2] = 0.3;
  const UnitaryMatrix zrot = geosynth::exp_i_hermitian(geosynth::hermitian_from_vector(zdir));
  const RestrictionMask x_only = RestrictionMask::from_words(1, {PauliWord::from_string("X")});
  GeodesicConfig shallow;
  shallow.use_ansatz = true;
  shallow.max_steps = 25;
  const RunResult r = geosynth::run_geodesic(zrot, x_only, shallow);
  CHECK_FALSE(r.ansatz_effective);
  CHECK_FALSE(r.converged);
  CHECK(r.steps == 25);
}

TEST_CASE("pure-phase stationary points stop the run") {
  // Target -I: the relative log is a pure trace, so the least-squares
  // system is empty and no orthogonal escape exists.
  const UnitaryMatrix minus_identity = -UnitaryMatrix::Identity(2, 2);
  GeodesicConfig config;
  config.use_ansatz = false;
  config.max_steps = 10;
  const RestrictionMask mask = RestrictionMask::all(1);
  const LieVector zero = LieVector::Zero(3);

  const RunResult stuck = geosynth::run_geodesic(minus_identity, mask, config, zero);
  CHECK(stuck.steps == 0);
  CHECK_FALSE(stuck.converged);
  CHECK(stuck.final_infidelity == doctest::Approx(2.0));

  // Up to a global phase the same point is already exact.
  GeodesicConfig invariant = config;
  invariant.phase_invariant = true;
  const RunResult done = geosynth::run_geodesic(minus_identity, mask, invariant, zero);
  CHECK(done.converged);
  CHECK(done.steps == 0);
  CHECK(done.final_infidelity == doctest::Approx(0.0));
}

TEST_CASE("branch-cut proximity is recorded on the trajectory") {
  UnitaryMatrix target = UnitaryMatrix::Identity(4, 4);
  target(0, 0) = -1.0;
  target(3, 3) = -1.0;  // eigenphases {pi, 0, 0, pi}, determinant 1
  GeodesicConfig config;
  config.use_ansatz = false;
  config.max_steps = 3;
  const RunResult r = geosynth::run_geodesic(target, RestrictionMask::all(2), config,
                                             LieVector::Zero(15));
  REQUIRE(r.steps >= 1);
  CHECK(r.trajectory[0].near_branch_cut);
}

TEST_CASE("phase-invariant runs report the invariant infidelity") {
  LieVector truth = LieVector::Zero(3);
  truth[1] = 0.4;
  const UnitaryMatrix target = geosynth::unitary_from_params(truth);

  GeodesicConfig config;
  config.phase_invariant = true;
  config.use_ansatz = false;
  config.epsilon = 1e-8;
  config.seed = 2;
  const RunResult r = geosynth::run_geodesic(target, RestrictionMask::all(1), config);
  CHECK(r.converged);
  const double replay = 1.0 - geosynth::fidelity_phase_invariant(
                                  geosynth::unitary_from_params(r.final_params), target);
  CHECK(std::abs(replay - r.final_infidelity) < 1e-15);
}

TEST_CASE("in-restriction two-qubit targets converge within a short budget") {
  // Target generated inside the mask, so an exact solution exists.
  LieVector truth = LieVector::Zero(15);
  truth[geosynth::basis_index(geosynth::PauliWord::from_string("XI")) - 1] = 0.3;
  truth[geosynth::basis_index(geosynth::PauliWord::from_string("ZZ")) - 1] = 0.7;
  const UnitaryMatrix target = geosynth::unitary_from_params(truth);
  const RestrictionMask mask = RestrictionMask::two_local(2);

  int good = 0;
  for (int seed = 0; seed < 10; ++seed) {
    GeodesicConfig config;
    config.seed = seed;
    config.max_steps = 50;
    config.use_ansatz = false;
    if (geosynth::run_geodesic(target, mask, config).converged) ++good;
  }
  CHECK(good >= 9);
}
