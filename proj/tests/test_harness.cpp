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

#include "geosynth/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <doctest.h>

#include "geosynth/gates.hpp"
#include "geosynth/manifold.hpp"
#include "test_helpers.hpp"

namespace {

using geosynth::ExperimentSpec;
using geosynth::LieVector;
using geosynth::Method;
using geosynth::RunRecord;
using geosynth::UnitaryMatrix;

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/geosynth_harness_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

LieVector params_vector(const RunRecord& rec) {
  LieVector v = LieVector::Zero(geosynth::algebra_dimension(rec.qubits));
  for (const geosynth::LabeledParam& p : rec.final_params)
    v[geosynth::basis_index(geosynth::PauliWord::from_string(p.word)) - 1] = p.value;
  return v;
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (const Method m : {Method::Geodesic, Method::GradientDescent, Method::Sgd})
    CHECK(geosynth::method_from_name(geosynth::method_name(m)) == m);
  CHECK(geosynth::method_name(Method::GradientDescent) == "gd");
  CHECK_THROWS_AS(geosynth::method_from_name("newton"), std::invalid_argument);
}

TEST_CASE("experiments resolve targets and restrictions") {
  ExperimentSpec spec;
  spec.target_text = "toffoli";
  spec.restriction_text = "two-local";
  const geosynth::ResolvedExperiment r = geosynth::resolve_experiment(spec);
  CHECK(r.qubits == 3);
  CHECK(r.mask.count() == 36);
  CHECK(std::abs(r.target.determinant() - geosynth::Complex(1, 0)) < 1e-12);

  spec.restriction_text = "all";
  CHECK(geosynth::resolve_experiment(spec).mask.count() == 63);

  const std::string mask_path = write_temp("mask.txt", "XII\nIZI\n");
  spec.restriction_text = "file:" + mask_path;
  CHECK(geosynth::resolve_experiment(spec).mask.count() == 2);

  spec.restriction_text = "local";
  CHECK_THROWS_AS(geosynth::resolve_experiment(spec), std::invalid_argument);
  spec.restriction_text = "two-local";
  spec.target_text = "cnot";
  CHECK_THROWS_AS(geosynth::resolve_experiment(spec), std::invalid_argument);
}

TEST_CASE("execute_run fills a consistent record") {
  ExperimentSpec spec;
  spec.target_text = "toffoli";
  spec.restriction_text = "two-local";
  spec.method = Method::Geodesic;
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  const RunRecord rec = geosynth::execute_run(spec, resolved, 5);

  CHECK(rec.schema_version == geosynth::kRecordSchemaVersion);
  CHECK(rec.method == "geodesic");
  CHECK(rec.target == "toffoli");
  CHECK(rec.restriction == "two-local");
  CHECK(rec.qubits == 3);
  CHECK(rec.seed == 5);
  CHECK(std::get<geosynth::GeodesicConfig>(rec.config).seed == 5);
  CHECK(rec.wall_time_s > 0.0);
  CHECK(rec.error.empty());
  REQUIRE(rec.steps >= 1);
  CHECK(rec.infidelity_trace.size() == static_cast<std::size_t>(rec.steps));
  CHECK(rec.infidelity_trace.back() == rec.final_infidelity);
  REQUIRE(rec.final_params.size() == 36);
  for (const geosynth::LabeledParam& p : rec.final_params)
    CHECK(geosynth::PauliWord::from_string(p.word).weight() <= 2);

  // The labeled parameters replay to the recorded infidelity.
  const double replay =
      1.0 - geosynth::fidelity(geosynth::unitary_from_params(params_vector(rec)),
                               resolved.target);
  CHECK(std::abs(replay - rec.final_infidelity) < 1e-15);
}

TEST_CASE("run records survive a JSON round trip bit for bit") {
  ExperimentSpec spec;
  spec.target_text = "wz:2";
  spec.restriction_text = "two-local";
  spec.method = Method::Geodesic;
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  const RunRecord rec = geosynth::execute_run(spec, resolved, 12);

  const std::string line = geosynth::to_json_line(rec);
  CHECK(line.find('\n') == std::string::npos);
  const RunRecord back = geosynth::run_record_from_json(line);

  CHECK(back.schema_version == rec.schema_version);
  CHECK(back.method == rec.method);
  CHECK(back.target == rec.target);
  CHECK(back.restriction == rec.restriction);
  CHECK(back.qubits == rec.qubits);
  CHECK(back.seed == rec.seed);
  CHECK(back.converged == rec.converged);
  CHECK(back.steps == rec.steps);
  CHECK(back.final_infidelity == rec.final_infidelity);
  CHECK(back.wall_time_s == rec.wall_time_s);
  CHECK(back.ansatz_effective == rec.ansatz_effective);
  CHECK(back.error == rec.error);
  REQUIRE(back.infidelity_trace.size() == rec.infidelity_trace.size());
  for (std::size_t i = 0; i < rec.infidelity_trace.size(); ++i)
    CHECK(back.infidelity_trace[i] == rec.infidelity_trace[i]);
  REQUIRE(back.final_params.size() == rec.final_params.size());
  for (std::size_t i = 0; i < rec.final_params.size(); ++i) {
    CHECK(back.final_params[i].word == rec.final_params[i].word);
    CHECK(back.final_params[i].value == rec.final_params[i].value);
  }
  const auto& a = std::get<geosynth::GeodesicConfig>(rec.config);
  const auto& b = std::get<geosynth::GeodesicConfig>(back.config);
  CHECK(a.epsilon == b.epsilon);
  CHECK(a.eta == b.eta);
  CHECK(a.max_steps == b.max_steps);
  CHECK(a.delta_max == b.delta_max);
  CHECK(a.ls_tol == b.ls_tol);
  CHECK(a.use_ansatz == b.use_ansatz);
  CHECK(a.init_scale == b.init_scale);
  CHECK(a.phase_invariant == b.phase_invariant);
  CHECK(a.seed == b.seed);
}

TEST_CASE("record parsing rejects malformed and versioned-away lines") {
  CHECK_THROWS_AS(geosynth::run_record_from_json("not json"), std::runtime_error);
  CHECK_THROWS_AS(geosynth::run_record_from_json("{\"method\":\"geodesic\"}"),
                  std::runtime_error);
  CHECK_THROWS_AS(geosynth::run_record_from_json("{\"schema_version\":99}"),
                  std::runtime_error);
}

TEST_CASE("batches are seed-ordered, deterministic, and error-capturing") {
  ExperimentSpec spec;
  spec.target_text = "wz:2";
  spec.restriction_text = "two-local";
  spec.method = Method::Geodesic;

  geosynth::BatchOptions options;
  options.seeds = 3;
  options.seed_base = 10;

  int callbacks = 0;
  const std::vector<RunRecord> serial =
      geosynth::run_batch(spec, options, [&](const RunRecord&) { ++callbacks; });
  CHECK(callbacks == 3);
  REQUIRE(serial.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(serial[i].seed == static_cast<std::uint64_t>(10 + i));
    CHECK(serial[i].error.empty());
  }

  geosynth::BatchOptions parallel = options;
  parallel.parallel = 2;
  const std::vector<RunRecord> threaded = geosynth::run_batch(spec, parallel);
  REQUIRE(threaded.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(threaded[i].seed == serial[i].seed);
    CHECK(threaded[i].steps == serial[i].steps);
    CHECK(threaded[i].final_infidelity == serial[i].final_infidelity);
  }

  // A config the runner rejects is captured per record, not thrown.
  ExperimentSpec broken = spec;
  broken.geodesic.epsilon = 0.0;
  const std::vector<RunRecord> failed = geosynth::run_batch(broken, options);
  REQUIRE(failed.size() == 3);
  for (const RunRecord& rec : failed) {
    CHECK_FALSE(rec.error.empty());
    CHECK_FALSE(rec.converged);
  }
  // Failed records still serialize and parse.
  const RunRecord back = geosynth::run_record_from_json(geosynth::to_json_line(failed[0]));
  CHECK(back.error == failed[0].error);

  geosynth::BatchOptions bad;
  bad.seeds = 0;
  CHECK_THROWS_AS(geosynth::run_batch(spec, bad), std::invalid_argument);
  bad = geosynth::BatchOptions{};
  bad.parallel = 0;
  CHECK_THROWS_AS(geosynth::run_batch(spec, bad), std::invalid_argument);
}

TEST_CASE("batch summaries aggregate steps into decade bins") {
  const auto make = [](int steps, bool converged) {
    RunRecord rec;
    rec.method = "geodesic";
    rec.target = "toffoli";
    rec.restriction = "two-local";
    rec.steps = steps;
    rec.converged = converged;
    return rec;
  };
  const std::vector<RunRecord> records = {make(1, true), make(10, false), make(100, true)};

  const geosynth::BatchSummary s = geosynth::summarize_batch(records, 1.0);
  CHECK(s.seeds == 3);
  CHECK(s.succeeded == 2);
  CHECK(s.success_rate == doctest::Approx(2.0 / 3.0));
  CHECK(s.steps_min == 1);
  CHECK(s.steps_median == 10.0);
  CHECK(s.steps_max == 100);
  REQUIRE(s.hist_edges.size() == 5);  // {0, 1, 10, 100, 1000}
  CHECK(s.hist_edges[0] == 0.0);
  CHECK(s.hist_edges[1] == 1.0);
  CHECK(s.hist_edges[4] == doctest::Approx(1000.0));
  REQUIRE(s.hist_counts.size() == 4);
  CHECK(s.hist_counts[0] == 0);
  CHECK(s.hist_counts[1] == 1);
  CHECK(s.hist_counts[2] == 1);
  CHECK(s.hist_counts[3] == 1);

  // Zero-step runs land in the [0, 1) bin and counts always total seeds.
  const std::vector<RunRecord> zeros = {make(0, false), make(3, true)};
  const geosynth::BatchSummary z = geosynth::summarize_batch(zeros, 0.25);
  CHECK(z.hist_counts[0] == 1);
  int total = 0;
  for (int c : z.hist_counts) total += c;
  CHECK(total == 2);
  CHECK(z.steps_median == 1.5);

  CHECK_THROWS_AS(geosynth::summarize_batch({}, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(geosynth::summarize_batch(records, 0.0), std::invalid_argument);

  const std::string json_text = geosynth::to_json(s);
  CHECK(json_text.find("\"succeeded\": 2") != std::string::npos);
  const std::string csv_text = geosynth::to_csv(s);
  CHECK(csv_text.find("method,target,restriction") == 0);
  CHECK(csv_text.find("bin_lo,bin_hi,count") != std::string::npos);
}

TEST_CASE("verify replays geodesic records exactly") {
  ExperimentSpec spec;
  spec.target_text = "toffoli";
  spec.restriction_text = "two-local";
  spec.method = Method::Geodesic;
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  const RunRecord rec = geosynth::execute_run(spec, resolved, 0);
  const std::string path =
      write_temp("record.jsonl", geosynth::to_json_line(rec) + "\n\n");

  ExperimentSpec target_only;
  target_only.target_text = "toffoli";
  const geosynth::VerifyOutcome outcome = geosynth::verify_params_file(path, target_only);
  CHECK(outcome.qubits == 3);
  CHECK(outcome.infidelity == rec.final_infidelity);

  // Mismatched qubit count is an input error.
  ExperimentSpec wrong;
  wrong.target_text = "wz:2";
  CHECK_THROWS_AS(geosynth::verify_params_file(path, wrong), std::invalid_argument);
}

TEST_CASE("verify replays sgd records through the validation batch") {
  ExperimentSpec spec;
  spec.target_text = "wz:2";
  spec.restriction_text = "two-local";
  spec.method = Method::Sgd;
  spec.sgd.d_train = 40;
  spec.sgd.d_test = 20;
  spec.sgd.max_steps = 4000;
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  const RunRecord rec = geosynth::execute_run(spec, resolved, 1);
  const std::string path = write_temp("sgd.jsonl", geosynth::to_json_line(rec) + "\n");

  ExperimentSpec target_only;
  target_only.target_text = "wz:2";
  const geosynth::VerifyOutcome outcome = geosynth::verify_params_file(path, target_only);
  CHECK(outcome.infidelity == rec.final_infidelity);
  CHECK(outcome.detail.find("validation") != std::string::npos);
}

TEST_CASE("verify scores bare labeled parameter vectors") {
  // Target written to disk at full precision so the file round-trip is
  // exact, then compared against the same parameters.
  LieVector truth = LieVector::Zero(3);
  truth[0] = 0.3;
  truth[2] = 0.5;
  const UnitaryMatrix target = geosynth::unitary_from_params(truth);
  std::ostringstream csv;
  csv << std::setprecision(17);
  for (Eigen::Index r = 0; r < target.rows(); ++r) {
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
      if (c > 0) csv << ',';
      csv << target(r, c).real() << ',' << target(r, c).imag();
    }
    csv << '\n';
  }
  const std::string target_path = write_temp("target.csv", csv.str());

  const std::string params_path = write_temp(
      "params.json",
      R"({"n": 1, "params": [{"word": "X", "value": 0.3}, {"word": "Z", "value": 0.5}]})");

  ExperimentSpec spec;
  spec.target_text = "file:" + target_path;
  const geosynth::VerifyOutcome outcome = geosynth::verify_params_file(params_path, spec);
  CHECK(outcome.qubits == 1);
  CHECK(outcome.infidelity < 1e-12);

  // Wrong-length words and duplicates are input errors.
  const std::string bad_len = write_temp(
      "badlen.json", R"({"params": [{"word": "XZ", "value": 0.1}]})");
  CHECK_THROWS_AS(geosynth::verify_params_file(bad_len, spec), std::invalid_argument);
  const std::string dup = write_temp(
      "dup.json",
      R"({"n": 1, "params": [{"word": "X", "value": 0.1}, {"word": "X", "value": 0.2}]})");
  CHECK_THROWS_AS(geosynth::verify_params_file(dup, spec), std::invalid_argument);

  CHECK_THROWS_AS(geosynth::verify_params_file("/tmp/geosynth_harness_missing.json", spec),
                  std::invalid_argument);
  const std::string empty = write_temp("empty.json", "\n\n");
  CHECK_THROWS_AS(geosynth::verify_params_file(empty, spec), std::invalid_argument);
  const std::string garbage = write_temp("garbage.json", "{{{\n");
  CHECK_THROWS_AS(geosynth::verify_params_file(garbage, spec), std::runtime_error);
}
