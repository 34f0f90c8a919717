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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "geosynth/baselines.hpp"
#include "geosynth/geodesic.hpp"
#include "geosynth/manifold.hpp"

namespace geosynth {

namespace {

using nlohmann::json;

json config_to_json(const std::variant<GeodesicConfig, GdConfig, SgdConfig>& config) {
  json out;
  if (const auto* g = std::get_if<GeodesicConfig>(&config)) {
    out["epsilon"] = g->epsilon;
    out["eta"] = g->eta;
    out["max_steps"] = g->max_steps;
    out["delta_max"] = g->delta_max;
    out["ls_tol"] = g->ls_tol;
    out["use_ansatz"] = g->use_ansatz;
    out["init_scale"] = g->init_scale;
    out["phase_invariant"] = g->phase_invariant;
    out["seed"] = g->seed;
  } else if (const auto* d = std::get_if<GdConfig>(&config)) {
    out["learning_rate"] = d->learning_rate;
    out["beta1"] = d->beta1;
    out["beta2"] = d->beta2;
    out["adam_eps"] = d->adam_eps;
    out["epsilon"] = d->epsilon;
    out["max_steps"] = d->max_steps;
    out["phase_invariant"] = d->phase_invariant;
    out["seed"] = d->seed;
  } else {
    const auto& s = std::get<SgdConfig>(config);
    out["d_train"] = s.d_train;
    out["d_test"] = s.d_test;
    out["lambda0"] = s.lambda0;
    out["kappa"] = s.kappa;
    out["epsilon"] = s.epsilon;
    out["max_steps"] = s.max_steps;
    out["seed"] = s.seed;
  }
  return out;
}

std::variant<GeodesicConfig, GdConfig, SgdConfig> config_from_json(Method method,
                                                                   const json& j) {
  switch (method) {
    case Method::Geodesic: {
      GeodesicConfig g;
      g.epsilon = j.at("epsilon").get<double>();
      g.eta = j.at("eta").get<double>();
      g.max_steps = j.at("max_steps").get<int>();
      g.delta_max = j.at("delta_max").get<double>();
      g.ls_tol = j.at("ls_tol").get<double>();
      g.use_ansatz = j.at("use_ansatz").get<bool>();
      g.init_scale = j.at("init_scale").get<double>();
      g.phase_invariant = j.at("phase_invariant").get<bool>();
      g.seed = j.at("seed").get<std::uint64_t>();
      return g;
    }
    case Method::GradientDescent: {
      GdConfig d;
      d.learning_rate = j.at("learning_rate").get<double>();
      d.beta1 = j.at("beta1").get<double>();
      d.beta2 = j.at("beta2").get<double>();
      d.adam_eps = j.at("adam_eps").get<double>();
      d.epsilon = j.at("epsilon").get<double>();
      d.max_steps = j.at("max_steps").get<int>();
      d.phase_invariant = j.at("phase_invariant").get<bool>();
      d.seed = j.at("seed").get<std::uint64_t>();
      return d;
    }
    case Method::Sgd: {
      SgdConfig s;
      s.d_train = j.at("d_train").get<int>();
      s.d_test = j.at("d_test").get<int>();
      s.lambda0 = j.at("lambda0").get<double>();
      s.kappa = j.at("kappa").get<double>();
      s.epsilon = j.at("epsilon").get<double>();
      s.max_steps = j.at("max_steps").get<int>();
      s.seed = j.at("seed").get<std::uint64_t>();
      return s;
    }
  }
  throw std::logic_error("unhandled method");
}

RunRecord skeleton_record(const ExperimentSpec& spec, const ResolvedExperiment& resolved,
                          std::uint64_t seed) {
  RunRecord rec;
  rec.method = method_name(spec.method);
  rec.target = spec.target_text;
  rec.restriction = spec.restriction_text;
  rec.qubits = resolved.qubits;
  rec.seed = seed;
  switch (spec.method) {
    case Method::Geodesic: {
      GeodesicConfig c = spec.geodesic;
      c.seed = seed;
      rec.config = c;
      break;
    }
    case Method::GradientDescent: {
      GdConfig c = spec.gd;
      c.seed = seed;
      rec.config = c;
      break;
    }
    case Method::Sgd: {
      SgdConfig c = spec.sgd;
      c.seed = seed;
      rec.config = c;
      break;
    }
  }
  return rec;
}

double median_of(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return 0.5 * (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid]));
}

// Rebuilds the validation batch an sgd run drew, reproducing the RNG
// consumption of run_sgd exactly: a full-length uniform(-1, 1) draw for the
// initial parameters, then the d_test Haar states.
StateBatch rebuild_sgd_validation(int qubits, const SgdConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const std::int64_t draws = algebra_dimension(qubits);
  for (std::int64_t k = 0; k < draws; ++k) uniform(rng);
  return haar_states(config.d_test, std::int64_t{1} << qubits, rng);
}

LieVector params_from_labels(const std::vector<LabeledParam>& labels, int qubits) {
  LieVector out = LieVector::Zero(algebra_dimension(qubits));
  std::vector<bool> seen(out.size(), false);
  for (const LabeledParam& p : labels) {
    const PauliWord word = PauliWord::from_string(p.word);
    if (word.qubits() != qubits)
      throw std::invalid_argument("parameter word '" + p.word +
                                  "' does not match the qubit count " + std::to_string(qubits));
    const std::int64_t index = basis_index(word);
    if (seen[index - 1])
      throw std::invalid_argument("duplicate parameter word '" + p.word + "'");
    seen[index - 1] = true;
    out[index - 1] = p.value;
  }
  return out;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::Geodesic: return "geodesic";
    case Method::GradientDescent: return "gd";
    case Method::Sgd: return "sgd";
  }
  throw std::logic_error("unhandled method");
}

Method method_from_name(const std::string& name) {
  if (name == "geodesic") return Method::Geodesic;
  if (name == "gd") return Method::GradientDescent;
  if (name == "sgd") return Method::Sgd;
  throw std::invalid_argument("unknown method '" + name + "'; expected geodesic | gd | sgd");
}

ResolvedExperiment resolve_experiment(const ExperimentSpec& spec) {
  ResolvedExperiment out{UnitaryMatrix(), RestrictionMask::all(1), 0};
  out.target = su_project_target(build_gate(parse_gate_spec(spec.target_text)));
  out.qubits = qubits_from_matrix_dim(out.target.rows());

  const std::string& r = spec.restriction_text;
  if (r == "all") {
    out.mask = RestrictionMask::all(out.qubits);
  } else if (r == "two-local") {
    out.mask = RestrictionMask::two_local(out.qubits);
  } else if (r.rfind("file:", 0) == 0 && r.size() > 5) {
    out.mask = RestrictionMask::from_file(out.qubits, r.substr(5));
  } else {
    throw std::invalid_argument("unknown restriction spec '" + r +
                                "'; expected all | two-local | file:PATH");
  }
  return out;
}

std::string to_json_line(const RunRecord& record) {
  json j;
  j["schema_version"] = record.schema_version;
  j["method"] = record.method;
  j["target"] = record.target;
  j["restriction"] = record.restriction;
  j["qubits"] = record.qubits;
  j["seed"] = record.seed;
  j["converged"] = record.converged;
  j["steps"] = record.steps;
  j["final_infidelity"] = record.final_infidelity;
  j["wall_time_s"] = record.wall_time_s;
  j["ansatz_effective"] = record.ansatz_effective;
  j["config"] = config_to_json(record.config);
  j["infidelity_trace"] = record.infidelity_trace;
  json params = json::array();
  for (const LabeledParam& p : record.final_params)
    params.push_back(json{{"word", p.word}, {"value", p.value}});
  j["final_params"] = std::move(params);
  if (!record.error.empty()) j["error"] = record.error;
  return j.dump();
}

RunRecord run_record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed run record: ") + e.what());
  }
  try {
    if (!j.contains("schema_version"))
      throw std::runtime_error("run record lacks a schema version");
    const int version = j.at("schema_version").get<int>();
    if (version != kRecordSchemaVersion)
      throw std::runtime_error("unsupported record schema version " + std::to_string(version));

    RunRecord rec;
    rec.schema_version = version;
    rec.method = j.at("method").get<std::string>();
    rec.target = j.at("target").get<std::string>();
    rec.restriction = j.at("restriction").get<std::string>();
    rec.qubits = j.at("qubits").get<int>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.converged = j.at("converged").get<bool>();
    rec.steps = j.at("steps").get<int>();
    rec.final_infidelity = j.at("final_infidelity").get<double>();
    rec.wall_time_s = j.at("wall_time_s").get<double>();
    rec.ansatz_effective = j.at("ansatz_effective").get<bool>();
    rec.config = config_from_json(method_from_name(rec.method), j.at("config"));
    rec.infidelity_trace = j.at("infidelity_trace").get<std::vector<double>>();
    for (const json& p : j.at("final_params"))
      rec.final_params.push_back(
          LabeledParam{p.at("word").get<std::string>(), p.at("value").get<double>()});
    if (j.contains("error")) rec.error = j.at("error").get<std::string>();
    return rec;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed run record: ") + e.what());
  }
}

RunRecord execute_run(const ExperimentSpec& spec, const ResolvedExperiment& resolved,
                      std::uint64_t seed) {
  RunRecord rec = skeleton_record(spec, resolved, seed);

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (spec.method) {
    case Method::Geodesic:
      result = run_geodesic(resolved.target, resolved.mask, std::get<GeodesicConfig>(rec.config));
      break;
    case Method::GradientDescent:
      result = run_gd(resolved.target, resolved.mask, std::get<GdConfig>(rec.config));
      break;
    case Method::Sgd:
      result = run_sgd(resolved.target, resolved.mask, std::get<SgdConfig>(rec.config));
      break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  rec.converged = result.converged;
  rec.steps = result.steps;
  rec.final_infidelity = result.final_infidelity;
  rec.wall_time_s = elapsed.count();
  rec.ansatz_effective = result.ansatz_effective;
  rec.infidelity_trace.reserve(result.trajectory.size());
  for (const StepRecord& s : result.trajectory)
    rec.infidelity_trace.push_back(1.0 - s.fidelity_after);
  rec.final_params.reserve(resolved.mask.allowed_indices().size());
  for (std::int64_t index : resolved.mask.allowed_indices())
    rec.final_params.push_back(LabeledParam{index_to_word(index, resolved.qubits).str(),
                                            result.final_params[index - 1]});
  return rec;
}

void BatchOptions::validate() const {
  if (seeds < 1) throw std::invalid_argument("seeds must be at least 1");
  if (parallel < 1) throw std::invalid_argument("parallel must be at least 1");
}

std::vector<RunRecord> run_batch(const ExperimentSpec& spec, const BatchOptions& options,
                                 const std::function<void(const RunRecord&)>& on_record) {
  options.validate();
  const ResolvedExperiment resolved = resolve_experiment(spec);

  std::vector<RunRecord> records(options.seeds);
  std::atomic<int> next{0};
  std::mutex writer_mutex;

  const auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= options.seeds) break;
      const std::uint64_t seed = options.seed_base + static_cast<std::uint64_t>(i);
      RunRecord rec;
      try {
        rec = execute_run(spec, resolved, seed);
      } catch (const std::exception& e) {
        rec = skeleton_record(spec, resolved, seed);
        rec.error = e.what();
      }
      const std::lock_guard<std::mutex> lock(writer_mutex);
      records[i] = std::move(rec);
      if (on_record) on_record(records[i]);
    }
  };

  const int workers = std::min(options.parallel, options.seeds);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

BatchSummary summarize_batch(const std::vector<RunRecord>& records, double decades_per_bin) {
  if (records.empty()) throw std::invalid_argument("cannot summarize an empty batch");
  if (!(decades_per_bin > 0.0))
    throw std::invalid_argument("histogram bin width must be positive");

  BatchSummary s;
  s.method = records.front().method;
  s.target = records.front().target;
  s.restriction = records.front().restriction;
  s.seeds = static_cast<int>(records.size());

  std::vector<int> steps;
  steps.reserve(records.size());
  for (const RunRecord& r : records) {
    if (r.converged) ++s.succeeded;
    steps.push_back(r.steps);
  }
  s.success_rate = static_cast<double>(s.succeeded) / static_cast<double>(s.seeds);
  s.steps_min = *std::min_element(steps.begin(), steps.end());
  s.steps_max = *std::max_element(steps.begin(), steps.end());
  s.steps_median = median_of(steps);

  s.hist_edges = {0.0, 1.0};
  int power = 1;
  while (s.hist_edges.back() <= static_cast<double>(s.steps_max))
    s.hist_edges.push_back(std::pow(10.0, decades_per_bin * power++));
  s.hist_counts.assign(s.hist_edges.size() - 1, 0);
  for (int count : steps)
    for (std::size_t b = 0; b + 1 < s.hist_edges.size(); ++b)
      if (count >= s.hist_edges[b] && count < s.hist_edges[b + 1]) {
        ++s.hist_counts[b];
        break;
      }
  return s;
}

std::string to_json(const BatchSummary& summary) {
  json j;
  j["schema_version"] = summary.schema_version;
  j["method"] = summary.method;
  j["target"] = summary.target;
  j["restriction"] = summary.restriction;
  j["seeds"] = summary.seeds;
  j["succeeded"] = summary.succeeded;
  j["success_rate"] = summary.success_rate;
  j["steps_min"] = summary.steps_min;
  j["steps_median"] = summary.steps_median;
  j["steps_max"] = summary.steps_max;
  j["histogram"] = json{{"edges", summary.hist_edges}, {"counts", summary.hist_counts}};
  return j.dump(2);
}

std::string to_csv(const BatchSummary& summary) {
  std::ostringstream out;
  out.precision(17);
  out << "method,target,restriction,seeds,succeeded,success_rate,steps_min,steps_median,steps_max\n";
  out << summary.method << ',' << summary.target << ',' << summary.restriction << ','
      << summary.seeds << ',' << summary.succeeded << ',' << summary.success_rate << ','
      << summary.steps_min << ',' << summary.steps_median << ',' << summary.steps_max << "\n";
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b + 1 < summary.hist_edges.size(); ++b)
    out << summary.hist_edges[b] << ',' << summary.hist_edges[b + 1] << ','
        << summary.hist_counts[b] << "\n";
  return out.str();
}

VerifyOutcome verify_params_file(const std::string& path, const ExperimentSpec& target_spec) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open parameter file: " + path);
  std::string line;
  std::string last;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) last = line;
  if (last.empty()) throw std::invalid_argument("parameter file is empty: " + path);

  const ResolvedExperiment resolved = resolve_experiment(target_spec);
  VerifyOutcome outcome;
  outcome.qubits = resolved.qubits;

  json j;
  try {
    j = json::parse(last);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed parameter file: ") + e.what());
  }

  if (j.contains("schema_version")) {
    const RunRecord rec = run_record_from_json(last);
    if (rec.qubits != resolved.qubits)
      throw std::invalid_argument("record is for " + std::to_string(rec.qubits) +
                                  " qubits but the target has " +
                                  std::to_string(resolved.qubits));
    const LieVector params = params_from_labels(rec.final_params, resolved.qubits);
    const Method method = method_from_name(rec.method);
    if (method == Method::Sgd) {
      const SgdConfig& c = std::get<SgdConfig>(rec.config);
      const StateBatch validation = rebuild_sgd_validation(resolved.qubits, c);
      outcome.infidelity = state_infidelity_batch(params, resolved.target, validation);
      outcome.detail = "validation-batch infidelity (batch rebuilt from the recorded seed)";
    } else {
      bool phase_invariant = false;
      if (method == Method::Geodesic)
        phase_invariant = std::get<GeodesicConfig>(rec.config).phase_invariant;
      else
        phase_invariant = std::get<GdConfig>(rec.config).phase_invariant;
      const UnitaryMatrix u = unitary_from_params(params);
      outcome.infidelity = 1.0 - (phase_invariant ? fidelity_phase_invariant(u, resolved.target)
                                                  : fidelity(u, resolved.target));
      outcome.detail = phase_invariant ? "unitary infidelity, phase-invariant convention"
                                       : "unitary infidelity";
    }
    return outcome;
  }

  // Bare labeled vector: {"n": qubits, "params": [{"word", "value"}, ...]};
  // "n" is optional when the words fix it.
  try {
    if (!j.contains("params") || !j.at("params").is_array() || j.at("params").empty())
      throw std::runtime_error("parameter file needs a non-empty \"params\" array");
    std::vector<LabeledParam> labels;
    for (const json& p : j.at("params"))
      labels.push_back(LabeledParam{p.at("word").get<std::string>(), p.at("value").get<double>()});
    const int n = j.contains("n") ? j.at("n").get<int>()
                                  : static_cast<int>(labels.front().word.size());
    if (n != resolved.qubits)
      throw std::invalid_argument("parameters are for " + std::to_string(n) +
                                  " qubits but the target has " + std::to_string(resolved.qubits));
    const LieVector params = params_from_labels(labels, n);
    const UnitaryMatrix u = unitary_from_params(params);
    const bool phase_invariant = target_spec.geodesic.phase_invariant;
    outcome.infidelity = 1.0 - (phase_invariant ? fidelity_phase_invariant(u, resolved.target)
                                                : fidelity(u, resolved.target));
    outcome.detail = phase_invariant ? "unitary infidelity, phase-invariant convention"
                                     : "unitary infidelity";
    return outcome;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed parameter file: ") + e.what());
  }
}

}  // namespace geosynth
