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
#include <optional>
#include <string>
#include <vector>

#include "geosynth/gates.hpp"
#include "geosynth/pauli.hpp"
#include "geosynth/run_types.hpp"

namespace geosynth {

inline constexpr int kRecordSchemaVersion = 1;

enum class Method { Geodesic, GradientDescent, Sgd };

std::string method_name(Method method);                 // "geodesic" | "gd" | "sgd"
Method method_from_name(const std::string& name);

// One reproducible experiment: what to synthesize, over which terms, how.
// Per-method configs ride along; only the one matching `method` is used.
struct ExperimentSpec {
  std::string target_text = "toffoli";         // parse_gate_spec grammar
  std::string restriction_text = "two-local";  // "all" | "two-local" | "file:PATH"
  Method method = Method::Geodesic;
  GeodesicConfig geodesic;
  GdConfig gd;
  SgdConfig sgd;
};

struct ResolvedExperiment {
  UnitaryMatrix target;  // determinant-normalized
  RestrictionMask mask;
  int qubits = 0;
};

// Builds the target (rescaled to unit determinant) and the restriction
// mask.  Throws std::invalid_argument or LoadError on bad specs.
ResolvedExperiment resolve_experiment(const ExperimentSpec& spec);

struct LabeledParam {
  std::string word;
  double value = 0;
};

// One run, serialized as a single JSON line.  Everything needed to replay
// the run is echoed: method, target and restriction specs, full config,
// and seed.
struct RunRecord {
  int schema_version = kRecordSchemaVersion;
  std::string method;
  std::string target;
  std::string restriction;
  int qubits = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  int steps = 0;
  double final_infidelity = 1.0;
  double wall_time_s = 0.0;
  bool ansatz_effective = false;
  std::variant<GeodesicConfig, GdConfig, SgdConfig> config;
  std::vector<double> infidelity_trace;     // one entry per step
  std::vector<LabeledParam> final_params;   // every allowed term, in index order
  std::string error;                        // non-empty when the run itself failed
};

// Doubles serialize with round-trip precision: parsing the line recovers
// the exact values.
std::string to_json_line(const RunRecord& record);

// Throws std::runtime_error on malformed lines or an unknown schema version.
RunRecord run_record_from_json(const std::string& line);

// Executes one seeded run and fills in the record, including wall time.
// Exceptions from bad inputs propagate to the caller.
RunRecord execute_run(const ExperimentSpec& spec, const ResolvedExperiment& resolved,
                      std::uint64_t seed);

struct BatchOptions {
  int seeds = 20;      // runs seeds seed_base .. seed_base + seeds - 1
  std::uint64_t seed_base = 0;
  int parallel = 1;
  void validate() const;
};

// Runs the seeds (up to `parallel` concurrently), returning records in seed
// order regardless of completion order.  A run that throws is captured as a
// record with `error` set; the batch always completes.  `on_record`, when
// given, observes completions (serialized, completion order).
std::vector<RunRecord> run_batch(const ExperimentSpec& spec, const BatchOptions& options,
                                 const std::function<void(const RunRecord&)>& on_record = {});

struct BatchSummary {
  int schema_version = kRecordSchemaVersion;
  std::string method;
  std::string target;
  std::string restriction;
  int seeds = 0;
  int succeeded = 0;
  double success_rate = 0;      // succeeded / seeds
  int steps_min = 0;
  double steps_median = 0;
  int steps_max = 0;
  // Log-spaced step-count histogram: edges {0, 1, 10^w, 10^2w, ...}; counts
  // cover [edge_i, edge_{i+1}) and sum to `seeds`.
  std::vector<double> hist_edges;
  std::vector<int> hist_counts;
};

// decades_per_bin sets the histogram bin width in log10 units.
BatchSummary summarize_batch(const std::vector<RunRecord>& records,
                             double decades_per_bin = 0.25);

std::string to_json(const BatchSummary& summary);
std::string to_csv(const BatchSummary& summary);

struct VerifyOutcome {
  int qubits = 0;
  double infidelity = 1.0;
  std::string detail;  // human-readable note on what was recomputed
};

// Recomputes the achieved accuracy of a stored parameter set against a
// freshly built target.  The file's last non-empty line must be either a
// RunRecord or a bare object {"n": int, "params": [{"word", "value"}, ...]}.
// For geodesic and gd records the unitary infidelity is recomputed under
// the record's fidelity convention; for sgd records the validation batch is
// rebuilt from the recorded seed so the reported statistic is reproduced.
// Throws on parse errors, wrong-length parameter sets, or a qubit-count
// mismatch with the target.
VerifyOutcome verify_params_file(const std::string& path, const ExperimentSpec& target_spec);

}  // namespace geosynth
