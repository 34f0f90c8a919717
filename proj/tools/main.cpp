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
//
// geosynth command line. Subcommands:
//   synth   one synthesis run, record appended to a JSONL file
//   batch   seed sweep with per-seed records and an aggregate summary
//   verify  recompute the infidelity of stored parameters against a target
//   gates   list built-in targets and restriction sets
//
// Exit codes: 0 success (synth/verify: converged/within threshold),
// 2 completed without reaching the threshold, 1 usage or runtime error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "geosynth/harness.hpp"
#include "geosynth/pauli.hpp"

namespace {

using geosynth::ExperimentSpec;

// Flag values shared by synth and batch; defaults mirror the config structs.
struct ExperimentFlags {
  std::string target = "toffoli";
  std::string restriction = "two-local";
  std::string method = "geodesic";
  std::string ansatz = "auto";
  double eps = 1e-3;
  int max_steps = -1;  // -1: keep the per-method default
  bool phase_invariant = false;
  double eta = 1.0;
  double delta_max = 10.0;
  double ls_tol = 1e-6;
  double init_scale = 1.0;
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int d_train = 200;
  int d_test = 100;
  double lambda0 = 1.0;
  double kappa = 0.005;
};

std::string default_out_path(const char* filename) {
  const char* dir = std::getenv("GEOSYNTH_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return filename;
  return (std::filesystem::path(dir) / filename).string();
}

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--target", f.target,
                  "Target gate: toffoli | fredkin | wz:K | wx:K | file:PATH")
      ->capture_default_str();
  cmd->add_option("--restriction", f.restriction,
                  "Allowed interaction terms: all | two-local | file:PATH")
      ->capture_default_str();
  cmd->add_option("--method", f.method, "Optimizer: geodesic | gd | sgd")
      ->check(CLI::IsMember({"geodesic", "gd", "sgd"}))
      ->capture_default_str();
  cmd->add_option("--ansatz", f.ansatz,
                  "Symmetry-subspace constraint (geodesic): auto = on up to 4 qubits")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  cmd->add_option("--eps", f.eps, "Convergence threshold on infidelity")->capture_default_str();
  cmd->add_option("--max-steps", f.max_steps,
                  "Step limit; defaults to 5000 for geodesic and 50000 for gd and sgd");
  cmd->add_flag("--phase-invariant", f.phase_invariant,
                "Score fidelity up to a global phase (geodesic and gd only)");
  cmd->add_option("--eta", f.eta, "geodesic: escape step scale")->capture_default_str();
  cmd->add_option("--delta-max", f.delta_max, "geodesic: line-search upper bound")
      ->capture_default_str();
  cmd->add_option("--ls-tol", f.ls_tol, "geodesic: line-search interval tolerance")
      ->capture_default_str();
  cmd->add_option("--init-scale", f.init_scale,
                  "Initial parameters drawn uniformly from [-scale, scale]")
      ->capture_default_str();
  cmd->add_option("--lr", f.lr, "gd: learning rate")->capture_default_str();
  cmd->add_option("--beta1", f.beta1, "gd: first-moment decay")->capture_default_str();
  cmd->add_option("--beta2", f.beta2, "gd: second-moment decay")->capture_default_str();
  cmd->add_option("--adam-eps", f.adam_eps, "gd: update regularizer")->capture_default_str();
  cmd->add_option("--d-train", f.d_train, "sgd: fresh sample states per step")
      ->capture_default_str();
  cmd->add_option("--d-test", f.d_test, "sgd: fixed validation states")->capture_default_str();
  cmd->add_option("--lambda0", f.lambda0, "sgd: initial learning rate")->capture_default_str();
  cmd->add_option("--kappa", f.kappa, "sgd: learning-rate decay")->capture_default_str();
}

ExperimentSpec spec_from_flags(const ExperimentFlags& f) {
  ExperimentSpec spec;
  spec.target_text = f.target;
  spec.restriction_text = f.restriction;
  spec.method = geosynth::method_from_name(f.method);
  if (spec.method == geosynth::Method::Sgd && f.phase_invariant)
    throw std::invalid_argument(
        "--phase-invariant does not apply to sgd; the state-averaged objective is already "
        "insensitive to a global phase");
  if (f.max_steps != -1 && f.max_steps < 1)
    throw std::invalid_argument("--max-steps must be positive");

  spec.geodesic.epsilon = f.eps;
  spec.geodesic.eta = f.eta;
  spec.geodesic.delta_max = f.delta_max;
  spec.geodesic.ls_tol = f.ls_tol;
  spec.geodesic.init_scale = f.init_scale;
  spec.geodesic.phase_invariant = f.phase_invariant;

  spec.gd.learning_rate = f.lr;
  spec.gd.beta1 = f.beta1;
  spec.gd.beta2 = f.beta2;
  spec.gd.adam_eps = f.adam_eps;
  spec.gd.epsilon = f.eps;
  spec.gd.phase_invariant = f.phase_invariant;

  spec.sgd.d_train = f.d_train;
  spec.sgd.d_test = f.d_test;
  spec.sgd.lambda0 = f.lambda0;
  spec.sgd.kappa = f.kappa;
  spec.sgd.epsilon = f.eps;

  if (f.max_steps != -1) {
    spec.geodesic.max_steps = f.max_steps;
    spec.gd.max_steps = f.max_steps;
    spec.sgd.max_steps = f.max_steps;
  }
  return spec;
}

void apply_ansatz_mode(ExperimentSpec& spec, const geosynth::ResolvedExperiment& resolved,
                       const std::string& mode) {
  spec.geodesic.use_ansatz = mode == "on" || (mode == "auto" && resolved.qubits <= 4);
}

int run_synth(const ExperimentFlags& f, std::uint64_t seed, const std::string& out_path) {
  ExperimentSpec spec = spec_from_flags(f);
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  apply_ansatz_mode(spec, resolved, f.ansatz);

  const geosynth::RunRecord record = geosynth::execute_run(spec, resolved, seed);
  {
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << geosynth::to_json_line(record) << '\n';
  }
  std::cout << std::setprecision(10) << "method=" << record.method
            << " target=" << record.target << " restriction=" << record.restriction
            << " qubits=" << record.qubits << " seed=" << record.seed
            << " ansatz=" << (record.ansatz_effective ? "active" : "inactive") << '\n'
            << "converged=" << (record.converged ? "yes" : "no") << " steps=" << record.steps
            << " final_infidelity=" << record.final_infidelity
            << " wall_time_s=" << record.wall_time_s << '\n'
            << "record appended to " << out_path << '\n';
  return record.converged ? 0 : 2;
}

int run_batch_cmd(const ExperimentFlags& f, const geosynth::BatchOptions& options,
                  const std::string& out_path, std::string summary_path,
                  const std::string& csv_path, double hist_decades) {
  ExperimentSpec spec = spec_from_flags(f);
  const geosynth::ResolvedExperiment resolved = geosynth::resolve_experiment(spec);
  apply_ansatz_mode(spec, resolved, f.ansatz);

  const std::vector<geosynth::RunRecord> records =
      geosynth::run_batch(spec, options, [](const geosynth::RunRecord& rec) {
        std::cerr << "seed " << rec.seed << ": ";
        if (!rec.error.empty())
          std::cerr << "error (" << rec.error << ")";
        else
          std::cerr << (rec.converged ? "converged" : "stopped") << " steps=" << rec.steps
                    << " final_infidelity=" << rec.final_infidelity;
        std::cerr << '\n';
      });

  {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    for (const geosynth::RunRecord& rec : records) out << geosynth::to_json_line(rec) << '\n';
  }

  const geosynth::BatchSummary summary = geosynth::summarize_batch(records, hist_decades);
  if (summary_path.empty()) summary_path = out_path + ".summary.json";
  {
    std::ofstream out(summary_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open summary file: " + summary_path);
    out << geosynth::to_json(summary) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open summary file: " + csv_path);
    out << geosynth::to_csv(summary);
  }

  std::cout << std::setprecision(10) << "seeds=" << summary.seeds
            << " succeeded=" << summary.succeeded << " success_rate=" << summary.success_rate
            << '\n'
            << "steps min/median/max = " << summary.steps_min << " / " << summary.steps_median
            << " / " << summary.steps_max << '\n'
            << "records written to " << out_path << '\n'
            << "summary written to " << summary_path << '\n';
  return 0;
}

int run_verify(const std::string& target, const std::string& params_path, double eps,
               bool phase_invariant) {
  ExperimentSpec spec;
  spec.target_text = target;
  spec.geodesic.phase_invariant = phase_invariant;  // convention for bare parameter vectors
  const geosynth::VerifyOutcome outcome = geosynth::verify_params_file(params_path, spec);
  const bool pass = outcome.infidelity < eps;
  std::cout << std::setprecision(10) << "target=" << target << " qubits=" << outcome.qubits
            << " infidelity=" << outcome.infidelity << '\n'
            << "recomputed as: " << outcome.detail << '\n'
            << (pass ? "PASS" : "FAIL") << " at eps=" << eps << '\n';
  return pass ? 0 : 2;
}

int run_gates() {
  std::cout << "available targets:\n"
            << "  toffoli n=3 N=8\n"
            << "  fredkin n=3 N=8\n"
            << "  wz:K n=K N=2^K for K >= 2 (phase on odd-weight basis states)\n"
            << "  wx:K n=K N=2^K for K >= 2 (X-basis conjugate of wz:K)\n"
            << "  file:PATH dimensions read from the file (JSON or CSV)\n"
            << "restriction sets:\n"
            << "  all        every non-identity term, 4^n - 1 of them\n"
            << "  two-local  terms acting on at most two qubits\n"
            << "  file:PATH  explicit term words, one per line\n"
            << "two-local term counts:\n";
  for (int n = 1; n <= 6; ++n)
    std::cout << "  n=" << n << " -> " << geosynth::RestrictionMask::two_local(n).count()
              << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geosynth: synthesize restricted-interaction Hamiltonians for target gates"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read option defaults from an INI/TOML file");

  ExperimentFlags synth_flags;
  std::uint64_t synth_seed = 0;
  std::string synth_out = default_out_path("runs.jsonl");
  CLI::App* synth = app.add_subcommand("synth", "Run one synthesis and record it");
  add_experiment_flags(synth, synth_flags);
  synth->add_option("--seed", synth_seed, "Run seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Record file, JSON lines, appended")
      ->capture_default_str();

  ExperimentFlags batch_flags;
  geosynth::BatchOptions batch_options;
  std::string batch_out = default_out_path("batch.jsonl");
  std::string batch_summary;
  std::string batch_csv;
  double hist_decades = 0.25;
  CLI::App* batch = app.add_subcommand("batch", "Run a seed sweep and summarize it");
  add_experiment_flags(batch, batch_flags);
  batch->add_option("--seeds", batch_options.seeds,
                    "Number of runs, seeded seed-base .. seed-base + seeds - 1")
      ->capture_default_str();
  batch->add_option("--seed-base", batch_options.seed_base, "First seed")->capture_default_str();
  batch->add_option("--parallel", batch_options.parallel, "Worker threads")
      ->capture_default_str();
  batch->add_option("--out", batch_out, "Record file, JSON lines, overwritten")
      ->capture_default_str();
  batch->add_option("--summary", batch_summary, "Summary JSON path; default OUT.summary.json");
  batch->add_option("--summary-csv", batch_csv, "Also write the summary as CSV");
  batch->add_option("--hist-decades", hist_decades,
                    "Histogram bin width, in decades of step count")
      ->capture_default_str();

  std::string verify_target = "toffoli";
  std::string verify_params;
  double verify_eps = 1e-3;
  bool verify_phase_invariant = false;
  CLI::App* verify =
      app.add_subcommand("verify", "Recompute stored parameters against a target");
  verify->add_option("--target", verify_target, "Target gate spec")->capture_default_str();
  verify->add_option("--params", verify_params, "Run record (JSONL) or bare parameter file")
      ->required();
  verify->add_option("--eps", verify_eps, "Pass threshold")->capture_default_str();
  verify->add_flag("--phase-invariant", verify_phase_invariant,
                   "Score bare parameter vectors up to a global phase");

  CLI::App* gates = app.add_subcommand("gates", "List built-in targets and restriction sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) return run_synth(synth_flags, synth_seed, synth_out);
    if (batch->parsed())
      return run_batch_cmd(batch_flags, batch_options, batch_out, batch_summary, batch_csv,
                           hist_decades);
    if (verify->parsed())
      return run_verify(verify_target, verify_params, verify_eps, verify_phase_invariant);
    if (gates->parsed()) return run_gates();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
