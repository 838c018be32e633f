// Copyright 2026 The coherence-forge developers
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
// coherence-forge command line: robustness of asymmetry/coherence, witness
// and data-driven estimates, discrimination games, and batch scatter runs.
//
// Exit codes: 0 optimal, 1 parse/validation error, 2 numerical failure,
// 3 infeasible.

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cforge/discrimination.hpp"
#include "cforge/json_io.hpp"
#include "cforge/randgen.hpp"
#include "cforge/robustness.hpp"

namespace {

using namespace cforge;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitInfeasible = 3;

int status_exit_code(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return kExitOk;
    case SdpStatus::kInfeasible: return kExitInfeasible;
    case SdpStatus::kNumericalFailure: return kExitNumerical;
  }
  return kExitNumerical;
}

struct SolverFlags {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iters = 100;

  SolverOptions options() const {
    SolverOptions opts;
    opts.gap_tol = gap_tol;
    opts.feas_tol = feas_tol;
    opts.max_iterations = max_iters;
    return opts;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--gap-tol", flags.gap_tol, "duality gap tolerance");
  cmd->add_option("--feas-tol", flags.feas_tol, "feasibility tolerance");
  cmd->add_option("--max-iters", flags.max_iters, "iteration limit");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

// Rep specifications: "cyclic:d", "trivial:d", or a JSON file path.
GroupRep parse_rep(const std::string& spec) {
  if (spec.rfind("cyclic:", 0) == 0)
    return GroupRep::cyclic(std::stoul(spec.substr(7)));
  if (spec.rfind("trivial:", 0) == 0)
    return GroupRep::trivial(std::stoul(spec.substr(8)));
  return rep_from_json(load_json_file(spec));
}

DensityMatrix load_state(const std::string& path) {
  return state_from_json(load_json_file(path));
}

std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> out;
  std::stringstream ss(joined);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_priors(const std::string& spec, std::size_t count) {
  if (spec == "uniform")
    return std::vector<double>(count, 1.0 / static_cast<double>(count));
  std::vector<double> priors;
  for (const auto& tok : split_list(spec)) priors.push_back(std::stod(tok));
  return priors;
}

void emit(const Json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write file: " + out_path);
  out << payload.dump(2) << "\n";
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* env = std::getenv("COHERENCE_FORGE_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) threads = static_cast<std::size_t>(parsed);
  }
  return std::min(threads, std::max<std::size_t>(jobs, 1));
}

// ---------------------------------------------------------------------------
// Command handlers (shared between CLI flags and JSON job files).
// ---------------------------------------------------------------------------

int run_roa(const GroupRep& rep, const DensityMatrix& state,
            const SolverFlags& flags, const std::string& out) {
  RoaOptions opts;
  opts.solver = flags.options();
  const RobustnessCertificate cert = robustness_of_asymmetry(rep, state, opts);
  emit(certificate_to_json(cert), out);
  return status_exit_code(cert.status);
}

int run_roc(const DensityMatrix& state, bool verify_sdp,
            const SolverFlags& flags, const std::string& out) {
  RocOptions opts;
  opts.solver = flags.options();
  opts.verify_sdp = verify_sdp;
  const RobustnessCertificate cert = robustness_of_coherence(state, opts);
  Json payload = certificate_to_json(cert);
  payload["bounds"] = bound_report_to_json(bound_report(state));
  emit(payload, out);
  return status_exit_code(cert.status);
}

int run_bounds(const DensityMatrix& state, const std::string& out) {
  emit(bound_report_to_json(bound_report(state)), out);
  return kExitOk;
}

int run_witness_from_data(const GroupRep& rep,
                          const std::vector<HermitianMatrix>& observables,
                          const std::vector<double>& values,
                          const SolverFlags& flags, const std::string& out) {
  const SdpSolution sol =
      solve(compile_witness_from_data(observables, values, rep),
            flags.options());
  Json payload{{"status", to_string(sol.status)},
               {"iterations", sol.iterations}};
  if (sol.status == SdpStatus::kOptimal) {
    payload["value"] = -sol.primal_objective;
    const std::size_t k = observables.size();
    std::vector<double> coefficients(sol.x.begin(), sol.x.begin() + k);
    payload["coefficients"] = coefficients;
    payload["offset"] = sol.x[k];
    ComplexMatrix w(rep.dim(), rep.dim());
    for (std::size_t i = 0; i < k; ++i) w += sol.x[i] * observables[i].mat();
    w += sol.x[k] * ComplexMatrix::identity(rep.dim());
    payload["witness"] = matrix_to_json(w);
  } else if (!sol.message.empty()) {
    payload["message"] = sol.message;
  }
  emit(payload, out);
  return status_exit_code(sol.status);
}

int run_estimate_from_data(const GroupRep& rep,
                           const std::vector<HermitianMatrix>& observables,
                           const std::vector<double>& values,
                           const SolverFlags& flags, const std::string& out) {
  const SdpSolution sol =
      solve(compile_data_consistent_roa(observables, values, rep),
            flags.options());
  Json payload{{"status", to_string(sol.status)},
               {"iterations", sol.iterations}};
  if (sol.status == SdpStatus::kOptimal) {
    payload["value"] = std::max(0.0, sol.primal_objective);
    payload["duality_gap"] = sol.duality_gap;
  } else if (!sol.message.empty()) {
    payload["message"] = sol.message;
  }
  emit(payload, out);
  return status_exit_code(sol.status);
}

int run_discriminate(const GroupRep& rep, const DensityMatrix& probe,
                     const std::vector<double>& priors,
                     const SolverFlags& flags, const std::string& out) {
  const DiscriminationGame game(rep, priors, probe);
  const SolverOptions solver = flags.options();
  const AdvantageReport report = advantage_ratio(game, solver);
  RoaOptions roa_opts;
  roa_opts.solver = solver;
  const RobustnessCertificate cert =
      robustness_of_asymmetry(rep, probe, roa_opts);
  Json payload{{"p_succ", report.optimal_success},
               {"baseline", report.baseline},
               {"ratio", report.ratio},
               {"roa", cert.value},
               {"gap", std::abs(report.ratio - (1.0 + cert.value))}};
  emit(payload, out);
  return status_exit_code(cert.status);
}

struct ScatterRow {
  double c_l1, c_r, lower, upper, f_bound, chain1;
  bool ok;
};

int run_scatter(std::size_t d, std::size_t count, std::uint64_t seed,
                const SolverFlags& flags, const std::string& out) {
  if (d < 2) throw std::invalid_argument("scatter: --d must be at least 2");
  if (count == 0) throw std::invalid_argument("scatter: --n must be positive");
  std::vector<ScatterRow> rows(count);
  const SeededSource root(seed);
  std::atomic<std::size_t> next{0};
  const SolverOptions solver = flags.options();

  auto work = [&]() {
    // Each worker owns its representation; rows derive their substream from
    // (seed, index), so the output is independent of the schedule.
    const GroupRep rep = GroupRep::cyclic(d);
    const auto basis = fixed_point_basis(rep);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) break;
      SeededSource src = root.split(i);
      const DensityMatrix rho = random_density_matrix(d, d, src);
      ScatterRow row;
      row.c_l1 = l1_coherence(rho);
      row.lower = row.c_l1 / static_cast<double>(d - 1);
      row.upper = row.c_l1;
      row.f_bound = f_lower_bound(row.c_l1, d);
      row.chain1 = bound_chain_purity(rep, rho).values[0];
      const SdpSolution sol = solve(compile_roa_primal(basis, rho), solver);
      row.ok = sol.status == SdpStatus::kOptimal;
      row.c_r = row.ok ? std::max(0.0, sol.primal_objective) : 0.0;
      rows[i] = row;
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = worker_count(count);
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "# seed=" << seed << " d=" << d << " n=" << count
      << " measure=ginibre(rank=d)\n";
  csv << "seed_index,d,c_l1,c_r,lower_l1,upper_l1,f_bound,purity_chain_1\n";
  char buf[512];
  bool all_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    all_ok = all_ok && r.ok;
    std::snprintf(buf, sizeof(buf),
                  "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, d,
                  r.c_l1, r.c_r, r.lower, r.upper, r.f_bound, r.chain1);
    csv << buf;
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(out);
    if (!file) throw std::invalid_argument("cannot write file: " + out);
    file << csv.str();
  }
  return all_ok ? kExitOk : kExitNumerical;
}

// JSON job files: {"command": ..., "rep": "cyclic:3"|{...}, "state": path or
// inline matrix, "solver": {"gap_tol":..,"feas_tol":..,"max_iters":..},
// "seed": ..., "out": ...}.
int run_job(const std::string& path) {
  const Json job = load_json_file(path);
  const std::string command = job.at("command").get<std::string>();
  SolverFlags flags;
  if (job.contains("solver")) {
    const Json& s = job.at("solver");
    flags.gap_tol = s.value("gap_tol", flags.gap_tol);
    flags.feas_tol = s.value("feas_tol", flags.feas_tol);
    flags.max_iters = s.value("max_iters", flags.max_iters);
  }
  const std::string out = job.value("out", std::string());
  auto job_rep = [&]() {
    const Json& r = job.at("rep");
    return r.is_string() ? parse_rep(r.get<std::string>()) : rep_from_json(r);
  };
  auto job_state = [&](const char* key) {
    const Json& s = job.at(key);
    return s.is_string() ? load_state(s.get<std::string>())
                         : state_from_json(s);
  };
  if (command == "roa") return run_roa(job_rep(), job_state("state"), flags, out);
  if (command == "roc")
    return run_roc(job_state("state"), job.value("verify_sdp", false), flags, out);
  if (command == "bounds") return run_bounds(job_state("state"), out);
  if (command == "witness-from-data" || command == "estimate-from-data") {
    std::vector<HermitianMatrix> observables;
    for (const auto& o : job.at("observables")) {
      observables.push_back(o.is_string()
                                ? hermitian_from_json(load_json_file(
                                      o.get<std::string>()))
                                : hermitian_from_json(o));
    }
    const auto values = job.at("values").get<std::vector<double>>();
    return command == "witness-from-data"
               ? run_witness_from_data(job_rep(), observables, values, flags, out)
               : run_estimate_from_data(job_rep(), observables, values, flags, out);
  }
  if (command == "discriminate") {
    const GroupRep rep = job_rep();
    const Json& p = job.at("priors");
    const std::vector<double> priors =
        p.is_string() ? parse_priors(p.get<std::string>(), rep.order())
                      : p.get<std::vector<double>>();
    return run_discriminate(rep, job_state("probe"), priors, flags, out);
  }
  if (command == "scatter") {
    return run_scatter(job.at("d").get<std::size_t>(),
                       job.at("n").get<std::size_t>(),
                       job.value("seed", 0ull), flags, out);
  }
  throw std::invalid_argument("unknown job command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence-forge: robustness of asymmetry and coherence"};
  app.require_subcommand(1);

  SolverFlags flags;
  std::string rep_spec, state_path, probe_path, priors_spec = "uniform";
  std::string observables_spec, values_spec, out_path, job_path;
  bool verify_sdp = false;
  std::size_t dim = 3, count = 100;
  std::uint64_t seed = 0;

  auto* roa = app.add_subcommand("roa", "robustness of asymmetry of a state");
  roa->add_option("--rep", rep_spec, "cyclic:d, trivial:d or rep JSON file")
      ->required();
  roa->add_option("--state", state_path, "state JSON file")->required();
  roa->add_option("--out", out_path, "output path (default stdout)");
  add_solver_flags(roa, flags);

  auto* roc = app.add_subcommand("roc", "robustness of coherence of a state");
  roc->add_option("--state", state_path)->required();
  roc->add_flag("--verify-sdp", verify_sdp,
                "cross-check closed forms against the SDP");
  roc->add_option("--out", out_path);
  add_solver_flags(roc, flags);

  auto* bounds = app.add_subcommand("bounds", "closed-form coherence bounds");
  bounds->add_option("--state", state_path)->required();
  bounds->add_option("--out", out_path);

  auto* witness = app.add_subcommand("witness-from-data",
                                     "best witness from measured expectations");
  witness->add_option("--rep", rep_spec)->required();
  witness->add_option("--observables", observables_spec,
                      "comma-separated observable JSON files")
      ->required();
  witness->add_option("--values", values_spec, "comma-separated expectations")
      ->required();
  witness->add_option("--out", out_path);
  add_solver_flags(witness, flags);

  auto* estimate = app.add_subcommand(
      "estimate-from-data", "minimal robustness compatible with the data");
  estimate->add_option("--rep", rep_spec)->required();
  estimate->add_option("--observables", observables_spec)->required();
  estimate->add_option("--values", values_spec)->required();
  estimate->add_option("--out", out_path);
  add_solver_flags(estimate, flags);

  auto* discriminate =
      app.add_subcommand("discriminate", "channel discrimination game");
  discriminate->add_option("--rep", rep_spec)->required();
  discriminate->add_option("--probe", probe_path)->required();
  discriminate->add_option("--priors", priors_spec,
                           "'uniform' or comma-separated probabilities");
  discriminate->add_option("--out", out_path);
  add_solver_flags(discriminate, flags);

  auto* scatter = app.add_subcommand(
      "scatter", "sample random states and emit the bounds scatter as CSV");
  scatter->add_option("--d", dim, "state dimension");
  scatter->add_option("--n", count, "number of samples");
  scatter->add_option("--seed", seed, "base seed");
  scatter->add_option("--out", out_path);
  add_solver_flags(scatter, flags);

  auto* run = app.add_subcommand("run", "execute a JSON job file");
  run->add_option("job", job_path, "job JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (roa->parsed())
      return run_roa(parse_rep(rep_spec), load_state(state_path), flags, out_path);
    if (roc->parsed())
      return run_roc(load_state(state_path), verify_sdp, flags, out_path);
    if (bounds->parsed()) return run_bounds(load_state(state_path), out_path);
    if (witness->parsed() || estimate->parsed()) {
      std::vector<HermitianMatrix> observables;
      for (const auto& file : split_list(observables_spec))
        observables.push_back(hermitian_from_json(load_json_file(file)));
      std::vector<double> values;
      for (const auto& tok : split_list(values_spec))
        values.push_back(std::stod(tok));
      const GroupRep rep = parse_rep(rep_spec);
      return witness->parsed()
                 ? run_witness_from_data(rep, observables, values, flags, out_path)
                 : run_estimate_from_data(rep, observables, values, flags, out_path);
    }
    if (discriminate->parsed()) {
      const GroupRep rep = parse_rep(rep_spec);
      return run_discriminate(rep, load_state(probe_path),
                              parse_priors(priors_spec, rep.order()), flags,
                              out_path);
    }
    if (scatter->parsed()) return run_scatter(dim, count, seed, flags, out_path);
    if (run->parsed()) return run_job(job_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
