#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lambda_bound/benders.hpp"
#include "lambda_bound/errors.hpp"
#include "lambda_bound/formulations.hpp"
#include "lambda_bound/instance.hpp"
#include "lambda_bound/oracle.hpp"
#include "lambda_bound/parallel.hpp"
#include "lambda_bound/simplex.hpp"
#include "lambda_bound/validator.hpp"

namespace fs = std::filesystem;

namespace lambda_bound::cli {
namespace {

// Bad invocation or unreadable input; exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kModels = {"lp-rwap", "lp-rwap-ppp", "lp-r1", "lp-r2", "lp-r3"};

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Instance read_instance(const std::string& path) {
  try {
    return load_instance_file(path);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

Formulation build(const Instance& inst, const std::string& model) {
  if (model == "lp-rwap") return build_lp_rwap_agg(inst);
  if (model == "lp-rwap-ppp") return build_ip_rwap_ppp(inst, true);
  if (model == "lp-r1") return build_ip_r1(inst, true);
  if (model == "lp-r2") return build_ip_r2(inst, true);
  if (model == "lp-r3") return build_lp_r3(inst);
  throw UsageError("unknown model " + model);
}

long ms_since(std::chrono::steady_clock::time_point start) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count());
}

RunRecord blank_record(const Instance& inst, const std::string& name, const std::string& model,
                       const std::string& method) {
  RunRecord r;
  r.name = name;
  r.nodes = inst.num_nodes();
  r.edges = inst.num_edges();
  r.requests = inst.num_requests();
  r.model = model;
  r.method = method;
  return r;
}

struct SolveRun {
  RunRecord record;
  bool ok = false;
  std::vector<IterationRecord> log;
};

SolveRun solve_direct(const Instance& inst, const std::string& name, const std::string& model) {
  SolveRun run;
  run.record = blank_record(inst, name, model, "direct");
  const auto start = std::chrono::steady_clock::now();
  const Solution sol = solve(build(inst, model).model);
  run.record.elapsed_ms = ms_since(start);
  run.record.iterations = sol.iterations;
  run.record.status = to_string(sol.status);
  run.ok = sol.status == SolveStatus::kOptimal;
  if (run.ok) run.record.objective = sol.objective;
  return run;
}

SolveRun solve_benders(const Instance& inst, const std::string& name,
                       const BendersOptions& options) {
  SolveRun run;
  run.record = blank_record(inst, name, "lp-r3", "benders");
  const auto start = std::chrono::steady_clock::now();
  BendersResult res = solve_lp_r3_benders(inst, options);
  run.record.elapsed_ms = ms_since(start);
  run.record.iterations = res.iterations;
  run.record.cuts = res.cuts_added;
  run.record.status = to_string(res.status);
  run.ok = res.status == BendersStatus::kConverged;
  if (run.ok) run.record.objective = res.lower_bound;
  run.log = std::move(res.log);
  return run;
}

void append_record(const std::string& path, const RunRecord& record) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream f(path, std::ios::app | std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  if (fresh) f << csv_header();
  f << csv_row(record);
}

std::optional<double> read_ub(const fs::path& instance_path) {
  fs::path candidates[] = {fs::path(instance_path).replace_extension(".ub"),
                           fs::path(instance_path.string() + ".ub")};
  for (const fs::path& p : candidates) {
    std::ifstream f(p);
    if (!f) continue;
    double ub;
    if (!(f >> ub)) throw UsageError(p.string() + ": expected one number");
    return ub;
  }
  return std::nullopt;
}

void add_gen(CLI::App& app, std::function<int()>& action, std::ostream& out) {
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->require_subcommand(1);

  struct CycleArgs { int m = 0, n = 1, k = 80; std::string out; };
  auto cycle_args = std::make_shared<CycleArgs>();
  auto* cycle = gen->add_subcommand("cycle", "Cycle of m nodes, n requests across the chord");
  cycle->add_option("--m", cycle_args->m, "Cycle length")->required()->check(CLI::Range(3, 1 << 20));
  cycle->add_option("--n", cycle_args->n, "Requests")->check(CLI::NonNegativeNumber);
  cycle->add_option("--k", cycle_args->k, "Wavelengths")->check(CLI::PositiveNumber);
  cycle->add_option("-o,--out", cycle_args->out, "Output file (default stdout)");
  cycle->callback([&action, &out, cycle_args] {
    action = [&out, cycle_args] {
      Instance inst;
      try {
        inst = gen_cycle(cycle_args->m, cycle_args->n, cycle_args->k);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_text(cycle_args->out, save_instance(inst), out);
      return kOk;
    };
  });

  struct RandomArgs {
    int nodes = 0, extra = 3, requests = 5, k = 80;
    std::uint64_t seed = 1;
    std::string out;
  };
  auto random_args = std::make_shared<RandomArgs>();
  auto* random = gen->add_subcommand("random", "Seeded 2-edge-connected random instance");
  random->add_option("--nodes", random_args->nodes, "Node count")->required();
  random->add_option("--extra", random_args->extra, "Chords added to the base cycle");
  random->add_option("--requests", random_args->requests, "Requests");
  random->add_option("--k", random_args->k, "Wavelengths");
  random->add_option("--seed", random_args->seed, "Generator seed");
  random->add_option("-o,--out", random_args->out, "Output file (default stdout)");
  random->callback([&action, &out, random_args] {
    action = [&out, random_args] {
      Instance inst;
      try {
        inst = gen_random(random_args->nodes, random_args->extra, random_args->requests,
                          random_args->k, random_args->seed);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_text(random_args->out, save_instance(inst), out);
      return kOk;
    };
  });
}

void add_solve(CLI::App& app, std::function<int()>& action, std::ostream& out,
               std::ostream& err) {
  struct Args {
    std::string instance, model = "lp-r3", method = "direct", record, log;
    bool parallel = false;
    int max_iterations = 500;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("solve", "Solve one relaxation and print its value");
  cmd->add_option("instance", a->instance, "Instance file")->required();
  cmd->add_option("--model", a->model, "Relaxation")->check(CLI::IsMember(kModels));
  cmd->add_option("--method", a->method, "direct or benders")
      ->check(CLI::IsMember({"direct", "benders"}));
  cmd->add_option("--record", a->record, "Append the run record to this CSV file");
  cmd->add_option("--log", a->log, "Write the Benders iteration log (CSV) here");
  cmd->add_flag("--parallel", a->parallel, "Solve Benders subproblems concurrently");
  cmd->add_option("--max-iterations", a->max_iterations, "Benders round limit")
      ->check(CLI::PositiveNumber);
  cmd->callback([&action, &out, &err, a] {
    action = [&out, &err, a] {
      if (a->method == "benders" && a->model != "lp-r3")
        throw UsageError("--method benders requires --model lp-r3");
      if (!a->log.empty() && a->method != "benders")
        throw UsageError("--log applies to --method benders only");
      const Instance inst = read_instance(a->instance);
      const std::string name = inst.name.empty() ? fs::path(a->instance).stem().string()
                                                 : inst.name;
      SolveRun run;
      if (a->method == "benders") {
        BendersOptions options;
        options.max_iterations = a->max_iterations;
        options.parallel_subproblems = a->parallel;
        run = solve_benders(inst, name, options);
        if (!a->log.empty()) {
          std::ostringstream csv;
          write_benders_log_csv(csv, run.log);
          write_text(a->log, csv.str(), out);
        }
      } else {
        run = solve_direct(inst, name, a->model);
      }
      if (!a->record.empty()) append_record(a->record, run.record);
      if (!run.ok) {
        err << a->model << ' ' << a->method << ": " << run.record.status << '\n';
        return kFailed;
      }
      out << fixed(*run.record.objective) << '\n';
      err << a->model << ' ' << a->method << ": " << run.record.status << ", "
          << run.record.iterations << " iterations";
      if (run.record.cuts) err << ", " << *run.record.cuts << " cuts";
      err << ", " << run.record.elapsed_ms << " ms\n";
      return kOk;
    };
  });
}

void add_validate(CLI::App& app, std::function<int()>& action, std::ostream& out,
                  std::ostream& err) {
  struct Args {
    std::string instance, solution;
    std::optional<double> lower_bound;
    bool ignore_failures = false;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("validate", "Check a solution and report its objective");
  cmd->add_option("instance", a->instance, "Instance file")->required();
  cmd->add_option("solution", a->solution, "Solution file")->required();
  cmd->add_option("--lower-bound", a->lower_bound, "Report the gap to this bound");
  cmd->add_flag("--ignore-failures", a->ignore_failures,
                "Check the working assignment alone");
  cmd->callback([&action, &out, &err, a] {
    action = [&out, &err, a] {
      const Instance inst = read_instance(a->instance);
      RwappSolution sol;
      try {
        sol = load_solution_file(a->solution);
      } catch (const std::exception& e) {
        throw UsageError(a->solution + ": " + e.what());
      }
      ValidationReport report;
      try {
        report = validate(inst, sol, {.ignore_failures = a->ignore_failures});
      } catch (const ValidationError& e) {
        err << "invalid: " << e.what() << '\n';
        return kFailed;
      }
      out << (report.feasible ? "feasible" : "infeasible") << ", objective "
          << report.objective << '\n';
      for (const Violation& v : report.violations)
        out << "  " << to_string(v.kind) << ": " << v.message << '\n';
      if (a->lower_bound) {
        if (!(*a->lower_bound > 0)) throw UsageError("--lower-bound must be positive");
        out << "gap " << fixed(gap_percent(*a->lower_bound, report.objective)) << "%\n";
      }
      return report.feasible ? kOk : kFailed;
    };
  });
}

void add_bench(CLI::App& app, std::function<int()>& action, std::ostream& out,
               std::ostream& err) {
  struct Args { std::string dir, out; };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand(
      "bench", "LP_RWAP and LP_R3 (Benders) for every instance in a directory, as CSV");
  cmd->add_option("dir", a->dir, "Directory of *.json instances")->required();
  cmd->add_option("-o,--out", a->out, "CSV file (default stdout)");
  cmd->callback([&action, &out, &err, a] {
    action = [&out, &err, a] {
      std::error_code ec;
      if (!fs::is_directory(a->dir, ec)) throw UsageError(a->dir + " is not a directory");
      std::vector<fs::path> paths;
      for (const auto& entry : fs::directory_iterator(a->dir)) {
        const std::string file = entry.path().filename().string();
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        if (file.ends_with(".solution.json")) continue;
        paths.push_back(entry.path());
      }
      std::sort(paths.begin(), paths.end());

      std::vector<Instance> instances;
      std::vector<std::optional<double>> ubs;
      for (const fs::path& p : paths) {
        instances.push_back(read_instance(p.string()));
        ubs.push_back(read_ub(p));
      }

      std::vector<RunRecord> rows(paths.size());
      std::vector<char> ok(paths.size(), 0);
      parallel_for(static_cast<int>(paths.size()), [&](int i) {
        const Instance& inst = instances[i];
        const std::string name =
            inst.name.empty() ? paths[i].stem().string() : inst.name;
        SolveRun rwap = solve_direct(inst, name, "lp-rwap");
        SolveRun r3 = solve_benders(inst, name, {});
        RunRecord& row = rows[i];
        row = r3.record;
        if (r3.ok && rwap.ok && *rwap.record.objective > 0)
          row.im_pct = improvement_percent(*r3.record.objective, *rwap.record.objective);
        if (r3.ok && ubs[i] && *r3.record.objective > 0)
          row.gap_pct = gap_percent(*r3.record.objective, *ubs[i]);
        ok[i] = r3.ok && rwap.ok;
      });
      std::stable_sort(rows.begin(), rows.end(),
                       [](const RunRecord& x, const RunRecord& y) { return x.name < y.name; });

      std::string csv = csv_header();
      for (const RunRecord& r : rows) csv += csv_row(r);
      write_text(a->out, csv, out);
      int failed = 0;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        if (ok[i]) continue;
        ++failed;
        err << paths[i].string() << ": not solved\n";
      }
      return failed ? kFailed : kOk;
    };
  });
}

void add_chain_check(CLI::App& app, std::function<int()>& action, std::ostream& out) {
  auto path = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("chain-check", "Oracle optimum against the relaxation chain");
  cmd->add_option("instance", *path, "Instance file")->required();
  cmd->callback([&action, &out, path] {
    action = [&out, path] {
      const ChainReport r = verify_chain(read_instance(*path), {});
      const std::pair<const char*, double> values[] = {
          {"IP_RWAP-PPP (oracle)", r.oracle_ppp}, {"LP_RWAP-PPP", r.lp_ppp},
          {"LP_R1", r.lp_r1}, {"LP_R2", r.lp_r2}, {"LP_R3", r.lp_r3},
          {"LP_RWAP", r.lp_rwap}};
      for (const auto& [label, value] : values) {
        char line[96];
        std::snprintf(line, sizeof line, "%-22s%s\n", label, fixed(value).c_str());
        out << line;
      }
      for (const auto& c : r.checks) out << (c.pass ? "ok    " : "FAIL  ") << c.relation << '\n';
      out << (r.passes() ? "PASS" : "FAIL") << '\n';
      return r.passes() ? kOk : kFailed;
    };
  });
}

void add_export(CLI::App& app, std::function<int()>& action, std::ostream& out) {
  struct Args { std::string instance, model = "lp-r3", format = "lp", out; };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("export", "Write a relaxation in LP or MPS format");
  cmd->add_option("instance", a->instance, "Instance file")->required();
  cmd->add_option("--model", a->model, "Relaxation")->check(CLI::IsMember(kModels));
  cmd->add_option("--format", a->format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));
  cmd->add_option("-o,--out", a->out, "Output file (default stdout)");
  cmd->callback([&action, &out, a] {
    action = [&out, a] {
      const Formulation f = build(read_instance(a->instance), a->model);
      write_text(a->out, a->format == "mps" ? export_mps(f.model) : export_lp(f.model), out);
      return kOk;
    };
  });
}

void add_oracle(CLI::App& app, std::function<int()>& action, std::ostream& out,
                std::ostream& err) {
  struct Args {
    std::string instance;
    bool rwap_only = false;
    OracleLimits limits;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("oracle", "Exact optimum of a small instance by enumeration");
  cmd->add_option("instance", a->instance, "Instance file")->required();
  cmd->add_flag("--rwap-only", a->rwap_only, "Skip the protected problem");
  cmd->add_option("--max-paths", a->limits.max_simple_paths_per_pair,
                  "Simple paths enumerated per request")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-assignments", a->limits.max_assignments, "Search node budget")
      ->check(CLI::PositiveNumber);
  cmd->callback([&action, &out, &err, a] {
    action = [&out, &err, a] {
      const Instance inst = read_instance(a->instance);
      try {
        if (!a->rwap_only)
          out << "IP_RWAP-PPP " << fixed(exact_rwap_ppp(inst, a->limits)) << '\n';
        out << "IP_RWAP     " << fixed(exact_rwap(inst, a->limits)) << '\n';
      } catch (const OracleInfeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return kFailed;
      }
      return kOk;
    };
  });
}

}  // namespace

std::string csv_header() {
  return "name,V,E,D,model,method,objective,iterations,cuts,elapsed_ms,status,im_pct,gap_pct\n";
}

std::string csv_row(const RunRecord& r) {
  auto opt = [](const std::optional<double>& x) { return x ? fixed(*x) : std::string(); };
  std::ostringstream s;
  s << r.name << ',' << r.nodes << ',' << r.edges << ',' << r.requests << ',' << r.model << ','
    << r.method << ',' << opt(r.objective) << ',' << r.iterations << ','
    << (r.cuts ? std::to_string(*r.cuts) : std::string()) << ',' << r.elapsed_ms << ','
    << r.status << ',' << opt(r.im_pct) << ',' << opt(r.gap_pct) << '\n';
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Lower bounds for routing and wavelength assignment with partial path protection",
               "lambda-bound");
  app.require_subcommand(1);
  std::function<int()> action;
  add_gen(app, action, out);
  add_solve(app, action, out, err);
  add_validate(app, action, out, err);
  add_bench(app, action, out, err);
  add_chain_check(app, action, out);
  add_export(app, action, out);
  add_oracle(app, action, out, err);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace lambda_bound::cli
