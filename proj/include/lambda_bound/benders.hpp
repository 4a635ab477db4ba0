#pragma once

#include <chrono>
#include <map>
#include <ostream>
#include <vector>

#include "lambda_bound/formulations.hpp"
#include "lambda_bound/instance.hpp"
#include "lambda_bound/simplex.hpp"

namespace lambda_bound {

struct BendersOptions {
  double violation_tol = 1e-7;  // F_tau above this yields a cut
  int max_iterations = 500;
  bool parallel_subproblems = false;
  // Also solve the subproblems the filter skips and log their largest value.
  bool verify_filter = false;
  // After convergence, solve every subproblem at the final wbar.
  bool posthoc_check = true;
  SolveOptions lp;
};

// Cuts grouped by failure. Identical cuts are stored once.
class CutPool {
 public:
  // False when an identical cut is already pooled.
  bool add(const Cut& cut);
  const std::vector<Cut>& cuts(EdgeId tau) const;
  // Every cut in insertion order.
  const std::vector<Cut>& all() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }

 private:
  std::map<EdgeId, std::vector<Cut>> by_failure_;
  std::vector<Cut> order_;
};

enum class BendersStatus { kConverged, kIterationLimit, kInfeasible };
const char* to_string(BendersStatus status);

struct IterationRecord {
  int iter = 0;
  double master_obj = 0.0;
  int n_pi_prime = 0;
  int n_violated = 0;
  double max_violation = 0.0;
  int cuts_total = 0;
  long elapsed_ms = 0;
  // verify_filter only: largest F_tau over the skipped failures, else -1.
  double max_filtered_value = -1.0;
};

struct BendersResult {
  BendersStatus status = BendersStatus::kIterationLimit;
  double lower_bound = 0.0;
  std::vector<double> wbar;
  EdgeId tau0 = -1;
  int iterations = 0;
  int cuts_added = 0;
  long simplex_iterations = 0;
  EdgeId infeasible_failure = -1;  // set when status is kInfeasible
  std::vector<IterationRecord> log;
  std::vector<Cut> cuts;  // pool contents in insertion order

  // posthoc_check only (else -1): max over all failures of F_tau(wbar) and
  // max over pooled cuts of their value at wbar.
  double posthoc_max_subproblem = -1.0;
  double posthoc_max_cut = -1.0;
};

// Failures whose subproblem is known to be zero: tau0 routes no flow over
// either arc of the edge. Sorted ascending.
std::vector<EdgeId> pi_prime_filter(const Formulation& master,
                                    const Solution& master_solution,
                                    double tol = 1e-9);

struct SubproblemOutcome {
  EdgeId failure = -1;
  SolveStatus status = SolveStatus::kOptimal;
  double value = 0.0;
  long iterations = 0;
  std::vector<Cut> cut;  // empty or one cut
};

// Solves F_tau(wbar) and extracts a cut when the value exceeds
// violation_tol.
SubproblemOutcome solve_subproblem(const Instance& instance, EdgeId tau,
                                   const std::vector<double>& wbar,
                                   const BendersOptions& options);

// Restricted master plus cut pool, advanced one round at a time.
class BendersState {
 public:
  BendersState(const Instance& instance, BendersOptions options);

  // Master solve, filter, subproblems, cuts. Returns true once no failure
  // is violated; further calls then change nothing.
  bool iterate_once();

  bool converged() const { return converged_; }
  // Violated failures remained but every cut was already pooled.
  bool stalled() const { return stalled_; }
  bool infeasible() const { return infeasible_failure_ >= 0 || master_infeasible_; }
  EdgeId tau0() const { return tau0_; }
  const Formulation& master() const { return master_; }
  const CutPool& pool() const { return pool_; }
  const std::vector<double>& wbar() const { return wbar_; }
  double master_objective() const { return master_obj_; }
  const std::vector<IterationRecord>& log() const { return log_; }

  // Moves the state into a result, running the post-hoc checks if enabled.
  BendersResult finish();

 private:
  const Instance& instance_;
  BendersOptions options_;
  EdgeId tau0_;
  Formulation master_;
  CutPool pool_;
  std::vector<double> wbar_;
  double master_obj_ = 0.0;
  bool converged_ = false;
  bool master_infeasible_ = false;
  bool stalled_ = false;
  EdgeId infeasible_failure_ = -1;
  long simplex_iterations_ = 0;
  std::vector<IterationRecord> log_;
  std::chrono::steady_clock::time_point start_;
};

// Throws std::invalid_argument when the failure set is empty.
BendersResult solve_lp_r3_benders(const Instance& instance,
                                  const BendersOptions& options = {});

void write_benders_log_csv(std::ostream& out, const std::vector<IterationRecord>& log);

}  // namespace lambda_bound
