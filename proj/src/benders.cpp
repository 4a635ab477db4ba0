#include "lambda_bound/benders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <stdexcept>
#include <string>

#include "lambda_bound/parallel.hpp"

namespace lambda_bound {
namespace {

long elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void require_optimal(const Solution& sol, const char* what) {
  if (sol.status != SolveStatus::kOptimal)
    throw std::runtime_error(std::string("benders: ") + what + " solve ended " +
                             to_string(sol.status));
}

}  // namespace

const char* to_string(BendersStatus status) {
  switch (status) {
    case BendersStatus::kConverged: return "Converged";
    case BendersStatus::kIterationLimit: return "IterationLimit";
    case BendersStatus::kInfeasible: return "Infeasible";
  }
  return "?";
}

bool CutPool::add(const Cut& cut) {
  std::vector<Cut>& list = by_failure_[cut.failure];
  if (std::find(list.begin(), list.end(), cut) != list.end()) return false;
  list.push_back(cut);
  order_.push_back(cut);
  return true;
}

const std::vector<Cut>& CutPool::cuts(EdgeId tau) const {
  static const std::vector<Cut> kNone;
  auto it = by_failure_.find(tau);
  return it == by_failure_.end() ? kNone : it->second;
}

std::vector<EdgeId> pi_prime_filter(const Formulation& master,
                                    const Solution& master_solution, double tol) {
  const VarMap& vm = master.vars;
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < vm.num_edges; ++e) {
    bool idle = true;
    for (int o = 0; idle && o < static_cast<int>(vm.origins.size()); ++o) {
      idle = master_solution.primal[vm.ya(0, o, ArcTable::forward(e))] <= tol &&
             master_solution.primal[vm.ya(0, o, ArcTable::backward(e))] <= tol;
    }
    if (idle) out.push_back(e);
  }
  return out;
}

SubproblemOutcome solve_subproblem(const Instance& instance, EdgeId tau,
                                   const std::vector<double>& wbar,
                                   const BendersOptions& options) {
  const Formulation sp = build_subproblem(instance, tau, wbar);
  const Solution sol = solve(sp.model, options.lp);
  SubproblemOutcome out;
  out.failure = tau;
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (sol.status != SolveStatus::kOptimal) return out;
  out.value = sol.objective;
  if (out.value > options.violation_tol)
    out.cut.push_back(cut_from_duals(sp, wbar, tau, sol, options.violation_tol));
  return out;
}

BendersState::BendersState(const Instance& instance, BendersOptions options)
    : instance_(instance), options_(std::move(options)),
      tau0_(instance.failures.empty() ? -1 : instance.failures.front()),
      start_(std::chrono::steady_clock::now()) {
  if (instance.failures.empty())
    throw std::invalid_argument("benders: failure set is empty");
  if (!(options_.violation_tol > 0))
    throw std::invalid_argument("benders: violation_tol must be positive");
  master_ = build_benders_master(instance, tau0_);
}

bool BendersState::iterate_once() {
  if (converged_ || infeasible()) return converged_;
  IterationRecord rec;
  rec.iter = static_cast<int>(log_.size()) + 1;

  const Solution ms = solve(master_.model, options_.lp);
  simplex_iterations_ += ms.iterations;
  if (ms.status == SolveStatus::kInfeasible) {
    master_infeasible_ = true;
    infeasible_failure_ = tau0_;
    return false;
  }
  require_optimal(ms, "master");
  master_obj_ = ms.objective;
  wbar_.assign(instance_.num_edges(), 0.0);
  for (EdgeId e = 0; e < instance_.num_edges(); ++e)
    wbar_[e] = std::clamp(ms.primal[master_.vars.wbar(e)], 0.0,
                          double(instance_.num_wavelengths));

  const std::vector<EdgeId> skipped = pi_prime_filter(master_, ms);
  std::vector<EdgeId> todo;
  std::set_difference(instance_.failures.begin(), instance_.failures.end(),
                      skipped.begin(), skipped.end(), std::back_inserter(todo));
  std::erase(todo, tau0_);
  rec.n_pi_prime = static_cast<int>(skipped.size());

  std::vector<SubproblemOutcome> outcomes(todo.size());
  parallel_for(
      static_cast<int>(todo.size()),
      [&](int i) { outcomes[i] = solve_subproblem(instance_, todo[i], wbar_, options_); },
      options_.parallel_subproblems);

  int added = 0;
  for (const SubproblemOutcome& out : outcomes) {  // ascending tau
    simplex_iterations_ += out.iterations;
    if (out.status == SolveStatus::kInfeasible) {
      infeasible_failure_ = out.failure;
      break;
    }
    if (out.status != SolveStatus::kOptimal)
      throw std::runtime_error("benders: subproblem solve ended " +
                               std::string(to_string(out.status)));
    if (out.value <= options_.violation_tol) continue;
    ++rec.n_violated;
    rec.max_violation = std::max(rec.max_violation, out.value);
    for (const Cut& cut : out.cut) {
      if (!pool_.add(cut)) continue;
      add_cut(master_, cut,
              "cut_t" + std::to_string(cut.failure) + "_" + std::to_string(pool_.size()));
      ++added;
    }
  }

  if (options_.verify_filter) {
    std::vector<double> values(skipped.size(), 0.0);
    parallel_for(
        static_cast<int>(skipped.size()),
        [&](int i) {
          const Formulation sp = build_subproblem(instance_, skipped[i], wbar_);
          const Solution sol = solve(sp.model, options_.lp);
          require_optimal(sol, "filter check");
          values[i] = sol.objective;
        },
        options_.parallel_subproblems);
    rec.max_filtered_value = 0.0;
    for (double v : values) rec.max_filtered_value = std::max(rec.max_filtered_value, v);
  }

  rec.master_obj = master_obj_;
  rec.cuts_total = pool_.size();
  rec.elapsed_ms = elapsed_since(start_);
  log_.push_back(rec);
  if (infeasible()) return false;
  if (rec.n_violated == 0) converged_ = true;
  else if (added == 0) stalled_ = true;
  return converged_;
}

BendersResult BendersState::finish() {
  BendersResult r;
  r.status = converged_    ? BendersStatus::kConverged
             : infeasible() ? BendersStatus::kInfeasible
                            : BendersStatus::kIterationLimit;
  r.lower_bound = master_obj_;
  r.wbar = wbar_;
  r.tau0 = tau0_;
  r.iterations = static_cast<int>(log_.size());
  r.cuts_added = pool_.size();
  r.infeasible_failure = infeasible_failure_;
  r.cuts = pool_.all();

  if (converged_ && options_.posthoc_check) {
    const std::vector<EdgeId>& all = instance_.failures;
    std::vector<double> values(all.size(), 0.0);
    parallel_for(
        static_cast<int>(all.size()),
        [&](int i) {
          const Formulation sp = build_subproblem(instance_, all[i], wbar_);
          const Solution sol = solve(sp.model, options_.lp);
          require_optimal(sol, "post-hoc subproblem");
          values[i] = sol.objective;
        },
        options_.parallel_subproblems);
    r.posthoc_max_subproblem = 0.0;
    for (double v : values) r.posthoc_max_subproblem = std::max(r.posthoc_max_subproblem, v);
    r.posthoc_max_cut = r.cuts.empty() ? 0.0 : -kInfinity;
    for (const Cut& c : r.cuts) r.posthoc_max_cut = std::max(r.posthoc_max_cut, c.evaluate(wbar_));
  }
  r.simplex_iterations = simplex_iterations_;
  r.log = std::move(log_);
  return r;
}

BendersResult solve_lp_r3_benders(const Instance& instance, const BendersOptions& options) {
  BendersState state(instance, options);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (state.iterate_once() || state.infeasible() || state.stalled()) break;
  }
  return state.finish();
}

void write_benders_log_csv(std::ostream& out, const std::vector<IterationRecord>& log) {
  out << "iter,master_obj,n_pi_prime,n_violated,max_violation,cuts_total,elapsed_ms\n";
  char buf[160];
  for (const IterationRecord& r : log) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%d,%d,%.6g,%d,%ld\n", r.iter, r.master_obj,
                  r.n_pi_prime, r.n_violated, r.max_violation, r.cuts_total, r.elapsed_ms);
    out << buf;
  }
}

}  // namespace lambda_bound
