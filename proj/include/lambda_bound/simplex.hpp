#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "lambda_bound/lp_model.hpp"

namespace lambda_bound {

class SolveAudit;

enum class PivotRule {
  kDantzigWithBlandFallback,  // Dantzig pricing, Bland after a degenerate stall
  kBland,                     // Bland throughout
};

struct SolveOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  long max_iterations = 10'000'000;
  PivotRule pivot_rule = PivotRule::kDantzigWithBlandFallback;
  int degenerate_stall = 1000;  // consecutive degenerate pivots before Bland
  int refactor_interval = 100;  // eta updates between LU factorizations
  // When set, every Optimal result is certified and recorded here.
  SolveAudit* audit = nullptr;
};

// Bounded-variable revised primal simplex (two-phase). Integrality
// annotations are ignored. Duals follow the minimization convention:
// <= rows get nonpositive duals, >= rows nonnegative.
Solution solve(const LinearModel& model, const SolveOptions& options = {});

// Optimality evidence recomputed from the model data alone.
struct Certificate {
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;            // |primal - dual|
  double max_primal_violation = 0.0;   // bounds and rows
  double max_dual_violation = 0.0;     // sign conditions on duals / reduced costs
  double max_complementarity = 0.0;    // slack under nonzero duals, |d| off-bound

  bool passes(double gap_rel_tol = 1e-6, double tol = 1e-6) const;
};

Certificate certify(const LinearModel& model, const Solution& solution,
                    double zero_tol = 1e-7);

// Thread-safe sink that certifies every Optimal solve it is shown.
class SolveAudit {
 public:
  explicit SolveAudit(double gap_rel_tol = 1e-6, double tol = 1e-6)
      : gap_rel_tol_(gap_rel_tol), tol_(tol) {}

  void record(const LinearModel& model, const Solution& solution);

  long optimal_solves() const;
  long failures() const;
  double worst_relative_gap() const;
  double worst_complementarity() const;
  std::vector<std::string> failure_messages() const;

 private:
  double gap_rel_tol_, tol_;
  mutable std::mutex mu_;
  long optimal_ = 0, failed_ = 0;
  double worst_gap_ = 0.0, worst_cs_ = 0.0;
  std::vector<std::string> messages_;
};

}  // namespace lambda_bound
