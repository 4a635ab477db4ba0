#include "lambda_bound/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace lambda_bound {
namespace {

constexpr double kPivotTol = 1e-7;
constexpr double kDropTol = 1e-14;
constexpr double kDegenerateStep = 1e-12;
constexpr double kRatioTie = 1e-12;

enum class VarStatus : unsigned char { kBasic, kLower, kUpper };

// One product-form update: the basis column at `row` was replaced by a
// column whose FTRAN image is `pivot` at `row` and `values` elsewhere.
struct Eta {
  int row = 0;
  double pivot = 1.0;
  std::vector<int> index;
  std::vector<double> values;
};

// Thrown when the perturbed solve cannot be cleaned up; solve() retries
// without perturbation.
struct CleanupFailed {};

class Simplex {
 public:
  Simplex(const LinearModel& model, const SolveOptions& opt, bool allow_perturb)
      : model_(model), opt_(opt), m_(model.num_rows()),
        n_struct_(model.num_variables()), allow_perturb_(allow_perturb) {
    build_columns();
  }

  Solution run();

 private:
  enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit, kInfeasible };

  void build_columns();
  int add_logical(int row, double sign, bool artificial);
  void refactor();
  void compute_basic_values();
  void ftran(Eigen::VectorXd& v) const;
  void btran(Eigen::VectorXd& v) const;
  double column_dot(int j, const Eigen::VectorXd& y) const;
  PhaseResult iterate();
  PhaseResult dual_iterate();
  void perturb(int first, int last);
  void remove_perturbation();
  Solution extract(SolveStatus status);

  const LinearModel& model_;
  const SolveOptions& opt_;
  const int m_;
  const int n_struct_;

  // All columns: structurals, then slack/surplus logicals, then artificials.
  std::vector<int> col_start_{0};
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> lo_, up_, cost_, x_;
  std::vector<VarStatus> status_;
  std::vector<char> artificial_;
  std::vector<double> rhs_;

  std::vector<int> head_;  // basic column per basis position
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  long iterations_ = 0;
  int degenerate_run_ = 0;
  bool allow_perturb_;
  bool perturbed_ = false;
  std::mt19937_64 rng_{0x5eed};
};

void Simplex::build_columns() {
  std::vector<std::vector<std::pair<int, double>>> cols(n_struct_);
  for (RowId i = 0; i < m_; ++i)
    for (const Coefficient& c : model_.row(i).coeffs)
      cols[c.var].emplace_back(i, c.value);
  for (VarId j = 0; j < n_struct_; ++j) {
    for (const auto& [r, v] : cols[j]) {
      col_row_.push_back(r);
      col_val_.push_back(v);
    }
    col_start_.push_back(static_cast<int>(col_row_.size()));
    const Variable& var = model_.variable(j);
    lo_.push_back(var.lower);
    up_.push_back(var.upper);
    cost_.push_back(var.objective);
    x_.push_back(var.lower);
    status_.push_back(VarStatus::kLower);
    artificial_.push_back(0);
  }
  rhs_.resize(m_);
  for (RowId i = 0; i < m_; ++i) rhs_[i] = model_.row(i).rhs;
}

int Simplex::add_logical(int row, double sign, bool artificial) {
  col_row_.push_back(row);
  col_val_.push_back(sign);
  col_start_.push_back(static_cast<int>(col_row_.size()));
  lo_.push_back(0.0);
  up_.push_back(kInfinity);
  cost_.push_back(0.0);
  x_.push_back(0.0);
  status_.push_back(VarStatus::kLower);
  artificial_.push_back(artificial ? 1 : 0);
  return static_cast<int>(lo_.size() - 1);
}

double Simplex::column_dot(int j, const Eigen::VectorXd& y) const {
  double s = 0.0;
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
    s += col_val_[k] * y[col_row_[k]];
  return s;
}

void Simplex::refactor() {
  std::vector<Eigen::Triplet<double>> trip;
  for (int p = 0; p < m_; ++p) {
    int j = head_[p];
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
      trip.emplace_back(col_row_[k], p, col_val_[k]);
  }
  Eigen::SparseMatrix<double> basis(m_, m_);
  basis.setFromTriplets(trip.begin(), trip.end());
  basis.makeCompressed();
  lu_.analyzePattern(basis);
  lu_.factorize(basis);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("simplex: basis factorization failed");
  etas_.clear();
}

void Simplex::ftran(Eigen::VectorXd& v) const {
  v = lu_.solve(v).eval();
  for (const Eta& e : etas_) {
    const double xr = v[e.row] / e.pivot;
    v[e.row] = xr;
    if (xr == 0.0) continue;
    for (std::size_t k = 0; k < e.index.size(); ++k) v[e.index[k]] -= e.values[k] * xr;
  }
}

void Simplex::btran(Eigen::VectorXd& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->row];
    for (std::size_t k = 0; k < it->index.size(); ++k)
      s -= it->values[k] * v[it->index[k]];
    v[it->row] = s / it->pivot;
  }
  v = lu_.transpose().solve(v).eval();
}

void Simplex::compute_basic_values() {
  Eigen::VectorXd r(m_);
  for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
  const int ncols = static_cast<int>(lo_.size());
  for (int j = 0; j < ncols; ++j) {
    if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
      r[col_row_[k]] -= col_val_[k] * x_[j];
  }
  ftran(r);
  for (int p = 0; p < m_; ++p) x_[head_[p]] = r[p];
}

Simplex::PhaseResult Simplex::iterate() {
  const int ncols = static_cast<int>(lo_.size());
  const double dtol = opt_.optimality_tol;
  bool fresh = false;  // basis values recomputed from a new factorization
  Eigen::VectorXd y(m_), alpha(m_);

  for (;;) {
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      refactor();
      compute_basic_values();
      fresh = true;
    }
    for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
    btran(y);

    const bool bland = opt_.pivot_rule == PivotRule::kBland ||
                       degenerate_run_ >= opt_.degenerate_stall;
    int q = -1;
    double best = 0.0, dq = 0.0;
    for (int j = 0; j < ncols; ++j) {
      if (status_[j] == VarStatus::kBasic || lo_[j] == up_[j]) continue;
      const double d = cost_[j] - column_dot(j, y);
      const bool eligible = (status_[j] == VarStatus::kLower && d < -dtol) ||
                            (status_[j] == VarStatus::kUpper && d > dtol);
      if (!eligible) continue;
      if (bland) {
        q = j;
        dq = d;
        break;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        q = j;
        dq = d;
      }
    }
    if (q < 0) {
      if (fresh || etas_.empty()) return PhaseResult::kOptimal;
      refactor();
      compute_basic_values();
      fresh = true;
      continue;
    }
    if (iterations_ >= opt_.max_iterations) return PhaseResult::kIterationLimit;
    ++iterations_;
    fresh = false;

    alpha.setZero();
    for (int k = col_start_[q]; k < col_start_[q + 1]; ++k)
      alpha[col_row_[k]] = col_val_[k];
    ftran(alpha);
    const double dir = dq < 0 ? 1.0 : -1.0;  // entering moves up or down

    // Basic variable p moves by -dir * alpha[p] per unit step. Among the
    // rows reaching the minimum ratio, Bland takes the smallest column index
    // and otherwise the largest pivot leaves.
    int leave = -1;
    double step = kInfinity;
    for (int p = 0; p < m_; ++p) {
      const double a = dir * alpha[p];
      if (std::fabs(a) <= kPivotTol) continue;
      const int j = head_[p];
      double ratio;
      if (a > 0)
        ratio = std::max(x_[j] - lo_[j], 0.0) / a;
      else if (!std::isinf(up_[j]))
        ratio = std::max(up_[j] - x_[j], 0.0) / -a;
      else
        continue;
      bool take;
      if (leave < 0 || ratio < step - kRatioTie)
        take = true;
      else if (ratio > step + kRatioTie)
        take = false;
      else if (bland)
        take = j < head_[leave];
      else
        take = std::fabs(alpha[p]) > std::fabs(alpha[leave]);
      if (take) {
        step = ratio;
        leave = p;
      }
    }
    if (up_[q] - lo_[q] <= step) {
      step = up_[q] - lo_[q];
      leave = -1;
    }
    if (std::isinf(step)) return PhaseResult::kUnbounded;

    x_[q] += dir * step;
    if (step != 0.0)
      for (int p = 0; p < m_; ++p)
        if (alpha[p] != 0.0) x_[head_[p]] -= dir * step * alpha[p];

    if (leave < 0) {
      status_[q] = status_[q] == VarStatus::kLower ? VarStatus::kUpper
                                                   : VarStatus::kLower;
      x_[q] = status_[q] == VarStatus::kLower ? lo_[q] : up_[q];
    } else {
      const int j = head_[leave];
      const bool to_lower = dir * alpha[leave] > 0;
      status_[j] = to_lower ? VarStatus::kLower : VarStatus::kUpper;
      x_[j] = to_lower ? lo_[j] : up_[j];
      Eta eta;
      eta.row = leave;
      eta.pivot = alpha[leave];
      for (int p = 0; p < m_; ++p) {
        if (p != leave && std::fabs(alpha[p]) > kDropTol) {
          eta.index.push_back(p);
          eta.values.push_back(alpha[p]);
        }
      }
      etas_.push_back(std::move(eta));
      head_[leave] = q;
      status_[q] = VarStatus::kBasic;
    }
    degenerate_run_ = step <= kDegenerateStep ? degenerate_run_ + 1 : 0;
  }
}

// Widens the bounds of structurals (before the starting point is built) and
// of slacks (after) by small pseudo-random amounts so that ratio-test ties
// disappear. Widening keeps the starting basis feasible; the seed is fixed,
// so runs stay reproducible.
void Simplex::perturb(int first, int last) {
  perturbed_ = true;
  std::uniform_real_distribution<double> unit(1.0, 10.0);
  for (int j = first; j < last; ++j) {
    if (artificial_[j] || lo_[j] == up_[j]) continue;
    lo_[j] -= unit(rng_) * 1e-7 * (1.0 + std::fabs(lo_[j]));
    if (!std::isinf(up_[j])) up_[j] += unit(rng_) * 1e-7 * (1.0 + std::fabs(up_[j]));
    if (status_[j] == VarStatus::kLower) x_[j] = lo_[j];
  }
}

// Restores the true bounds. The basis stays dual feasible, so any primal
// infeasibility left behind is removed by dual simplex pivots.
void Simplex::remove_perturbation() {
  const int ncols = static_cast<int>(lo_.size());
  for (int j = 0; j < ncols; ++j) {
    if (artificial_[j]) continue;
    lo_[j] = j < n_struct_ ? model_.variable(j).lower : 0.0;
    up_[j] = j < n_struct_ ? model_.variable(j).upper : kInfinity;
    if (status_[j] == VarStatus::kLower) x_[j] = lo_[j];
    if (status_[j] == VarStatus::kUpper) x_[j] = up_[j];
  }
  perturbed_ = false;
  allow_perturb_ = false;
  degenerate_run_ = 0;
  refactor();
  compute_basic_values();
  if (dual_iterate() != PhaseResult::kOptimal) throw CleanupFailed{};
}

Simplex::PhaseResult Simplex::dual_iterate() {
  const int ncols = static_cast<int>(lo_.size());
  const double ftol = opt_.feasibility_tol;
  const double dtol = opt_.optimality_tol;
  Eigen::VectorXd y(m_), rho(m_), alpha(m_);
  std::vector<double> row_alpha(ncols), d(ncols);

  for (;;) {
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      refactor();
      compute_basic_values();
    }
    int r = -1;
    double worst = ftol;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      const double infeas = std::max(lo_[j] - x_[j], x_[j] - up_[j]);
      if (infeas > worst) {
        worst = infeas;
        r = p;
      }
    }
    if (r < 0) return PhaseResult::kOptimal;
    if (iterations_ >= opt_.max_iterations) return PhaseResult::kIterationLimit;
    ++iterations_;

    const int leaving = head_[r];
    const bool to_lower = x_[leaving] < lo_[leaving];
    for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
    btran(y);
    rho.setZero();
    rho[r] = 1.0;
    btran(rho);

    // x_r moves by -row_alpha[j] per unit increase of nonbasic j.
    auto eligible = [&](int j) {
      if (status_[j] == VarStatus::kBasic || lo_[j] == up_[j]) return false;
      const double a = row_alpha[j];
      if (std::fabs(a) <= kPivotTol) return false;
      const bool up_move = status_[j] == VarStatus::kLower;
      return to_lower ? (up_move ? a < 0 : a > 0) : (up_move ? a > 0 : a < 0);
    };
    double bound = kInfinity;
    for (int j = 0; j < ncols; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      row_alpha[j] = column_dot(j, rho);
      d[j] = cost_[j] - column_dot(j, y);
      if (eligible(j)) bound = std::min(bound, (std::fabs(d[j]) + dtol) / std::fabs(row_alpha[j]));
    }
    if (std::isinf(bound)) return PhaseResult::kInfeasible;
    int q = -1;
    double best_pivot = 0.0;
    for (int j = 0; j < ncols; ++j) {
      if (!eligible(j)) continue;
      if (std::fabs(d[j]) / std::fabs(row_alpha[j]) <= bound &&
          std::fabs(row_alpha[j]) > best_pivot) {
        best_pivot = std::fabs(row_alpha[j]);
        q = j;
      }
    }

    alpha.setZero();
    for (int k = col_start_[q]; k < col_start_[q + 1]; ++k)
      alpha[col_row_[k]] = col_val_[k];
    ftran(alpha);
    if (std::fabs(alpha[r]) <= kPivotTol) return PhaseResult::kInfeasible;
    const double target = to_lower ? lo_[leaving] : up_[leaving];
    const double delta = (x_[leaving] - target) / alpha[r];
    x_[q] += delta;
    for (int p = 0; p < m_; ++p)
      if (alpha[p] != 0.0) x_[head_[p]] -= delta * alpha[p];
    status_[leaving] = to_lower ? VarStatus::kLower : VarStatus::kUpper;
    x_[leaving] = target;

    Eta eta;
    eta.row = r;
    eta.pivot = alpha[r];
    for (int p = 0; p < m_; ++p) {
      if (p != r && std::fabs(alpha[p]) > kDropTol) {
        eta.index.push_back(p);
        eta.values.push_back(alpha[p]);
      }
    }
    etas_.push_back(std::move(eta));
    head_[r] = q;
    status_[q] = VarStatus::kBasic;
  }
}

Solution Simplex::run() {
  // Structurals start at their lower bounds; each row gets a basic logical
  // whose sign makes it nonnegative, an artificial when no slack fits.
  if (allow_perturb_) perturb(0, n_struct_);
  std::vector<double> residual(rhs_);
  for (VarId j = 0; j < n_struct_; ++j)
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
      residual[col_row_[k]] -= col_val_[k] * x_[j];

  head_.assign(m_, -1);
  std::vector<int> slack_of(m_, -1);
  for (RowId i = 0; i < m_; ++i) {
    const Sense s = model_.row(i).sense;
    if (s == Sense::kLessEqual) slack_of[i] = add_logical(i, 1.0, false);
    if (s == Sense::kGreaterEqual) slack_of[i] = add_logical(i, -1.0, false);
  }
  bool any_artificial = false;
  for (RowId i = 0; i < m_; ++i) {
    const Sense s = model_.row(i).sense;
    int j;
    double value;
    if (s == Sense::kLessEqual && residual[i] >= 0) {
      j = slack_of[i];
      value = residual[i];
    } else if (s == Sense::kGreaterEqual && residual[i] <= 0) {
      j = slack_of[i];
      value = -residual[i];
    } else {
      j = add_logical(i, residual[i] >= 0 ? 1.0 : -1.0, true);
      value = std::fabs(residual[i]);
      any_artificial = true;
    }
    head_[i] = j;
    status_[j] = VarStatus::kBasic;
    x_[j] = value;
  }
  if (perturbed_) perturb(n_struct_, static_cast<int>(lo_.size()));

  if (m_ > 0) refactor();

  if (any_artificial) {
    std::vector<double> true_cost = cost_;
    const int ncols = static_cast<int>(lo_.size());
    for (int j = 0; j < ncols; ++j) cost_[j] = artificial_[j] ? 1.0 : 0.0;
    PhaseResult r = iterate();
    if (r == PhaseResult::kIterationLimit) {
      cost_ = true_cost;
      return extract(SolveStatus::kIterationLimit);
    }
    double infeasibility = 0.0, bnorm = 0.0;
    for (int j = 0; j < ncols; ++j)
      if (artificial_[j]) infeasibility += x_[j];
    for (double b : rhs_) bnorm = std::max(bnorm, std::fabs(b));
    cost_ = true_cost;
    if (infeasibility > opt_.feasibility_tol * (1.0 + bnorm))
      return extract(SolveStatus::kInfeasible);
    for (int j = 0; j < ncols; ++j)
      if (artificial_[j]) up_[j] = 0.0;
    degenerate_run_ = 0;
  }

  PhaseResult r = iterate();
  if (r == PhaseResult::kOptimal && perturbed_) {
    remove_perturbation();
    r = iterate();
  }
  switch (r) {
    case PhaseResult::kOptimal: return extract(SolveStatus::kOptimal);
    case PhaseResult::kUnbounded: return extract(SolveStatus::kUnbounded);
    case PhaseResult::kInfeasible: return extract(SolveStatus::kInfeasible);
    case PhaseResult::kIterationLimit: break;
  }
  return extract(SolveStatus::kIterationLimit);
}

Solution Simplex::extract(SolveStatus status) {
  Solution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.primal.resize(n_struct_);
  for (VarId j = 0; j < n_struct_; ++j)
    sol.primal[j] = std::clamp(x_[j], lo_[j], up_[j]);
  sol.objective = model_.objective_value(sol.primal);

  Eigen::VectorXd y(m_);
  for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
  if (m_ > 0) btran(y);
  sol.duals.assign(y.data(), y.data() + m_);
  sol.reduced_costs.resize(n_struct_);
  for (VarId j = 0; j < n_struct_; ++j)
    sol.reduced_costs[j] = cost_[j] - column_dot(j, y);
  return sol;
}

Solution solve_without_rows(const LinearModel& model) {
  Solution sol;
  sol.status = SolveStatus::kOptimal;
  for (const Variable& v : model.variables()) {
    double x = v.lower;
    if (v.objective < 0) {
      if (std::isinf(v.upper)) sol.status = SolveStatus::kUnbounded;
      else x = v.upper;
    }
    sol.primal.push_back(x);
    sol.reduced_costs.push_back(v.objective);
  }
  sol.objective = model.objective_value(sol.primal);
  return sol;
}

}  // namespace

Solution solve(const LinearModel& model, const SolveOptions& options) {
  if (options.feasibility_tol <= 0 || options.optimality_tol <= 0 ||
      options.max_iterations <= 0)
    throw std::invalid_argument("simplex: tolerances and limits must be positive");
  Solution sol;
  if (model.num_rows() == 0) {
    sol = solve_without_rows(model);
  } else {
    try {
      sol = Simplex(model, options, true).run();
    } catch (const CleanupFailed&) {
      sol = Simplex(model, options, false).run();
    }
  }
  if (options.audit && sol.status == SolveStatus::kOptimal)
    options.audit->record(model, sol);
  return sol;
}

bool Certificate::passes(double gap_rel_tol, double tol) const {
  return duality_gap <= gap_rel_tol * (1.0 + std::fabs(primal_objective)) &&
         max_primal_violation <= tol && max_dual_violation <= tol &&
         max_complementarity <= tol;
}

Certificate certify(const LinearModel& model, const Solution& sol,
                    double zero_tol) {
  Certificate cert;
  const auto& x = sol.primal;
  const auto& y = sol.duals;
  cert.primal_objective = model.objective_value(x);

  std::vector<double> d(model.num_variables());
  for (VarId j = 0; j < model.num_variables(); ++j) d[j] = model.variable(j).objective;
  double dual_obj = 0.0;
  for (RowId i = 0; i < model.num_rows(); ++i) {
    const Row& row = model.row(i);
    for (const Coefficient& c : row.coeffs) d[c.var] -= y[i] * c.value;
    dual_obj += row.rhs * y[i];

    const double slack = row.rhs - model.row_activity(i, x);
    double infeas = 0.0;
    switch (row.sense) {
      case Sense::kLessEqual:
        infeas = std::max(0.0, -slack);
        cert.max_dual_violation = std::max(cert.max_dual_violation, y[i]);
        break;
      case Sense::kGreaterEqual:
        infeas = std::max(0.0, slack);
        cert.max_dual_violation = std::max(cert.max_dual_violation, -y[i]);
        break;
      case Sense::kEqual:
        infeas = std::fabs(slack);
        break;
    }
    cert.max_primal_violation = std::max(cert.max_primal_violation, infeas);
    if (row.sense != Sense::kEqual && std::fabs(y[i]) > zero_tol)
      cert.max_complementarity = std::max(cert.max_complementarity, std::fabs(slack));
  }
  for (VarId j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(j);
    cert.max_primal_violation =
        std::max({cert.max_primal_violation, v.lower - x[j], x[j] - v.upper});
    const bool at_lower = x[j] - v.lower <= zero_tol;
    const bool at_upper = v.upper - x[j] <= zero_tol;
    if (at_lower && at_upper) {
      // fixed: any sign
    } else if (at_lower) {
      cert.max_dual_violation = std::max(cert.max_dual_violation, -d[j]);
    } else if (at_upper) {
      cert.max_dual_violation = std::max(cert.max_dual_violation, d[j]);
    } else {
      cert.max_complementarity = std::max(cert.max_complementarity, std::fabs(d[j]));
    }
    // Bound contribution of the reduced cost to the dual objective.
    if (d[j] >= 0)
      dual_obj += d[j] * v.lower;
    else
      dual_obj += d[j] * (std::isinf(v.upper) ? x[j] : v.upper);
  }
  cert.dual_objective = dual_obj;
  cert.duality_gap = std::fabs(cert.primal_objective - dual_obj);
  return cert;
}

void SolveAudit::record(const LinearModel& model, const Solution& solution) {
  Certificate cert = certify(model, solution);
  const double rel_gap =
      cert.duality_gap / (1.0 + std::fabs(cert.primal_objective));
  std::lock_guard lock(mu_);
  ++optimal_;
  worst_gap_ = std::max(worst_gap_, rel_gap);
  worst_cs_ = std::max(worst_cs_, cert.max_complementarity);
  if (!cert.passes(gap_rel_tol_, tol_)) {
    ++failed_;
    if (messages_.size() < 20)
      messages_.push_back(model.name() + ": gap " + std::to_string(cert.duality_gap) +
                          " primal viol " + std::to_string(cert.max_primal_violation) +
                          " dual viol " + std::to_string(cert.max_dual_violation) +
                          " cs " + std::to_string(cert.max_complementarity));
  }
}

long SolveAudit::optimal_solves() const {
  std::lock_guard lock(mu_);
  return optimal_;
}

long SolveAudit::failures() const {
  std::lock_guard lock(mu_);
  return failed_;
}

double SolveAudit::worst_relative_gap() const {
  std::lock_guard lock(mu_);
  return worst_gap_;
}

double SolveAudit::worst_complementarity() const {
  std::lock_guard lock(mu_);
  return worst_cs_;
}

std::vector<std::string> SolveAudit::failure_messages() const {
  std::lock_guard lock(mu_);
  return messages_;
}

}  // namespace lambda_bound
