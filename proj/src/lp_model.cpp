#include "lambda_bound/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lambda_bound {

VarId LinearModel::add_variable(double lower, double upper, double objective,
                                Integrality integrality, std::string name) {
  if (!std::isfinite(lower)) throw std::invalid_argument("lower bound must be finite");
  if (lower > upper) throw std::invalid_argument("inverted variable bounds");
  if (!std::isfinite(objective))
    throw std::invalid_argument("objective coefficient must be finite");
  if (integrality == Integrality::kBinary && (lower < 0.0 || upper > 1.0))
    throw std::invalid_argument("binary variable bounds must lie within [0,1]");
  vars_.push_back({lower, upper, objective, integrality, std::move(name)});
  return static_cast<VarId>(vars_.size() - 1);
}

RowId LinearModel::add_row(Sense sense, double rhs,
                           std::vector<Coefficient> coeffs, std::string name) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("row rhs must be finite");
  for (const Coefficient& c : coeffs) {
    if (c.var < 0 || c.var >= num_variables())
      throw std::out_of_range("row references unknown variable " +
                              std::to_string(c.var));
    if (!std::isfinite(c.value))
      throw std::invalid_argument("row coefficient must be finite");
  }
  std::stable_sort(coeffs.begin(), coeffs.end(),
                   [](const Coefficient& a, const Coefficient& b) {
                     return a.var < b.var;
                   });
  std::vector<Coefficient> merged;
  merged.reserve(coeffs.size());
  for (const Coefficient& c : coeffs) {
    if (!merged.empty() && merged.back().var == c.var)
      merged.back().value += c.value;
    else
      merged.push_back(c);
  }
  std::erase_if(merged, [](const Coefficient& c) { return c.value == 0.0; });
  rows_.push_back({sense, rhs, std::move(merged), std::move(name)});
  return static_cast<RowId>(rows_.size() - 1);
}

void LinearModel::set_bounds(VarId j, double lower, double upper) {
  if (!std::isfinite(lower) || lower > upper)
    throw std::invalid_argument("invalid variable bounds");
  vars_.at(j).lower = lower;
  vars_.at(j).upper = upper;
}

void LinearModel::set_rhs(RowId i, double rhs) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("row rhs must be finite");
  rows_.at(i).rhs = rhs;
}

std::string LinearModel::variable_name(VarId j) const {
  const std::string& n = vars_[j].name;
  return n.empty() ? "x" + std::to_string(j) : n;
}

std::string LinearModel::row_name(RowId i) const {
  const std::string& n = rows_[i].name;
  return n.empty() ? "r" + std::to_string(i) : n;
}

double LinearModel::objective_value(const std::vector<double>& x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) sum += vars_[j].objective * x[j];
  return sum;
}

double LinearModel::row_activity(RowId i, const std::vector<double>& x) const {
  double sum = 0.0;
  for (const Coefficient& c : rows_[i].coeffs) sum += c.value * x[c.var];
  return sum;
}

std::size_t LinearModel::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const Row& r : rows_) nnz += r.coeffs.size();
  return nnz;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

}  // namespace lambda_bound
