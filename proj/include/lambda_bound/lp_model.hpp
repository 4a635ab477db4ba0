#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lambda_bound {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using VarId = int;
using RowId = int;

enum class Integrality { kContinuous, kBinary };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  double lower = 0.0;
  double upper = kInfinity;  // kInfinity means unbounded above
  double objective = 0.0;
  Integrality integrality = Integrality::kContinuous;
  std::string name;
};

struct Coefficient {
  VarId var = 0;
  double value = 0.0;
  bool operator==(const Coefficient&) const = default;
};

struct Row {
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
  std::vector<Coefficient> coeffs;  // ascending var, no duplicates, no zeros
  std::string name;
};

// Sparse minimization model. Lower bounds are finite; upper bounds may be
// kInfinity. Rows never carry an infinite rhs.
class LinearModel {
 public:
  explicit LinearModel(std::string name = "model") : name_(std::move(name)) {}

  VarId add_variable(double lower, double upper, double objective,
                     Integrality integrality = Integrality::kContinuous,
                     std::string name = {});

  // Duplicate variable ids are merged by summation and exact zeros dropped.
  RowId add_row(Sense sense, double rhs, std::vector<Coefficient> coeffs,
                std::string name = {});

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(VarId j) const { return vars_[j]; }
  const Row& row(RowId i) const { return rows_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& name() const { return name_; }

  void set_bounds(VarId j, double lower, double upper);
  void set_rhs(RowId i, double rhs);

  // Display names fall back to "x<id>" / "r<id>" when none was given.
  std::string variable_name(VarId j) const;
  std::string row_name(RowId i) const;

  double objective_value(const std::vector<double>& x) const;
  double row_activity(RowId i, const std::vector<double>& x) const;
  std::size_t num_nonzeros() const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;         // per variable
  std::vector<double> duals;          // per row, d objective / d rhs
  std::vector<double> reduced_costs;  // per variable
  long iterations = 0;
};

// Text exports. Numbers use 12 significant digits; output is a pure function
// of the model.
std::string export_lp(const LinearModel& model);
std::string export_mps(const LinearModel& model);

}  // namespace lambda_bound
