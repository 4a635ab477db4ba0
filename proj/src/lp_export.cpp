#include <cmath>
#include <cstdio>
#include <string>

#include "lambda_bound/lp_model.hpp"

namespace lambda_bound {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* lp_sense(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: break;
  }
  return "=";
}

const char* mps_sense(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "L";
    case Sense::kGreaterEqual: return "G";
    case Sense::kEqual: break;
  }
  return "E";
}

// Appends " + c name" terms, wrapping so no line exceeds the LP-format limit.
void append_terms(std::string& out, const LinearModel& model,
                  const std::vector<Coefficient>& terms) {
  int on_line = 0;
  for (const Coefficient& c : terms) {
    if (on_line == 8) {
      out += "\n   ";
      on_line = 0;
    }
    out += c.value < 0 ? " - " : " + ";
    out += num(std::fabs(c.value));
    out += ' ';
    out += model.variable_name(c.var);
    ++on_line;
  }
}

}  // namespace

std::string export_lp(const LinearModel& model) {
  std::string out = "\\ Model " + model.name() + "\n";
  out += "Minimize\n obj:";
  std::vector<Coefficient> obj;
  for (VarId j = 0; j < model.num_variables(); ++j)
    if (model.variable(j).objective != 0.0)
      obj.push_back({j, model.variable(j).objective});
  if (obj.empty() && model.num_variables() > 0) obj.push_back({0, 0.0});
  append_terms(out, model, obj);
  out += "\nSubject To\n";
  for (RowId i = 0; i < model.num_rows(); ++i) {
    const Row& row = model.row(i);
    out += ' ' + model.row_name(i) + ':';
    if (row.coeffs.empty() && model.num_variables() > 0)
      append_terms(out, model, {{0, 0.0}});
    else
      append_terms(out, model, row.coeffs);
    out += ' ';
    out += lp_sense(row.sense);
    out += ' ' + num(row.rhs) + '\n';
  }
  out += "Bounds\n";
  std::string binaries;
  for (VarId j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(j);
    const std::string name = model.variable_name(j);
    if (v.integrality == Integrality::kBinary) {
      binaries += ' ' + name + '\n';
      if (v.lower == 0.0 && v.upper == 1.0) continue;
    }
    if (v.lower == v.upper) {
      out += ' ' + name + " = " + num(v.lower) + '\n';
    } else if (std::isinf(v.upper)) {
      if (v.lower != 0.0) out += ' ' + name + " >= " + num(v.lower) + '\n';
    } else if (v.lower == 0.0) {
      out += ' ' + name + " <= " + num(v.upper) + '\n';
    } else {
      out += ' ' + num(v.lower) + " <= " + name + " <= " + num(v.upper) + '\n';
    }
  }
  if (!binaries.empty()) out += "Binary\n" + binaries;
  out += "End\n";
  return out;
}

std::string export_mps(const LinearModel& model) {
  const int n = model.num_variables();
  // Column-wise view of the row coefficients.
  std::vector<std::vector<std::pair<RowId, double>>> cols(n);
  for (RowId i = 0; i < model.num_rows(); ++i)
    for (const Coefficient& c : model.row(i).coeffs)
      cols[c.var].emplace_back(i, c.value);

  std::string out = "NAME          " + model.name() + "\nROWS\n N  obj\n";
  for (RowId i = 0; i < model.num_rows(); ++i)
    out += std::string(" ") + mps_sense(model.row(i).sense) + "  " +
           model.row_name(i) + '\n';

  out += "COLUMNS\n";
  bool in_marker = false;
  int marker = 0;
  auto entry = [&](const std::string& col, const std::string& row, double v) {
    out += "    " + col + "  " + row + "  " + num(v) + '\n';
  };
  for (VarId j = 0; j < n; ++j) {
    const Variable& v = model.variable(j);
    const bool binary = v.integrality == Integrality::kBinary;
    if (binary != in_marker) {
      out += "    MARKER" + std::to_string(marker++) + "  'MARKER'  " +
             (binary ? "'INTORG'" : "'INTEND'") + '\n';
      in_marker = binary;
    }
    const std::string name = model.variable_name(j);
    if (v.objective != 0.0 || cols[j].empty()) entry(name, "obj", v.objective);
    for (const auto& [row, value] : cols[j]) entry(name, model.row_name(row), value);
  }
  if (in_marker)
    out += "    MARKER" + std::to_string(marker++) + "  'MARKER'  'INTEND'\n";

  out += "RHS\n";
  for (RowId i = 0; i < model.num_rows(); ++i)
    if (model.row(i).rhs != 0.0)
      out += "    RHS  " + model.row_name(i) + "  " + num(model.row(i).rhs) + '\n';

  out += "BOUNDS\n";
  for (VarId j = 0; j < n; ++j) {
    const Variable& v = model.variable(j);
    const std::string name = model.variable_name(j);
    if (v.lower == v.upper) {
      out += " FX BND  " + name + "  " + num(v.lower) + '\n';
      continue;
    }
    if (v.lower != 0.0) out += " LO BND  " + name + "  " + num(v.lower) + '\n';
    if (!std::isinf(v.upper)) out += " UP BND  " + name + "  " + num(v.upper) + '\n';
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace lambda_bound
