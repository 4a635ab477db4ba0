#pragma once

#include <utility>
#include <vector>

#include "lambda_bound/instance.hpp"
#include "lambda_bound/lp_model.hpp"

namespace lambda_bound {

// Index maps from model symbols to variable ids. Blocks that a formulation
// does not use keep base -1. Scenario index i refers to failures[i]; origin
// index o refers to origins[o].
struct VarMap {
  int num_requests = 0;
  int num_wavelengths = 0;
  int num_arcs = 0;
  int num_edges = 0;
  std::vector<EdgeId> failures;
  std::vector<NodeId> origins;

  VarId x_base = -1;     // x[d][k][a]
  VarId y_base = -1;     // y[i][d][k][a]
  VarId w_base = -1;     // w[k][e]
  VarId wbar_base = -1;  // wbar[e]
  VarId ya_base = -1;    // aggregated y[i][o][a]
  VarId eps = -1;

  // Subproblems only: capacity row of each edge, in edge order.
  std::vector<RowId> capacity_rows;

  VarId x(int d, int k, ArcId a) const {
    return x_base + (d * num_wavelengths + k) * num_arcs + a;
  }
  VarId y(int i, int d, int k, ArcId a) const {
    return y_base + ((i * num_requests + d) * num_wavelengths + k) * num_arcs + a;
  }
  VarId w(int k, EdgeId e) const { return w_base + k * num_edges + e; }
  VarId wbar(EdgeId e) const { return wbar_base + e; }
  VarId ya(int i, int o, ArcId a) const {
    return ya_base + (i * static_cast<int>(origins.size()) + o) * num_arcs + a;
  }
  int scenario_index(EdgeId tau) const;  // -1 when tau is not a scenario
};

struct Formulation {
  LinearModel model;
  VarMap vars;
};

// Full protection model. With relax set, binaries become [0,1] continuous.
Formulation build_ip_rwap_ppp(const Instance& instance, bool relax);
// Working paths only.
Formulation build_ip_rwap(const Instance& instance, bool relax);
// Drops the working/backup linking rows.
Formulation build_ip_r1(const Instance& instance, bool relax);
// Backup flows and w only.
Formulation build_ip_r2(const Instance& instance, bool relax);

// Origin- and wavelength-aggregated relaxation. Origins without demand are
// omitted: their flows are pinned to zero by the bounds anyway. Throws
// std::invalid_argument when the instance has no failures.
Formulation build_lp_r3(const Instance& instance);
// Same rows for a single scenario with no failed link.
Formulation build_lp_rwap_agg(const Instance& instance);
// Restricted master: the scenario rows of tau0 only. Cuts are appended later.
Formulation build_benders_master(const Instance& instance, EdgeId tau0);

// Minimum uniform capacity violation eps for scenario tau under capacities
// wbar (one entry per edge).
Formulation build_subproblem(const Instance& instance, EdgeId tau,
                             const std::vector<double>& wbar);

// Feasibility cut constant + sum theta_e * wbar_e <= 0.
struct Cut {
  EdgeId failure = -1;
  double constant = 0.0;
  std::vector<std::pair<EdgeId, double>> wbar_coeffs;  // ascending edge, theta <= 0

  double evaluate(const std::vector<double>& wbar) const;
  bool operator==(const Cut&) const = default;
};

// Reads the dual point of an Optimal subproblem solve. Throws
// std::logic_error if the duals are not dual feasible within tol, if the cut
// does not reproduce the subproblem value at the inducing wbar, or if that
// value is not above violation_tol.
Cut cut_from_duals(const Formulation& subproblem, const std::vector<double>& wbar,
                   EdgeId tau, const Solution& solution,
                   double violation_tol = 1e-7, double tol = 1e-6);

// Appends the cut to a master built by build_benders_master.
RowId add_cut(Formulation& master, const Cut& cut, const std::string& name = {});

}  // namespace lambda_bound
