#include "lambda_bound/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lambda_bound {
namespace {

enum class IpVariant { kRwapPpp, kRwap, kR1, kR2 };

std::string idx(const char* prefix, std::initializer_list<std::pair<char, int>> parts) {
  std::string out = prefix;
  for (const auto& [tag, value] : parts) {
    out += '_';
    out += tag;
    out += std::to_string(value);
  }
  return out;
}

// Unit-demand path rows for one request: one arc out of s over all
// wavelengths, nothing into s, per-wavelength balance elsewhere except t.
template <typename VarOf>
void add_path_rows(LinearModel& model, const ArcTable& arcs, const Request& r,
                   int num_nodes, int K, VarOf var, const std::string& tag) {
  std::vector<Coefficient> out, in;
  for (int k = 0; k < K; ++k) {
    for (ArcId a : arcs.out(r.s)) out.push_back({var(k, a), 1.0});
    for (ArcId a : arcs.in(r.s)) in.push_back({var(k, a), 1.0});
  }
  model.add_row(Sense::kEqual, 1.0, std::move(out), "src" + tag);
  model.add_row(Sense::kEqual, 0.0, std::move(in), "srcin" + tag);
  for (int k = 0; k < K; ++k) {
    for (NodeId v = 0; v < num_nodes; ++v) {
      if (v == r.s || v == r.t) continue;
      std::vector<Coefficient> row;
      for (ArcId a : arcs.in(v)) row.push_back({var(k, a), 1.0});
      for (ArcId a : arcs.out(v)) row.push_back({var(k, a), -1.0});
      model.add_row(Sense::kEqual, 0.0, std::move(row),
                    "bal" + tag + idx("", {{'k', k}, {'v', v}}));
    }
  }
}

Formulation build_ip(const Instance& inst, bool relax, IpVariant variant) {
  const ArcTable arcs(inst.network);
  const int D = inst.num_requests();
  const int K = inst.num_wavelengths;
  const int A = arcs.size();
  const int E = inst.num_edges();
  const int V = inst.num_nodes();
  const bool has_x = variant != IpVariant::kR2;
  const bool has_y = variant != IpVariant::kRwap;
  const bool has_link = variant == IpVariant::kRwapPpp;
  const Integrality kind = relax ? Integrality::kContinuous : Integrality::kBinary;

  static const char* kNames[] = {"ip_rwap_ppp", "ip_rwap", "ip_r1", "ip_r2"};
  std::string name = kNames[static_cast<int>(variant)];
  if (relax) name.replace(0, 2, "lp");
  Formulation f{LinearModel(name), {}};
  LinearModel& m = f.model;
  VarMap& vm = f.vars;
  vm.num_requests = D;
  vm.num_wavelengths = K;
  vm.num_arcs = A;
  vm.num_edges = E;
  if (has_y) vm.failures = inst.failures;
  const int P = static_cast<int>(vm.failures.size());

  if (has_x) {
    vm.x_base = m.num_variables();
    for (int d = 0; d < D; ++d)
      for (int k = 0; k < K; ++k)
        for (ArcId a = 0; a < A; ++a)
          m.add_variable(0, 1, 0, kind, idx("x", {{'d', d}, {'k', k}, {'a', a}}));
  }
  if (has_y) {
    vm.y_base = m.num_variables();
    for (int i = 0; i < P; ++i)
      for (int d = 0; d < D; ++d)
        for (int k = 0; k < K; ++k)
          for (ArcId a = 0; a < A; ++a)
            m.add_variable(0, 1, 0, kind,
                           idx("y", {{'t', vm.failures[i]}, {'d', d}, {'k', k}, {'a', a}}));
  }
  vm.w_base = m.num_variables();
  for (int k = 0; k < K; ++k)
    for (EdgeId e = 0; e < E; ++e)
      m.add_variable(0, 1, 1.0, kind, idx("w", {{'k', k}, {'e', e}}));

  if (has_x) {
    for (int d = 0; d < D; ++d)
      add_path_rows(m, arcs, inst.requests[d], V, K,
                    [&](int k, ArcId a) { return vm.x(d, k, a); }, idx("", {{'d', d}}));
    for (int k = 0; k < K; ++k) {
      for (EdgeId e = 0; e < E; ++e) {
        std::vector<Coefficient> row;
        for (int d = 0; d < D; ++d) {
          row.push_back({vm.x(d, k, ArcTable::forward(e)), 1.0});
          row.push_back({vm.x(d, k, ArcTable::backward(e)), 1.0});
        }
        row.push_back({vm.w(k, e), -1.0});
        m.add_row(Sense::kLessEqual, 0.0, std::move(row), idx("cap", {{'k', k}, {'e', e}}));
      }
    }
  }
  if (has_y) {
    for (int i = 0; i < P; ++i) {
      const EdgeId tau = vm.failures[i];
      for (int d = 0; d < D; ++d)
        add_path_rows(m, arcs, inst.requests[d], V, K,
                      [&](int k, ArcId a) { return vm.y(i, d, k, a); },
                      idx("b", {{'t', tau}, {'d', d}}));
      for (int k = 0; k < K; ++k) {
        for (EdgeId e = 0; e < E; ++e) {
          std::vector<Coefficient> row;
          for (int d = 0; d < D; ++d) {
            row.push_back({vm.y(i, d, k, ArcTable::forward(e)), 1.0});
            row.push_back({vm.y(i, d, k, ArcTable::backward(e)), 1.0});
          }
          row.push_back({vm.w(k, e), -1.0});
          m.add_row(Sense::kLessEqual, 0.0, std::move(row),
                    idx("bcap", {{'t', tau}, {'k', k}, {'e', e}}));
        }
      }
      if (has_link) {
        for (int d = 0; d < D; ++d) {
          // sum over k' of x on the failed link's two arcs
          std::vector<Coefficient> on_tau;
          for (int k2 = 0; k2 < K; ++k2) {
            on_tau.push_back({vm.x(d, k2, ArcTable::forward(tau)), 1.0});
            on_tau.push_back({vm.x(d, k2, ArcTable::backward(tau)), 1.0});
          }
          for (int k = 0; k < K; ++k) {
            for (ArcId a = 0; a < A; ++a) {
              std::vector<Coefficient> lo{{vm.x(d, k, a), 1.0}, {vm.y(i, d, k, a), -1.0}};
              std::vector<Coefficient> hi{{vm.y(i, d, k, a), 1.0}, {vm.x(d, k, a), -1.0}};
              for (const Coefficient& c : on_tau) {
                lo.push_back({c.var, -1.0});
                hi.push_back({c.var, -1.0});
              }
              const auto tag = idx("", {{'t', tau}, {'d', d}, {'k', k}, {'a', a}});
              m.add_row(Sense::kLessEqual, 0.0, std::move(lo), "link1" + tag);
              m.add_row(Sense::kLessEqual, 0.0, std::move(hi), "link2" + tag);
            }
          }
        }
      }
      for (int d = 0; d < D; ++d)
        for (int k = 0; k < K; ++k)
          m.add_row(Sense::kEqual, 0.0,
                    {{vm.y(i, d, k, ArcTable::forward(tau)), 1.0},
                     {vm.y(i, d, k, ArcTable::backward(tau)), 1.0}},
                    idx("fail", {{'t', tau}, {'d', d}, {'k', k}}));
    }
  }
  return f;
}

// Flow rows of one aggregated scenario. tau < 0 means no failed link.
// Capacity rows get the edge's wbar variable when wbar_var is set, otherwise
// -eps with rhs wbar[e].
void add_aggregated_scenario(Formulation& f, const ArcTable& arcs,
                             const DemandMatrix& q, int i, EdgeId tau,
                             const std::vector<double>* wbar) {
  LinearModel& m = f.model;
  VarMap& vm = f.vars;
  const int O = static_cast<int>(vm.origins.size());
  const int V = q.num_nodes();
  const std::string t = tau >= 0 ? idx("", {{'t', tau}}) : std::string();
  for (int o = 0; o < O; ++o) {
    const NodeId s = vm.origins[o];
    std::vector<Coefficient> out, in;
    for (ArcId a : arcs.out(s)) out.push_back({vm.ya(i, o, a), 1.0});
    for (ArcId a : arcs.in(s)) in.push_back({vm.ya(i, o, a), 1.0});
    const auto tag = t + idx("", {{'s', s}});
    m.add_row(Sense::kEqual, q.origin_total(s), std::move(out), "src" + tag);
    m.add_row(Sense::kEqual, 0.0, std::move(in), "srcin" + tag);
    for (NodeId v = 0; v < V; ++v) {
      if (v == s) continue;
      std::vector<Coefficient> row;
      for (ArcId a : arcs.in(v)) row.push_back({vm.ya(i, o, a), 1.0});
      for (ArcId a : arcs.out(v)) row.push_back({vm.ya(i, o, a), -1.0});
      m.add_row(Sense::kEqual, q(s, v), std::move(row), "bal" + tag + idx("", {{'v', v}}));
    }
  }
  for (EdgeId e = 0; e < vm.num_edges; ++e) {
    std::vector<Coefficient> row;
    for (int o = 0; o < O; ++o) {
      row.push_back({vm.ya(i, o, ArcTable::forward(e)), 1.0});
      row.push_back({vm.ya(i, o, ArcTable::backward(e)), 1.0});
    }
    double rhs = 0.0;
    if (wbar) {
      row.push_back({vm.eps, -1.0});
      rhs = (*wbar)[e];
    } else {
      row.push_back({vm.wbar(e), -1.0});
    }
    RowId r = m.add_row(Sense::kLessEqual, rhs, std::move(row), "cap" + t + idx("", {{'e', e}}));
    if (wbar) vm.capacity_rows.push_back(r);
  }
  if (tau >= 0) {
    for (int o = 0; o < O; ++o)
      m.add_row(Sense::kEqual, 0.0,
                {{vm.ya(i, o, ArcTable::forward(tau)), 1.0},
                 {vm.ya(i, o, ArcTable::backward(tau)), 1.0}},
                "fail" + t + idx("", {{'s', vm.origins[o]}}));
  }
}

// LP_R3-shaped model over the given scenarios (tau = -1 for the intact
// network). wbar non-null builds the subproblem variant.
Formulation build_aggregated(const Instance& inst, std::string name,
                             const std::vector<EdgeId>& scenarios,
                             const std::vector<double>* wbar) {
  const ArcTable arcs(inst.network);
  const DemandMatrix q = demand_matrix(inst);
  Formulation f{LinearModel(std::move(name)), {}};
  LinearModel& m = f.model;
  VarMap& vm = f.vars;
  vm.num_requests = inst.num_requests();
  vm.num_wavelengths = inst.num_wavelengths;
  vm.num_arcs = arcs.size();
  vm.num_edges = inst.num_edges();
  vm.origins = q.origins();
  for (EdgeId tau : scenarios)
    if (tau >= 0) vm.failures.push_back(tau);

  if (!wbar) {
    vm.wbar_base = m.num_variables();
    for (EdgeId e = 0; e < vm.num_edges; ++e)
      m.add_variable(0, inst.num_wavelengths, 1.0, Integrality::kContinuous,
                     idx("wbar", {{'e', e}}));
  }
  vm.ya_base = m.num_variables();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (NodeId s : vm.origins) {
      for (ArcId a = 0; a < vm.num_arcs; ++a) {
        std::string n = scenarios[i] >= 0
                            ? idx("y", {{'t', scenarios[i]}, {'s', s}, {'a', a}})
                            : idx("y", {{'s', s}, {'a', a}});
        m.add_variable(0, q.origin_total(s), 0.0, Integrality::kContinuous, std::move(n));
      }
    }
  }
  if (wbar) vm.eps = m.add_variable(0, kInfinity, 1.0, Integrality::kContinuous, "eps");
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    add_aggregated_scenario(f, arcs, q, static_cast<int>(i), scenarios[i], wbar);
  return f;
}

}  // namespace

int VarMap::scenario_index(EdgeId tau) const {
  auto it = std::find(failures.begin(), failures.end(), tau);
  return it == failures.end() ? -1 : static_cast<int>(it - failures.begin());
}

Formulation build_ip_rwap_ppp(const Instance& instance, bool relax) {
  return build_ip(instance, relax, IpVariant::kRwapPpp);
}

Formulation build_ip_rwap(const Instance& instance, bool relax) {
  return build_ip(instance, relax, IpVariant::kRwap);
}

Formulation build_ip_r1(const Instance& instance, bool relax) {
  return build_ip(instance, relax, IpVariant::kR1);
}

Formulation build_ip_r2(const Instance& instance, bool relax) {
  return build_ip(instance, relax, IpVariant::kR2);
}

Formulation build_lp_r3(const Instance& instance) {
  if (instance.failures.empty())
    throw std::invalid_argument(
        "failure set is empty; use the aggregated RWAP relaxation instead");
  return build_aggregated(instance, "lp_r3", instance.failures, nullptr);
}

Formulation build_lp_rwap_agg(const Instance& instance) {
  return build_aggregated(instance, "lp_rwap_agg", {-1}, nullptr);
}

Formulation build_benders_master(const Instance& instance, EdgeId tau0) {
  if (!std::binary_search(instance.failures.begin(), instance.failures.end(), tau0))
    throw std::invalid_argument("tau0 is not in the failure set");
  return build_aggregated(instance, "lp_r3_master", {tau0}, nullptr);
}

Formulation build_subproblem(const Instance& instance, EdgeId tau,
                             const std::vector<double>& wbar) {
  if (!std::binary_search(instance.failures.begin(), instance.failures.end(), tau))
    throw std::invalid_argument("subproblem edge is not in the failure set");
  if (static_cast<int>(wbar.size()) != instance.num_edges())
    throw std::invalid_argument("wbar must have one entry per edge");
  for (double v : wbar)
    if (!(v >= -1e-9 && v <= instance.num_wavelengths + 1e-9))
      throw std::invalid_argument("wbar entry outside [0, |K|]");
  return build_aggregated(instance, idx("subproblem", {{'t', tau}}), {tau}, &wbar);
}

double Cut::evaluate(const std::vector<double>& wbar) const {
  double v = constant;
  for (const auto& [e, theta] : wbar_coeffs) v += theta * wbar[e];
  return v;
}

Cut cut_from_duals(const Formulation& sp, const std::vector<double>& wbar,
                   EdgeId tau, const Solution& sol, double violation_tol,
                   double tol) {
  if (sol.status != SolveStatus::kOptimal)
    throw std::logic_error("cut requested from a non-optimal subproblem");
  const LinearModel& m = sp.model;
  const VarMap& vm = sp.vars;
  std::vector<bool> is_capacity(m.num_rows(), false);
  for (RowId r : vm.capacity_rows) is_capacity[r] = true;

  Cut cut;
  cut.failure = tau;
  // Flow rows: sources carry q_s (beta), balances q_sv (gamma); inflow and
  // failed-link rows have rhs 0 and drop out.
  for (RowId r = 0; r < m.num_rows(); ++r)
    if (!is_capacity[r]) cut.constant += m.row(r).rhs * sol.duals[r];

  // Reduced costs recomputed from the model; zeta = min(d, 0) prices the
  // flow upper bounds.
  std::vector<double> d(m.num_variables());
  for (VarId j = 0; j < m.num_variables(); ++j) d[j] = m.variable(j).objective;
  for (RowId r = 0; r < m.num_rows(); ++r)
    for (const Coefficient& c : m.row(r).coeffs) d[c.var] -= c.value * sol.duals[r];
  for (VarId j = 0; j < m.num_variables(); ++j) {
    if (j == vm.eps) continue;
    cut.constant += m.variable(j).upper * std::min(d[j], 0.0);
  }

  double theta_sum = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(vm.capacity_rows.size()); ++e) {
    const double theta = sol.duals[vm.capacity_rows[e]];
    if (theta > tol)
      throw std::logic_error("capacity dual of edge " + std::to_string(e) + " is positive");
    theta_sum += theta;
    if (theta < 0.0) cut.wbar_coeffs.emplace_back(e, theta);
  }
  if (-theta_sum > 1.0 + tol)
    throw std::logic_error("capacity duals sum below -1");

  const double at_wbar = cut.evaluate(wbar);
  if (std::fabs(at_wbar - sol.objective) > tol * (1.0 + std::fabs(sol.objective)))
    throw std::logic_error("cut value " + std::to_string(at_wbar) +
                           " does not match subproblem value " +
                           std::to_string(sol.objective));
  if (at_wbar <= violation_tol)
    throw std::logic_error("subproblem is not violated; no cut to generate");
  return cut;
}

RowId add_cut(Formulation& master, const Cut& cut, const std::string& name) {
  std::vector<Coefficient> row;
  for (const auto& [e, theta] : cut.wbar_coeffs)
    row.push_back({master.vars.wbar(e), theta});
  return master.model.add_row(Sense::kLessEqual, -cut.constant, std::move(row), name);
}

}  // namespace lambda_bound
