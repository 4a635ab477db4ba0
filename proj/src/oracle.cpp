#include "lambda_bound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstdint>

#include "lambda_bound/formulations.hpp"

namespace lambda_bound {
namespace {

using Mask = std::uint64_t;

struct PathOption {
  Mask mask = 0;
  int length = 0;
};

std::vector<PathOption> simple_paths(const Instance& inst, const ArcTable& arcs,
                                     NodeId s, NodeId t, int cap) {
  std::vector<PathOption> out;
  std::vector<char> on_path(inst.num_nodes(), 0);
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == t) {
      PathOption p;
      for (EdgeId e : stack) p.mask |= Mask{1} << e;
      p.length = static_cast<int>(stack.size());
      out.push_back(p);
      if (static_cast<int>(out.size()) > cap)
        throw OracleBudgetExceeded("more than " + std::to_string(cap) +
                                   " simple paths between a request's endpoints");
      return;
    }
    on_path[v] = 1;
    for (ArcId a : arcs.out(v)) {
      const NodeId w = arcs[a].head;
      if (on_path[w]) continue;
      stack.push_back(arcs[a].edge);
      self(self, w);
      stack.pop_back();
    }
    on_path[v] = 0;
  };
  dfs(dfs, s);
  std::stable_sort(out.begin(), out.end(), [](const PathOption& a, const PathOption& b) {
    return a.length < b.length;
  });
  return out;
}

// Depth-first branch and bound over working assignments, then over the
// backups of each failure in turn. The objective only grows along a branch,
// so the running count prunes against the incumbent. Wavelengths are named
// in first-use order.
class Search {
 public:
  Search(const Instance& inst, const OracleLimits& limits, bool protect)
      : inst_(inst), limits_(limits), protect_(protect), K_(inst.num_wavelengths),
        D_(inst.num_requests()), used_(K_, 0), work_mask_(D_, 0), work_k_(D_, -1) {
    if (inst.num_edges() > 64)
      throw std::invalid_argument("oracle supports at most 64 edges");
    const ArcTable arcs(inst.network);
    for (const Request& r : inst.requests)
      paths_.push_back(simple_paths(inst, arcs, r.s, r.t, limits.max_simple_paths_per_pair));
  }

  int run() {
    if (D_ == 0) return 0;
    std::vector<Mask> occ(K_, 0);
    working(0, occ);
    if (best_ == INT_MAX) throw OracleInfeasible("no feasible assignment exists");
    return best_;
  }

 private:
  void tick() {
    if (++trials_ > limits_.max_assignments)
      throw OracleBudgetExceeded("assignment budget of " +
                                 std::to_string(limits_.max_assignments) + " exhausted");
  }

  int gain(int k, Mask m) const { return std::popcount(m & ~used_[k]); }

  void working(int d, std::vector<Mask>& occ) {
    if (d == D_) {
      if (!protect_) {
        best_ = std::min(best_, count_);
        return;
      }
      failures_.clear();
      for (EdgeId tau : inst_.failures) {
        for (int r = 0; r < D_; ++r) {
          if (work_mask_[r] >> tau & 1) {
            failures_.push_back(tau);
            break;
          }
        }
      }
      scenario(0);
      return;
    }
    const int names = std::min(K_, named_ + 1);
    for (const PathOption& p : paths_[d]) {
      for (int k = 0; k < names; ++k) {
        tick();
        if (occ[k] & p.mask) continue;
        const int add = gain(k, p.mask);
        if (count_ + add >= best_) continue;
        const Mask saved = used_[k];
        const int saved_named = named_;
        used_[k] |= p.mask;
        count_ += add;
        named_ = std::max(named_, k + 1);
        occ[k] |= p.mask;
        work_mask_[d] = p.mask;
        work_k_[d] = k;
        working(d + 1, occ);
        occ[k] &= ~p.mask;
        named_ = saved_named;
        count_ -= add;
        used_[k] = saved;
      }
    }
  }

  // Backups for failures_[f]. The requests crossing tau are rerouted;
  // everyone else keeps the working assignment in this scenario.
  void scenario(std::size_t f) {
    if (f == failures_.size()) {
      best_ = std::min(best_, count_);
      return;
    }
    const EdgeId tau = failures_[f];
    std::vector<Mask> occ(K_, 0);
    std::vector<int> affected;
    for (int r = 0; r < D_; ++r) {
      if (work_mask_[r] >> tau & 1) affected.push_back(r);
      else occ[work_k_[r]] |= work_mask_[r];
    }
    backup(f, tau, affected, 0, occ, count_);
  }

  // Returns true when this scenario was completed without adding any pair:
  // every alternative then leaves a superset of used pairs and is dominated.
  bool backup(std::size_t f, EdgeId tau, const std::vector<int>& affected, std::size_t j,
              std::vector<Mask>& occ, int start_count) {
    if (j == affected.size()) {
      scenario(f + 1);
      return count_ == start_count;
    }
    const int d = affected[j];
    const int names = std::min(K_, named_ + 1);
    for (const PathOption& p : paths_[d]) {
      if (p.mask >> tau & 1) continue;
      for (int k = 0; k < names; ++k) {
        tick();
        if (occ[k] & p.mask) continue;
        const int add = gain(k, p.mask);
        if (count_ + add >= best_) continue;
        const Mask saved = used_[k];
        const int saved_named = named_;
        used_[k] |= p.mask;
        count_ += add;
        named_ = std::max(named_, k + 1);
        occ[k] |= p.mask;
        const bool dominated = backup(f, tau, affected, j + 1, occ, start_count);
        occ[k] &= ~p.mask;
        named_ = saved_named;
        count_ -= add;
        used_[k] = saved;
        if (dominated) return true;
      }
    }
    return false;
  }

  const Instance& inst_;
  const OracleLimits& limits_;
  const bool protect_;
  const int K_, D_;
  std::vector<std::vector<PathOption>> paths_;
  std::vector<Mask> used_;  // pairs in use, per wavelength
  std::vector<Mask> work_mask_;
  std::vector<int> work_k_;
  std::vector<EdgeId> failures_;  // failures that touch some working path
  int count_ = 0;
  int named_ = 0;
  int best_ = INT_MAX;
  long trials_ = 0;
};

void validate_limits(const OracleLimits& limits) {
  if (limits.max_simple_paths_per_pair <= 0 || limits.max_assignments <= 0)
    throw std::invalid_argument("oracle limits must be positive");
}

double solve_value(const LinearModel& model, const SolveOptions& lp) {
  const Solution sol = solve(model, lp);
  if (sol.status != SolveStatus::kOptimal)
    throw std::runtime_error("chain: " + model.name() + " solve ended " +
                             to_string(sol.status));
  return sol.objective;
}

}  // namespace

int exact_rwap_ppp(const Instance& instance, const OracleLimits& limits) {
  validate_limits(limits);
  return Search(instance, limits, true).run();
}

int exact_rwap(const Instance& instance, const OracleLimits& limits) {
  validate_limits(limits);
  return Search(instance, limits, false).run();
}

std::vector<PathFlow> flow_decompose(const Instance& instance, EdgeId tau,
                                     const std::vector<std::vector<double>>& y,
                                     const DemandMatrix& q, double tol) {
  const ArcTable arcs(instance.network);
  const std::vector<NodeId> origins = q.origins();
  if (y.size() != origins.size())
    throw std::invalid_argument("flow_decompose: one flow vector per origin expected");
  const int n = instance.num_nodes();
  std::vector<PathFlow> out;

  for (std::size_t o = 0; o < origins.size(); ++o) {
    const NodeId s = origins[o];
    std::vector<double> f = y[o];
    if (static_cast<int>(f.size()) != arcs.size())
      throw std::invalid_argument("flow_decompose: one value per arc expected");
    for (NodeId v = 0; v < n; ++v) {
      double net = 0.0;
      for (ArcId a : arcs.out(v)) net += f[a];
      for (ArcId a : arcs.in(v)) net -= f[a];
      const double expected = v == s ? q.origin_total(s) : -q(s, v);
      if (std::fabs(net - expected) > tol)
        throw std::invalid_argument("flow_decompose: conservation violated at node " +
                                    std::to_string(v) + " for origin " + std::to_string(s));
    }
    for (ArcId a : arcs.in(s))
      if (f[a] > tol) throw std::invalid_argument("flow_decompose: flow enters its origin");
    if (tau >= 0 && (f[ArcTable::forward(tau)] > tol || f[ArcTable::backward(tau)] > tol))
      throw std::invalid_argument("flow_decompose: flow on the failed link");

    std::vector<double> rem(n);
    for (NodeId t = 0; t < n; ++t) rem[t] = q(s, t);
    std::vector<PathFlow> found;
    for (;;) {
      double left = 0.0;
      for (double r : rem) left += r;
      if (left <= tol) break;
      // Walk along positive arcs until a node with demand left; a repeated
      // node closes a cycle, whose flow is cancelled.
      std::vector<ArcId> walk;
      std::vector<int> seen(n, -1);
      NodeId v = s;
      seen[v] = 0;
      bool cancelled = false;
      while (v == s || rem[v] <= tol) {
        ArcId next = -1;
        for (ArcId a : arcs.out(v))
          if (f[a] > tol && (next < 0 || f[a] > f[next])) next = a;
        if (next < 0)
          throw std::invalid_argument("flow_decompose: flow stops short of its sinks");
        walk.push_back(next);
        v = arcs[next].head;
        if (seen[v] >= 0) {
          const auto first = walk.begin() + seen[v];
          double c = kInfinity;
          for (auto it = first; it != walk.end(); ++it) c = std::min(c, f[*it]);
          for (auto it = first; it != walk.end(); ++it) f[*it] -= c;
          cancelled = true;
          break;
        }
        seen[v] = static_cast<int>(walk.size());
      }
      if (cancelled) continue;
      double amount = rem[v];
      for (ArcId a : walk) amount = std::min(amount, f[a]);
      for (ArcId a : walk) f[a] -= amount;
      rem[v] -= amount;
      auto same = std::find_if(found.begin(), found.end(), [&](const PathFlow& p) {
        return p.sink == v && p.path == walk;
      });
      if (same != found.end()) same->amount += amount;
      else found.push_back({s, v, walk, amount});
    }
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

bool ChainReport::passes() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ChainReport verify_chain(const Instance& instance, const OracleLimits& limits,
                         const SolveOptions& lp, double tol) {
  ChainReport r;
  r.oracle_ppp = exact_rwap_ppp(instance, limits);
  r.lp_ppp = solve_value(build_ip_rwap_ppp(instance, true).model, lp);
  r.lp_r1 = solve_value(build_ip_r1(instance, true).model, lp);
  r.lp_r2 = solve_value(build_ip_r2(instance, true).model, lp);
  r.lp_r3 = solve_value(build_lp_r3(instance).model, lp);
  r.lp_rwap = solve_value(build_ip_rwap(instance, true).model, lp);
  r.checks = {
      {"oracle >= LP_RWAP-PPP", r.oracle_ppp >= r.lp_ppp - tol},
      {"LP_RWAP-PPP >= LP_R1", r.lp_ppp >= r.lp_r1 - tol},
      {"LP_R1 = LP_R2", std::fabs(r.lp_r1 - r.lp_r2) <= tol},
      {"LP_R2 = LP_R3", std::fabs(r.lp_r2 - r.lp_r3) <= tol},
      {"LP_R3 >= LP_RWAP", r.lp_r3 >= r.lp_rwap - tol},
  };
  return r;
}

}  // namespace lambda_bound
