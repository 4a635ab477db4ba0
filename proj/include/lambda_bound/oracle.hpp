#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lambda_bound/instance.hpp"
#include "lambda_bound/simplex.hpp"

namespace lambda_bound {

struct OracleLimits {
  int max_simple_paths_per_pair = 64;
  long max_assignments = 10'000'000;  // (path, wavelength) trials
};

// Search space over the limits. Paths are never truncated.
class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No assignment satisfies every rule.
class OracleInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum number of (wavelength, edge) pairs used by a working assignment
// plus per-failure backups. Exhaustive; only for tiny instances with at most
// 64 edges.
int exact_rwap_ppp(const Instance& instance, const OracleLimits& limits = {});
// Same with the failure set ignored.
int exact_rwap(const Instance& instance, const OracleLimits& limits = {});

struct PathFlow {
  NodeId origin = 0;
  NodeId sink = 0;
  std::vector<ArcId> path;
  double amount = 0.0;
};

// Splits per-origin arc flows of one scenario into s-t path flows.
// y[o][a] is the flow of origin q.origins()[o] on arc a. Flow around cycles
// is dropped. Throws std::invalid_argument when conservation fails by more
// than tol.
std::vector<PathFlow> flow_decompose(const Instance& instance, EdgeId tau,
                                     const std::vector<std::vector<double>>& y,
                                     const DemandMatrix& q, double tol = 1e-6);

struct ChainReport {
  double oracle_ppp = 0.0;  // exact IP optimum
  double lp_ppp = 0.0;
  double lp_r1 = 0.0;
  double lp_r2 = 0.0;
  double lp_r3 = 0.0;
  double lp_rwap = 0.0;

  struct Check {
    std::string relation;
    bool pass = false;
  };
  std::vector<Check> checks;

  bool passes() const;
};

// Solves every model of the chain directly and checks
// oracle >= LP_PPP >= LP_R1 = LP_R2 = LP_R3 >= LP_RWAP with tolerance tol.
ChainReport verify_chain(const Instance& instance, const OracleLimits& limits = {},
                         const SolveOptions& lp = {}, double tol = 1e-6);

}  // namespace lambda_bound
