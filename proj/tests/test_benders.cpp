#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "lambda_bound/benders.hpp"

using namespace lambda_bound;

namespace {

double direct_r3(const Instance& inst) {
  Solution sol = solve(build_lp_r3(inst).model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  return sol.objective;
}

void check_monotone(const BendersResult& r) {
  for (std::size_t i = 1; i < r.log.size(); ++i)
    CHECK(r.log[i].master_obj >= r.log[i - 1].master_obj - 1e-9);
  REQUIRE(!r.log.empty());
  CHECK(r.log.back().master_obj == r.lower_bound);
}

// Triangle 0-1-2 plus node 3 hanging off node 2. The bridge {2,3} gets id 0
// or id 3.
Instance with_bridge(bool bridge_first) {
  std::ostringstream json;
  json << R"({"name":"bridge","num_wavelengths":2,"nodes":[0,1,2,3],"edges":[)";
  if (bridge_first)
    json << R"({"id":0,"u":2,"v":3},{"id":1,"u":0,"v":1},{"id":2,"u":1,"v":2},{"id":3,"u":0,"v":2})";
  else
    json << R"({"id":0,"u":0,"v":1},{"id":1,"u":1,"v":2},{"id":2,"u":0,"v":2},{"id":3,"u":2,"v":3})";
  json << R"(],"requests":[{"s":0,"t":3}]})";
  return load_instance(json.str());
}

}  // namespace

TEST_CASE("cycle closed forms") {
  BendersResult big = solve_lp_r3_benders(gen_cycle(5, 3, 80));
  CHECK(big.status == BendersStatus::kConverged);
  CHECK(big.lower_bound == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(big.tau0 == 0);
  check_monotone(big);

  BendersResult small = solve_lp_r3_benders(gen_cycle(3, 1, 1));
  CHECK(small.status == BendersStatus::kConverged);
  CHECK(small.lower_bound == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("matches the direct solve on random instances") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Instance inst = gen_random(8, 4, 5, 6, seed);
    BendersResult r = solve_lp_r3_benders(inst);
    REQUIRE(r.status == BendersStatus::kConverged);
    const double direct = direct_r3(inst);
    CHECK(std::fabs(r.lower_bound - direct) <= 1e-6 * (1 + direct));
    CHECK(r.posthoc_max_subproblem <= 1e-6);
    CHECK(r.posthoc_max_cut <= 1e-6);
    check_monotone(r);
  }
}

TEST_CASE("skipped failures are satisfied at every iteration") {
  BendersOptions opt;
  opt.verify_filter = true;
  for (const Instance& inst : {gen_cycle(5, 1, 80), gen_random(7, 3, 4, 5, 11)}) {
    BendersResult r = solve_lp_r3_benders(inst, opt);
    REQUIRE(r.status == BendersStatus::kConverged);
    for (const IterationRecord& rec : r.log) {
      CHECK(rec.n_pi_prime >= 1);  // tau0 carries no flow of its own
      CHECK(rec.max_filtered_value >= 0.0);
      CHECK(rec.max_filtered_value <= 1e-7);
    }
  }
}

TEST_CASE("filter on a single routed path") {
  // Cycle 0-1-2-3-0, one unit 0 -> 2. The master for tau0 = edge 0 must route
  // over 0-3-2, so edges 1 and 0 carry nothing.
  Instance inst = gen_cycle(4, 1, 80);
  inst.requests = {{0, 2}};
  Formulation master = build_benders_master(inst, 0);
  Solution sol = solve(master.model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(pi_prime_filter(master, sol) == std::vector<EdgeId>{0, 1});

  inst.requests.clear();
  Formulation idle = build_benders_master(inst, 0);
  Solution zero = solve(idle.model);
  CHECK(pi_prime_filter(idle, zero) == inst.failures);
}

TEST_CASE("first iteration and idempotence after convergence") {
  Instance inst = gen_cycle(3, 2, 80);
  BendersState state(inst, {});
  state.iterate_once();
  REQUIRE(state.log().size() == 1);
  CHECK(state.master_objective() > 0);
  const IterationRecord& first = state.log()[0];
  CHECK(inst.num_failures() - first.n_pi_prime <= 2);
  CHECK(first.n_violated <= 2);

  while (!state.iterate_once()) REQUIRE(state.log().size() < 50);
  const double obj = state.master_objective();
  const int cuts = state.pool().size();
  const std::size_t logged = state.log().size();
  CHECK(state.iterate_once());
  CHECK(state.master_objective() == obj);
  CHECK(state.pool().size() == cuts);
  CHECK(state.log().size() == logged);
  CHECK(obj == doctest::Approx(6.0));
}

TEST_CASE("cut pool drops duplicates") {
  CutPool pool;
  Cut a{1, 2.0, {{0, -1.0}}};
  Cut b{1, 2.0, {{0, -0.5}}};
  Cut c{2, 2.0, {{0, -1.0}}};
  CHECK(pool.add(a));
  CHECK_FALSE(pool.add(a));
  CHECK(pool.add(b));
  CHECK(pool.add(c));
  CHECK(pool.size() == 3);
  CHECK(pool.cuts(1).size() == 2);
  CHECK(pool.cuts(7).empty());
}

TEST_CASE("parallel subproblems reproduce the sequential run") {
  Instance inst = gen_random(10, 6, 8, 8, 3);
  BendersResult seq = solve_lp_r3_benders(inst);
  setenv("LAMBDA_BOUND_THREADS", "3", 1);
  BendersOptions opt;
  opt.parallel_subproblems = true;
  BendersResult par = solve_lp_r3_benders(inst, opt);
  unsetenv("LAMBDA_BOUND_THREADS");
  CHECK(par.lower_bound == seq.lower_bound);
  CHECK(par.cuts == seq.cuts);
  REQUIRE(par.log.size() == seq.log.size());
  for (std::size_t i = 0; i < seq.log.size(); ++i)
    CHECK(par.log[i].master_obj == seq.log[i].master_obj);
}

TEST_CASE("unprotectable failures are reported") {
  BendersResult late = solve_lp_r3_benders(with_bridge(false));
  CHECK(late.status == BendersStatus::kInfeasible);
  CHECK(late.infeasible_failure == 3);

  BendersResult first = solve_lp_r3_benders(with_bridge(true));
  CHECK(first.status == BendersStatus::kInfeasible);
  CHECK(first.infeasible_failure == 0);
}

TEST_CASE("iteration cap keeps a valid bound") {
  Instance inst = gen_random(9, 5, 6, 6, 2);
  BendersOptions opt;
  opt.max_iterations = 1;
  BendersResult r = solve_lp_r3_benders(inst, opt);
  if (r.status == BendersStatus::kIterationLimit) {
    CHECK(r.iterations == 1);
    CHECK(r.lower_bound <= direct_r3(inst) + 1e-6);
  }
}

TEST_CASE("argument errors and log format") {
  Instance inst = gen_cycle(3, 1, 1);
  inst.failures.clear();
  CHECK_THROWS_AS(solve_lp_r3_benders(inst), std::invalid_argument);
  BendersOptions bad;
  bad.violation_tol = 0;
  CHECK_THROWS_AS(solve_lp_r3_benders(gen_cycle(3, 1, 1), bad), std::invalid_argument);

  std::ostringstream csv;
  write_benders_log_csv(csv, {{1, 2.5, 3, 1, 0.25, 1, 7, -1}});
  CHECK(csv.str() ==
        "iter,master_obj,n_pi_prime,n_violated,max_violation,cuts_total,elapsed_ms\n"
        "1,2.500000,3,1,0.25,1,7\n");
}
