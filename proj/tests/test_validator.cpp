#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lambda_bound/errors.hpp"
#include "lambda_bound/formulations.hpp"
#include "lambda_bound/simplex.hpp"
#include "lambda_bound/validator.hpp"

using namespace lambda_bound;

namespace {

Instance appendix() {
  return load_instance_file(LAMBDA_BOUND_DATA_DIR "/appendix_a.json");
}

RwappSolution appendix_solution() {
  return load_solution_file(LAMBDA_BOUND_DATA_DIR "/appendix_a.solution.json");
}

// Every request keeps its working assignment in every scenario.
RwappSolution unprotected(const Instance& inst, std::vector<Assignment> working) {
  RwappSolution sol;
  sol.working = working;
  for (EdgeId tau : inst.failures) sol.backups.push_back({tau, working});
  return sol;
}

bool has(const ValidationReport& r, ViolationKind kind) {
  for (const Violation& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

double round1(double x) { return std::round(x * 10.0) / 10.0; }

}  // namespace

TEST_CASE("bundled appendix solution") {
  const Instance inst = appendix();
  const RwappSolution sol = appendix_solution();
  ValidationReport full = validate(inst, sol);
  CHECK(full.feasible);
  CHECK(full.objective == 7);

  ValidationReport working_only = validate(inst, sol, {.ignore_failures = true});
  CHECK(working_only.feasible);
  CHECK(working_only.objective == 4);

  Solution lp = solve(build_lp_r3(inst).model);
  REQUIRE(lp.status == SolveStatus::kOptimal);
  CHECK(full.objective >= lp.objective - 1e-6);
}

TEST_CASE("three pairs suffice on the appendix network") {
  // 1-4-3 on wavelength 0 and 4-3 on wavelength 1 avoid every failing link.
  const Instance inst = appendix();
  RwappSolution sol = unprotected(inst, {{{3, 4}, 0}, {{4}, 1}});
  ValidationReport r = validate(inst, sol);
  CHECK(r.feasible);
  CHECK(r.objective == 3);
}

TEST_CASE("wavelength relabelling keeps the objective") {
  const Instance inst = appendix();
  RwappSolution sol = appendix_solution();
  auto swap = [](Assignment& a) { a.wavelength = 1 - a.wavelength; };
  for (Assignment& a : sol.working) swap(a);
  for (ScenarioBackups& sb : sol.backups)
    for (Assignment& a : sb.assignments) swap(a);
  ValidationReport r = validate(inst, sol);
  CHECK(r.feasible);
  CHECK(r.objective == 7);
}

TEST_CASE("each violation class is reported") {
  const Instance inst = appendix();

  // Both working paths cross {2,3} on wavelength 0.
  ValidationReport clash = validate(inst, unprotected(inst, {{{0, 1}, 0}, {{2, 1}, 0}}));
  CHECK_FALSE(clash.feasible);
  CHECK(has(clash, ViolationKind::kWorkingClash));

  RwappSolution sol = appendix_solution();
  sol.backups[0].assignments[1] = {{4}, 1};  // request 1 does not cross edge 0
  ValidationReport differs = validate(inst, sol);
  CHECK(has(differs, ViolationKind::kBackupNotWorking));
  CHECK(differs.violations.size() == 1);
  CHECK(differs.violations[0].failure == 0);
  CHECK(differs.violations[0].request == 1);

  sol = appendix_solution();
  sol.backups[1].assignments[1] = {{2, 1}, 1};  // keeps the failed link
  CHECK(has(validate(inst, sol), ViolationKind::kFailedLinkUsed));

  sol = appendix_solution();
  sol.backups[1].assignments[1] = {{4}, 0};  // meets request 0's backup on {4,3}
  ValidationReport scen = validate(inst, sol);
  CHECK(has(scen, ViolationKind::kScenarioClash));
  CHECK_FALSE(has(scen, ViolationKind::kWorkingClash));

  sol = appendix_solution();
  sol.working[0] = {{3}, 0};  // 1-4 stops short of 3
  CHECK(has(validate(inst, sol), ViolationKind::kEndpointMismatch));
}

TEST_CASE("malformed solutions are rejected") {
  const Instance inst = appendix();
  RwappSolution sol = appendix_solution();
  sol.backups.pop_back();
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);
  CHECK_NOTHROW(validate(inst, sol, {.ignore_failures = true}));

  sol = appendix_solution();
  sol.working.pop_back();
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);

  sol = appendix_solution();
  sol.working[0].wavelength = 2;
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);

  sol = appendix_solution();
  sol.working[0].path = {0, 4};  // {1,2} then {4,3}: not a path
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);

  sol = appendix_solution();
  sol.working[0].path = {0, 0, 0};
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);

  sol = appendix_solution();
  sol.backups[0].failure = 4;
  CHECK_THROWS_AS(validate(inst, sol), ValidationError);

  CHECK_THROWS_AS(load_solution("{\"working\": 3}"), ParseError);
  CHECK_THROWS_AS(load_solution("{\"working\": [{\"path\": [1]}]}"), ParseError);
}

TEST_CASE("solution files round trip") {
  const RwappSolution sol = appendix_solution();
  CHECK(load_solution(save_solution(sol)) == sol);
  CHECK(load_solution(save_solution(RwappSolution{})) == RwappSolution{});
}

TEST_CASE("gap and improvement formulas") {
  CHECK(round1(gap_percent(1887, 2019)) == doctest::Approx(7.0));
  CHECK(round1(improvement_percent(2142, 1404)) == doctest::Approx(52.6));
  CHECK(round1(gap_percent(1626, 2019)) == doctest::Approx(24.2));
  CHECK(gap_percent(5, 5) == 0.0);
  CHECK(round1(gap_percent(6.5, 7)) == doctest::Approx(7.7));

  GapReport r = gap_report(1887, 2019, 1626);
  CHECK(round1(r.gap_percent) == doctest::Approx(7.0));
  REQUIRE(r.improvement_percent);
  CHECK(round1(*r.improvement_percent) == doctest::Approx(16.1));
  CHECK_FALSE(gap_report(1, 2).improvement_percent);

  CHECK_THROWS_AS(gap_percent(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(improvement_percent(3, -1), std::invalid_argument);
}
