#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambda_bound/instance.hpp"

namespace lambda_bound {

// Edge-id path plus wavelength index.
struct Assignment {
  std::vector<EdgeId> path;
  int wavelength = 0;
  bool operator==(const Assignment&) const = default;
};

struct ScenarioBackups {
  EdgeId failure = -1;
  std::vector<Assignment> assignments;  // one per request, in request order
  bool operator==(const ScenarioBackups&) const = default;
};

struct RwappSolution {
  std::vector<Assignment> working;  // one per request
  std::vector<ScenarioBackups> backups;
  bool operator==(const RwappSolution&) const = default;
};

RwappSolution load_solution(std::string_view text);
RwappSolution load_solution_file(const std::filesystem::path& path);
std::string save_solution(const RwappSolution& solution);

enum class ViolationKind {
  kEndpointMismatch,  // path does not join the request's endpoints
  kWorkingClash,      // two working paths share a link and a wavelength
  kScenarioClash,     // same, among the paths active while a link is down
  kBackupNotWorking,  // unaffected request whose backup differs from working
  kFailedLinkUsed,    // backup path contains its own failed link
};
const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  EdgeId failure = -1;  // -1 for the working state
  int request = -1;
  int other_request = -1;  // clashes only
  std::string message;
};

struct ValidationReport {
  bool feasible = true;
  int objective = 0;  // distinct (wavelength, edge) pairs in use
  std::vector<Violation> violations;
};

struct ValidateOptions {
  // Judge the working assignment alone, as if no link may fail.
  bool ignore_failures = false;
};

// Throws ValidationError when the solution cannot be read against the
// instance: wrong counts, unknown or missing failures, ids out of range,
// edge lists that are not simple paths.
ValidationReport validate(const Instance& instance, const RwappSolution& solution,
                          const ValidateOptions& options = {});

struct GapReport {
  double gap_percent = 0.0;
  std::optional<double> improvement_percent;
};

// (upper - lower) / lower * 100.
double gap_percent(double lower_bound, double upper_bound);
// (improved - baseline) / baseline * 100.
double improvement_percent(double improved, double baseline);
// Both throw std::invalid_argument on a nonpositive denominator.
GapReport gap_report(double lower_bound, double upper_bound,
                     std::optional<double> baseline_bound = std::nullopt);

}  // namespace lambda_bound
