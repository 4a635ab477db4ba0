#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lambda_bound::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

// One solve, as written to CSV.
struct RunRecord {
  std::string name;
  int nodes = 0, edges = 0, requests = 0;
  std::string model, method;
  std::optional<double> objective;
  long iterations = 0;
  std::optional<int> cuts;  // benders only
  long elapsed_ms = 0;
  std::string status;
  std::optional<double> im_pct, gap_pct;
};

std::string csv_header();
std::string csv_row(const RunRecord& record);

// Entry point shared by the executable and the tests. args excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lambda_bound::cli
