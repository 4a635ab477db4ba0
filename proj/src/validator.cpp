#include "lambda_bound/validator.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "lambda_bound/errors.hpp"

namespace lambda_bound {

using namespace detail;

namespace {

Assignment parse_assignment(const Json& v, const std::string& locus) {
  Assignment a;
  const Json& path = as_array(field(v, "path", locus), locus + ".path");
  for (std::size_t i = 0; i < path.size(); ++i)
    a.path.push_back(static_cast<EdgeId>(
        as_int(path[i], locus + ".path[" + std::to_string(i) + "]")));
  a.wavelength = static_cast<int>(as_int(field(v, "wavelength", locus), locus + ".wavelength"));
  return a;
}

Json assignment_json(const Assignment& a) {
  return Json{{"path", a.path}, {"wavelength", a.wavelength}};
}

// Node sequence of the edge list walked from `from`, or nothing when the
// edges do not chain up from there.
std::optional<std::vector<NodeId>> walk(const Network& net, const std::vector<EdgeId>& path,
                                        NodeId from) {
  std::vector<NodeId> nodes{from};
  for (EdgeId e : path) {
    const Edge& edge = net.edges[e];
    if (edge.u == nodes.back()) nodes.push_back(edge.v);
    else if (edge.v == nodes.back()) nodes.push_back(edge.u);
    else return std::nullopt;
  }
  return nodes;
}

bool simple(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

bool shares_edge(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  for (EdgeId e : a)
    if (std::find(b.begin(), b.end(), e) != b.end()) return true;
  return false;
}

bool contains(const std::vector<EdgeId>& path, EdgeId e) {
  return std::find(path.begin(), path.end(), e) != path.end();
}

class Checker {
 public:
  Checker(const Instance& inst, ValidationReport& report) : inst_(inst), report_(report) {}

  // Throws on malformed input; records an endpoint finding otherwise.
  void check_path(const Assignment& a, int d, EdgeId failure, const std::string& locus) {
    if (a.path.empty()) throw ValidationError(locus + ": empty path");
    for (EdgeId e : a.path)
      if (e < 0 || e >= inst_.num_edges())
        throw ValidationError(locus + ": edge id " + std::to_string(e) + " out of range");
    if (a.wavelength < 0 || a.wavelength >= inst_.num_wavelengths)
      throw ValidationError(locus + ": wavelength " + std::to_string(a.wavelength) +
                            " out of range");
    const Request& r = inst_.requests[d];
    if (auto nodes = walk(inst_.network, a.path, r.s)) {
      if (!simple(*nodes)) throw ValidationError(locus + ": path repeats a node");
      if (nodes->back() == r.t) return;
    } else {
      const Edge& first = inst_.network.edges[a.path.front()];
      auto from_u = walk(inst_.network, a.path, first.u);
      auto from_v = walk(inst_.network, a.path, first.v);
      auto seq = from_u ? from_u : from_v;
      if (!seq) throw ValidationError(locus + ": edges do not form a path");
      if (!simple(*seq)) throw ValidationError(locus + ": path repeats a node");
    }
    add(ViolationKind::kEndpointMismatch, failure, d, -1,
        locus + ": path does not join the request's endpoints");
  }

  void check_clashes(const std::vector<Assignment>& active, EdgeId failure,
                     const std::string& where) {
    for (int a = 0; a < static_cast<int>(active.size()); ++a)
      for (int b = a + 1; b < static_cast<int>(active.size()); ++b)
        if (active[a].wavelength == active[b].wavelength &&
            shares_edge(active[a].path, active[b].path))
          add(failure < 0 ? ViolationKind::kWorkingClash : ViolationKind::kScenarioClash,
              failure, a, b,
              where + ": requests " + std::to_string(a) + " and " + std::to_string(b) +
                  " share a link on wavelength " + std::to_string(active[a].wavelength));
  }

  void add(ViolationKind kind, EdgeId failure, int d, int other, std::string message) {
    report_.violations.push_back({kind, failure, d, other, std::move(message)});
  }

  void use(const Assignment& a) {
    for (EdgeId e : a.path) pairs_.emplace(a.wavelength, e);
  }

  int objective() const { return static_cast<int>(pairs_.size()); }

 private:
  const Instance& inst_;
  ValidationReport& report_;
  std::set<std::pair<int, EdgeId>> pairs_;
};

}  // namespace

RwappSolution load_solution(std::string_view text) {
  const Json root = parse_json(text);
  RwappSolution sol;
  const Json& working = as_array(field(root, "working", "root"), "working");
  for (std::size_t i = 0; i < working.size(); ++i)
    sol.working.push_back(parse_assignment(working[i], "working[" + std::to_string(i) + "]"));
  if (auto it = root.find("backups"); it != root.end()) {
    const Json& backups = as_array(*it, "backups");
    for (std::size_t i = 0; i < backups.size(); ++i) {
      const std::string locus = "backups[" + std::to_string(i) + "]";
      ScenarioBackups sb;
      sb.failure = static_cast<EdgeId>(as_int(field(backups[i], "failure", locus), locus + ".failure"));
      const Json& list =
          as_array(field(backups[i], "assignments", locus), locus + ".assignments");
      for (std::size_t j = 0; j < list.size(); ++j)
        sb.assignments.push_back(
            parse_assignment(list[j], locus + ".assignments[" + std::to_string(j) + "]"));
      sol.backups.push_back(std::move(sb));
    }
  }
  return sol;
}

RwappSolution load_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_solution(buf.str());
}

std::string save_solution(const RwappSolution& sol) {
  std::string out = "{\n  \"working\": [";
  for (std::size_t i = 0; i < sol.working.size(); ++i)
    out += (i ? ",\n    " : "\n    ") + assignment_json(sol.working[i]).dump();
  out += sol.working.empty() ? "],\n" : "\n  ],\n";
  out += "  \"backups\": [";
  for (std::size_t b = 0; b < sol.backups.size(); ++b) {
    const ScenarioBackups& sb = sol.backups[b];
    out += b ? ",\n" : "\n";
    out += "    {\"failure\": " + std::to_string(sb.failure) + ", \"assignments\": [";
    for (std::size_t i = 0; i < sb.assignments.size(); ++i)
      out += (i ? ",\n      " : "\n      ") + assignment_json(sb.assignments[i]).dump();
    out += sb.assignments.empty() ? "]}" : "\n    ]}";
  }
  out += sol.backups.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEndpointMismatch: return "endpoint-mismatch";
    case ViolationKind::kWorkingClash: return "working-clash";
    case ViolationKind::kScenarioClash: return "scenario-clash";
    case ViolationKind::kBackupNotWorking: return "backup-differs-from-working";
    case ViolationKind::kFailedLinkUsed: return "failed-link-used";
  }
  return "?";
}

ValidationReport validate(const Instance& inst, const RwappSolution& sol,
                          const ValidateOptions& options) {
  const int D = inst.num_requests();
  if (static_cast<int>(sol.working.size()) != D)
    throw ValidationError("working: expected " + std::to_string(D) + " assignments, got " +
                          std::to_string(sol.working.size()));

  std::vector<const ScenarioBackups*> by_failure;  // parallel to inst.failures
  if (!options.ignore_failures) {
    by_failure.assign(inst.failures.size(), nullptr);
    for (std::size_t i = 0; i < sol.backups.size(); ++i) {
      const ScenarioBackups& sb = sol.backups[i];
      const std::string locus = "backups[" + std::to_string(i) + "]";
      auto it = std::lower_bound(inst.failures.begin(), inst.failures.end(), sb.failure);
      if (it == inst.failures.end() || *it != sb.failure)
        throw ValidationError(locus + ": edge " + std::to_string(sb.failure) +
                              " is not in the failure set");
      const auto pos = it - inst.failures.begin();
      if (by_failure[pos]) throw ValidationError(locus + ": failure listed twice");
      if (static_cast<int>(sb.assignments.size()) != D)
        throw ValidationError(locus + ": expected " + std::to_string(D) + " assignments");
      by_failure[pos] = &sb;
    }
    for (std::size_t f = 0; f < inst.failures.size(); ++f)
      if (!by_failure[f])
        throw ValidationError("backups: failure " + std::to_string(inst.failures[f]) +
                              " is missing");
  }

  ValidationReport report;
  Checker check(inst, report);
  for (int d = 0; d < D; ++d) {
    check.check_path(sol.working[d], d, -1, "working[" + std::to_string(d) + "]");
    check.use(sol.working[d]);
  }
  check.check_clashes(sol.working, -1, "working");

  for (std::size_t f = 0; f < by_failure.size(); ++f) {
    const EdgeId tau = inst.failures[f];
    const ScenarioBackups& sb = *by_failure[f];
    const std::string where = "failure " + std::to_string(tau);
    for (int d = 0; d < D; ++d) {
      const Assignment& b = sb.assignments[d];
      const std::string locus = where + " request " + std::to_string(d);
      check.check_path(b, d, tau, locus);
      check.use(b);
      if (contains(b.path, tau))
        check.add(ViolationKind::kFailedLinkUsed, tau, d, -1,
                  locus + ": backup uses the failed link");
      if (!contains(sol.working[d].path, tau) && !(b == sol.working[d]))
        check.add(ViolationKind::kBackupNotWorking, tau, d, -1,
                  locus + ": working path survives but the backup differs");
    }
    check.check_clashes(sb.assignments, tau, where);
  }

  report.objective = check.objective();
  report.feasible = report.violations.empty();
  return report;
}

double gap_percent(double lower_bound, double upper_bound) {
  if (!(lower_bound > 0)) throw std::invalid_argument("gap: lower bound must be positive");
  return (upper_bound - lower_bound) / lower_bound * 100.0;
}

double improvement_percent(double improved, double baseline) {
  if (!(baseline > 0)) throw std::invalid_argument("improvement: baseline must be positive");
  return (improved - baseline) / baseline * 100.0;
}

GapReport gap_report(double lower_bound, double upper_bound,
                     std::optional<double> baseline_bound) {
  GapReport r;
  r.gap_percent = gap_percent(lower_bound, upper_bound);
  if (baseline_bound) r.improvement_percent = improvement_percent(lower_bound, *baseline_bound);
  return r;
}

}  // namespace lambda_bound
