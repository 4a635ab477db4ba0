#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lambda_bound {

using NodeId = int;
using EdgeId = int;
using ArcId = int;

// Undirected link. Parallel edges are allowed and told apart by id.
struct Edge {
  EdgeId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  bool operator==(const Edge&) const = default;
};

enum class ArcDir { kForward, kBackward };

// Directed copy of an edge. The forward arc of {u,v} runs u -> v.
struct Arc {
  EdgeId edge = 0;
  NodeId tail = 0;
  NodeId head = 0;
  ArcDir dir = ArcDir::kForward;
};

struct Request {
  NodeId s = 0;
  NodeId t = 0;
  bool operator==(const Request&) const = default;
};

// External node names as they appear in instance files.
using NodeLabel = std::variant<std::int64_t, std::string>;

std::string to_string(const NodeLabel& label);

struct Network {
  std::vector<NodeLabel> labels;  // labels[v] for dense id v
  std::vector<Edge> edges;        // edges[e].id == e

  int num_nodes() const { return static_cast<int>(labels.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool operator==(const Network&) const = default;
};

struct Instance {
  std::string name;
  Network network;
  int num_wavelengths = 1;
  std::vector<Request> requests;
  std::vector<EdgeId> failures;  // sorted, unique

  int num_nodes() const { return network.num_nodes(); }
  int num_edges() const { return network.num_edges(); }
  int num_requests() const { return static_cast<int>(requests.size()); }
  int num_failures() const { return static_cast<int>(failures.size()); }
  bool operator==(const Instance&) const = default;
};

// Arc set A with per-node incidence lists. Arc 2e is the forward arc of edge
// e and arc 2e+1 the backward one.
class ArcTable {
 public:
  explicit ArcTable(const Network& network);

  static ArcId forward(EdgeId e) { return 2 * e; }
  static ArcId backward(EdgeId e) { return 2 * e + 1; }

  int size() const { return static_cast<int>(arcs_.size()); }
  const Arc& operator[](ArcId a) const { return arcs_[a]; }
  std::span<const ArcId> out(NodeId v) const;  // A+(v)
  std::span<const ArcId> in(NodeId v) const;   // A-(v)

 private:
  std::vector<Arc> arcs_;
  std::vector<int> out_start_, in_start_;
  std::vector<ArcId> out_, in_;
};

// Aggregated request counts q[s][t].
class DemandMatrix {
 public:
  explicit DemandMatrix(int num_nodes)
      : n_(num_nodes), q_(static_cast<std::size_t>(num_nodes) * num_nodes, 0) {}

  int num_nodes() const { return n_; }
  int operator()(NodeId s, NodeId t) const { return q_[index(s, t)]; }
  int& at(NodeId s, NodeId t) { return q_[index(s, t)]; }
  int origin_total(NodeId s) const;
  int total() const;
  // Nodes that originate at least one request, ascending.
  std::vector<NodeId> origins() const;

 private:
  std::size_t index(NodeId s, NodeId t) const {
    return static_cast<std::size_t>(s) * n_ + t;
  }
  int n_;
  std::vector<int> q_;
};

ArcTable arcs(const Network& network);
DemandMatrix demand_matrix(const Instance& instance);

// True when the graph restricted to edges other than `removed` spans every
// node. Pass removed = -1 to test the full graph.
bool is_connected(const Network& network, EdgeId removed = -1);

// Throws ValidationError on a broken invariant.
void validate_instance(const Instance& instance);

Instance load_instance(std::string_view text);
Instance load_instance_file(const std::filesystem::path& path);
std::string save_instance(const Instance& instance);
void save_instance_file(const Instance& instance,
                        const std::filesystem::path& path);

// Cycle 0-1-...-(m-1)-0 with n requests from node 0 to node m-1, all edges
// failing. Edge i joins {i, i+1}; edge m-1 is the chord {0, m-1}.
Instance gen_cycle(int m, int n, int k);

// Hamiltonian cycle over a seeded node permutation plus `extra_edges`
// distinct chords, so every single-edge failure leaves the graph connected.
// Requests are uniform over ordered pairs; all edges fail; requires
// k >= num_requests.
Instance gen_random(int num_nodes, int extra_edges, int num_requests, int k,
                    std::uint64_t seed);

}  // namespace lambda_bound
