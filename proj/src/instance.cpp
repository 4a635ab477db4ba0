#include "lambda_bound/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "lambda_bound/errors.hpp"

namespace lambda_bound {

using namespace detail;

std::string to_string(const NodeLabel& label) {
  if (const auto* i = std::get_if<std::int64_t>(&label)) return std::to_string(*i);
  return std::get<std::string>(label);
}

ArcTable::ArcTable(const Network& network) {
  const int n = network.num_nodes();
  arcs_.reserve(2 * network.edges.size());
  for (const Edge& e : network.edges) {
    arcs_.push_back({e.id, e.u, e.v, ArcDir::kForward});
    arcs_.push_back({e.id, e.v, e.u, ArcDir::kBackward});
  }
  // Counting sort keeps each incidence list in ascending arc order.
  out_start_.assign(n + 1, 0);
  in_start_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_start_[a.tail + 1];
    ++in_start_[a.head + 1];
  }
  std::partial_sum(out_start_.begin(), out_start_.end(), out_start_.begin());
  std::partial_sum(in_start_.begin(), in_start_.end(), in_start_.begin());
  out_.resize(arcs_.size());
  in_.resize(arcs_.size());
  std::vector<int> out_fill(out_start_.begin(), out_start_.end() - 1);
  std::vector<int> in_fill(in_start_.begin(), in_start_.end() - 1);
  for (ArcId a = 0; a < size(); ++a) {
    out_[out_fill[arcs_[a].tail]++] = a;
    in_[in_fill[arcs_[a].head]++] = a;
  }
}

std::span<const ArcId> ArcTable::out(NodeId v) const {
  return {out_.data() + out_start_[v],
          static_cast<std::size_t>(out_start_[v + 1] - out_start_[v])};
}

std::span<const ArcId> ArcTable::in(NodeId v) const {
  return {in_.data() + in_start_[v],
          static_cast<std::size_t>(in_start_[v + 1] - in_start_[v])};
}

int DemandMatrix::origin_total(NodeId s) const {
  int sum = 0;
  for (NodeId t = 0; t < n_; ++t) sum += (*this)(s, t);
  return sum;
}

int DemandMatrix::total() const {
  return std::accumulate(q_.begin(), q_.end(), 0);
}

std::vector<NodeId> DemandMatrix::origins() const {
  std::vector<NodeId> result;
  for (NodeId s = 0; s < n_; ++s)
    if (origin_total(s) > 0) result.push_back(s);
  return result;
}

ArcTable arcs(const Network& network) { return ArcTable(network); }

DemandMatrix demand_matrix(const Instance& instance) {
  DemandMatrix q(instance.num_nodes());
  for (const Request& r : instance.requests) ++q.at(r.s, r.t);
  return q;
}

bool is_connected(const Network& network, EdgeId removed) {
  const int n = network.num_nodes();
  if (n == 0) return true;
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : network.edges) {
    if (e.id == removed) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

void validate_instance(const Instance& inst) {
  const int n = inst.num_nodes();
  if (n < 1) throw ValidationError("instance has no nodes");
  if (inst.num_wavelengths < 1)
    throw ValidationError("num_wavelengths must be >= 1");
  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge& edge = inst.network.edges[e];
    if (edge.id != e)
      throw ValidationError("edge ids must be dense 0..|E|-1");
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n)
      throw ValidationError("edge " + std::to_string(e) +
                            " references an unknown node");
    if (edge.u == edge.v)
      throw ValidationError("edge " + std::to_string(e) + " is a self-loop");
  }
  for (std::size_t d = 0; d < inst.requests.size(); ++d) {
    const Request& r = inst.requests[d];
    if (r.s < 0 || r.s >= n || r.t < 0 || r.t >= n)
      throw ValidationError("request " + std::to_string(d) +
                            " references an unknown node");
    if (r.s == r.t)
      throw ValidationError("request " + std::to_string(d) +
                            " has identical origin and destination");
  }
  for (std::size_t i = 0; i < inst.failures.size(); ++i) {
    EdgeId f = inst.failures[i];
    if (f < 0 || f >= inst.num_edges())
      throw ValidationError("failure edge " + std::to_string(f) +
                            " is not an edge of the network");
    if (i > 0 && inst.failures[i - 1] >= f)
      throw ValidationError("failure set must be sorted and duplicate-free");
  }
  if (!is_connected(inst.network))
    throw ValidationError("network is not connected");
}

namespace {

NodeLabel as_label(const Json& v, const std::string& locus) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) return v.get<std::string>();
  throw ParseError(locus, "node label must be an integer or a string");
}

Json label_json(const NodeLabel& label) {
  if (const auto* i = std::get_if<std::int64_t>(&label)) return *i;
  return std::get<std::string>(label);
}

}  // namespace

Instance load_instance(std::string_view text) {
  const Json root = parse_json(text);

  Instance inst;
  const Json& name = field(root, "name", "root");
  if (!name.is_string()) throw ParseError("name", "expected a string");
  inst.name = name.get<std::string>();
  inst.num_wavelengths =
      static_cast<int>(as_int(field(root, "num_wavelengths", "root"),
                              "num_wavelengths"));

  // Labels map to dense ids in sorted order (integers before strings).
  const Json& nodes = as_array(field(root, "nodes", "root"), "nodes");
  std::vector<NodeLabel> labels;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    labels.push_back(as_label(nodes[i], "nodes[" + std::to_string(i) + "]"));
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ValidationError("duplicate node label");
  std::map<NodeLabel, NodeId> id_of;
  for (std::size_t i = 0; i < labels.size(); ++i)
    id_of[labels[i]] = static_cast<NodeId>(i);
  inst.network.labels = labels;

  auto resolve = [&](const Json& v, const std::string& locus) {
    NodeLabel label = as_label(v, locus);
    auto it = id_of.find(label);
    if (it == id_of.end())
      throw ValidationError(locus + ": unknown node label " + to_string(label));
    return it->second;
  };

  const Json& edges = as_array(field(root, "edges", "root"), "edges");
  const int m = static_cast<int>(edges.size());
  inst.network.edges.assign(m, Edge{-1, 0, 0});
  for (int i = 0; i < m; ++i) {
    const std::string locus = "edges[" + std::to_string(i) + "]";
    std::int64_t id = as_int(field(edges[i], "id", locus), locus + ".id");
    if (id < 0 || id >= m)
      throw ValidationError(locus + ".id: edge ids must be 0..|E|-1");
    if (inst.network.edges[id].id != -1)
      throw ValidationError(locus + ".id: duplicate edge id");
    Edge& e = inst.network.edges[id];
    e.id = static_cast<EdgeId>(id);
    e.u = resolve(field(edges[i], "u", locus), locus + ".u");
    e.v = resolve(field(edges[i], "v", locus), locus + ".v");
  }

  const Json& reqs = as_array(field(root, "requests", "root"), "requests");
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string locus = "requests[" + std::to_string(i) + "]";
    Request r;
    r.s = resolve(field(reqs[i], "s", locus), locus + ".s");
    r.t = resolve(field(reqs[i], "t", locus), locus + ".t");
    inst.requests.push_back(r);
  }

  if (auto it = root.find("failures"); it != root.end()) {
    const Json& fails = as_array(*it, "failures");
    for (std::size_t i = 0; i < fails.size(); ++i) {
      std::int64_t f = as_int(fails[i], "failures[" + std::to_string(i) + "]");
      if (f < 0 || f >= m)
        throw ValidationError("failures[" + std::to_string(i) +
                              "]: not an edge id");
      inst.failures.push_back(static_cast<EdgeId>(f));
    }
    std::sort(inst.failures.begin(), inst.failures.end());
    inst.failures.erase(std::unique(inst.failures.begin(), inst.failures.end()),
                        inst.failures.end());
  } else {
    inst.failures.resize(m);
    std::iota(inst.failures.begin(), inst.failures.end(), 0);
  }

  validate_instance(inst);
  return inst;
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

std::string save_instance(const Instance& inst) {
  // One array element per line keeps diffs of instance files readable.
  auto dump_array = [](const Json& arr) {
    if (arr.empty()) return std::string("[]");
    std::string out = "[\n";
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out += "    " + arr[i].dump();
      out += (i + 1 < arr.size()) ? ",\n" : "\n";
    }
    return out + "  ]";
  };
  const auto& labels = inst.network.labels;
  Json nodes = Json::array();
  for (const NodeLabel& l : labels) nodes.push_back(label_json(l));
  Json edges = Json::array();
  for (const Edge& e : inst.network.edges)
    edges.push_back(
        {{"id", e.id}, {"u", label_json(labels[e.u])}, {"v", label_json(labels[e.v])}});
  Json reqs = Json::array();
  for (const Request& r : inst.requests)
    reqs.push_back({{"s", label_json(labels[r.s])}, {"t", label_json(labels[r.t])}});
  Json fails = Json::array();
  for (EdgeId f : inst.failures) fails.push_back(f);

  std::string out = "{\n";
  out += "  \"name\": " + Json(inst.name).dump() + ",\n";
  out += "  \"num_wavelengths\": " + std::to_string(inst.num_wavelengths) + ",\n";
  out += "  \"nodes\": " + nodes.dump() + ",\n";
  out += "  \"edges\": " + dump_array(edges) + ",\n";
  out += "  \"requests\": " + dump_array(reqs) + ",\n";
  out += "  \"failures\": " + fails.dump() + "\n";
  out += "}\n";
  return out;
}

void save_instance_file(const Instance& instance,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << save_instance(instance);
}

namespace {

// Unbiased draw from [0, bound); the standard distributions are not
// specified bit-exactly across library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void set_integer_labels(Network& net, int n) {
  net.labels.clear();
  for (int v = 0; v < n; ++v) net.labels.emplace_back(std::int64_t{v});
}

}  // namespace

Instance gen_cycle(int m, int n, int k) {
  if (m < 3) throw std::invalid_argument("gen_cycle: m must be >= 3");
  if (n < 1) throw std::invalid_argument("gen_cycle: n must be >= 1");
  if (k < n) throw std::invalid_argument("gen_cycle: k must be >= n");
  Instance inst;
  inst.name = "cycle_m" + std::to_string(m) + "_n" + std::to_string(n) +
              "_k" + std::to_string(k);
  set_integer_labels(inst.network, m);
  for (int i = 0; i + 1 < m; ++i) inst.network.edges.push_back({i, i, i + 1});
  inst.network.edges.push_back({m - 1, 0, m - 1});
  inst.num_wavelengths = k;
  inst.requests.assign(n, Request{0, m - 1});
  inst.failures.resize(m);
  std::iota(inst.failures.begin(), inst.failures.end(), 0);
  return inst;
}

Instance gen_random(int num_nodes, int extra_edges, int num_requests, int k,
                    std::uint64_t seed) {
  if (num_nodes < 3)
    throw std::invalid_argument("gen_random: num_nodes must be >= 3");
  if (extra_edges < 0 || num_requests < 0)
    throw std::invalid_argument("gen_random: counts must be nonnegative");
  if (k < 1 || k < num_requests)
    throw std::invalid_argument("gen_random: k must be >= max(1, num_requests)");
  const long max_chords =
      static_cast<long>(num_nodes) * (num_nodes - 1) / 2 - num_nodes;
  if (extra_edges > max_chords)
    throw std::invalid_argument("gen_random: too many extra edges");

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.name = "random_v" + std::to_string(num_nodes) + "_x" +
              std::to_string(extra_edges) + "_d" + std::to_string(num_requests) +
              "_k" + std::to_string(k) + "_s" + std::to_string(seed);
  set_integer_labels(inst.network, num_nodes);

  std::vector<NodeId> perm(num_nodes);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = num_nodes - 1; i > 0; --i)
    std::swap(perm[i], perm[uniform_below(rng, i + 1)]);

  std::vector<char> adjacent(static_cast<std::size_t>(num_nodes) * num_nodes, 0);
  auto add_edge = [&](NodeId a, NodeId b) {
    NodeId u = std::min(a, b), v = std::max(a, b);
    inst.network.edges.push_back({inst.num_edges(), u, v});
    adjacent[u * num_nodes + v] = adjacent[v * num_nodes + u] = 1;
  };
  for (int i = 0; i < num_nodes; ++i)
    add_edge(perm[i], perm[(i + 1) % num_nodes]);

  std::vector<std::pair<NodeId, NodeId>> chords;
  for (NodeId u = 0; u < num_nodes; ++u)
    for (NodeId v = u + 1; v < num_nodes; ++v)
      if (!adjacent[u * num_nodes + v]) chords.emplace_back(u, v);
  for (int i = 0; i < extra_edges; ++i) {
    std::size_t pick = uniform_below(rng, chords.size());
    add_edge(chords[pick].first, chords[pick].second);
    chords.erase(chords.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  for (int d = 0; d < num_requests; ++d) {
    NodeId s = static_cast<NodeId>(uniform_below(rng, num_nodes));
    NodeId t = static_cast<NodeId>(uniform_below(rng, num_nodes - 1));
    if (t >= s) ++t;
    inst.requests.push_back({s, t});
  }
  inst.num_wavelengths = k;
  inst.failures.resize(inst.num_edges());
  std::iota(inst.failures.begin(), inst.failures.end(), 0);
  return inst;
}

}  // namespace lambda_bound
