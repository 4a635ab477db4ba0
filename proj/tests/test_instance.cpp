#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "lambda_bound/errors.hpp"
#include "lambda_bound/instance.hpp"

using namespace lambda_bound;

namespace {

const char* kTwoNode = R"({
  "name": "pair", "num_wavelengths": 1, "nodes": [0, 1],
  "edges": [{"id": 0, "u": 0, "v": 1}], "requests": [] })";

// Independent connectivity check: repeated edge relaxation until fixpoint.
bool reaches_all(const Network& net, EdgeId skip) {
  std::vector<bool> seen(net.num_nodes(), false);
  seen[0] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (const Edge& e : net.edges) {
      if (e.id == skip || seen[e.u] == seen[e.v]) continue;
      seen[e.u] = seen[e.v] = true;
      grew = true;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("appendix file loads") {
  Instance inst = load_instance_file(LAMBDA_BOUND_DATA_DIR "/appendix_a.json");
  CHECK(inst.num_nodes() == 4);
  CHECK(inst.num_edges() == 5);
  CHECK(inst.num_requests() == 2);
  CHECK(inst.num_failures() == 3);
  DemandMatrix q = demand_matrix(inst);
  // labels 1..4 map to ids 0..3
  CHECK(q(0, 2) == 1);
  CHECK(q(3, 2) == 1);
  CHECK(q.total() == 2);
  CHECK(q.origins() == std::vector<NodeId>{0, 3});
}

TEST_CASE("empty request list and default failure set") {
  Instance inst = load_instance(kTwoNode);
  CHECK(inst.num_requests() == 0);
  CHECK(inst.failures == std::vector<EdgeId>{0});
  CHECK(demand_matrix(inst).total() == 0);
}

TEST_CASE("rejects malformed and invalid files") {
  CHECK_THROWS_AS(load_instance("{ not json"), ParseError);
  CHECK_THROWS_AS(load_instance(R"({"name":"x","num_wavelengths":1,"nodes":[0,1],
      "edges":[{"id":0,"u":0,"v":1}],"requests":[{"s":1,"t":1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"name":"x","num_wavelengths":0,"nodes":[0,1],
      "edges":[{"id":0,"u":0,"v":1}],"requests":[]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"name":"x","num_wavelengths":1,"nodes":[0,1],
      "edges":[{"id":0,"u":0,"v":7}],"requests":[]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"name":"x","num_wavelengths":1,"nodes":[0,1],
      "edges":[{"id":0,"u":0,"v":1}],"requests":[],"failures":[3]})"),
                  ValidationError);
  try {
    load_instance(R"({"name":"x","num_wavelengths":1,"nodes":[0,1],
        "edges":[{"id":0,"u":0,"v":"one"}],"requests":[]})");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.locus() == "edges[0].v");
  } catch (const ValidationError&) {
  }
}

TEST_CASE("string labels map in sorted order") {
  Instance inst = load_instance(R"({"name":"s","num_wavelengths":1,
      "nodes":["c","a","b"],
      "edges":[{"id":0,"u":"a","v":"b"},{"id":1,"u":"b","v":"c"},{"id":2,"u":"c","v":"a"}],
      "requests":[{"s":"c","t":"a"}]})");
  CHECK(to_string(inst.network.labels[0]) == "a");
  CHECK(inst.requests[0] == Request{2, 0});
}

TEST_CASE("gen_cycle shape") {
  Instance inst = gen_cycle(3, 2, 80);
  CHECK(inst.num_nodes() == 3);
  CHECK(inst.num_edges() == 3);
  CHECK(inst.num_requests() == 2);
  CHECK(inst.num_failures() == 3);
  CHECK(inst.requests[0] == inst.requests[1]);
  CHECK(demand_matrix(inst)(0, 2) == 2);
  CHECK_NOTHROW(gen_cycle(5, 1, 1));
  CHECK_THROWS_AS(gen_cycle(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_cycle(4, 3, 2), std::invalid_argument);

  Instance c5 = gen_cycle(5, 1, 1);
  CHECK(c5.network.edges[4] == Edge{4, 0, 4});
  for (int i = 0; i < 4; ++i) CHECK(c5.network.edges[i] == Edge{i, i, i + 1});
}

TEST_CASE("gen_random is deterministic and survives single failures") {
  CHECK(save_instance(gen_random(6, 3, 4, 10, 1)) ==
        save_instance(gen_random(6, 3, 4, 10, 1)));
  CHECK(gen_random(6, 0, 4, 10, 1).num_edges() == 6);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random(5 + seed % 6, seed % 5, 1 + seed % 7, 10, seed);
    CHECK(demand_matrix(inst).total() == inst.num_requests());
    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : inst.network.edges) {
      CHECK(e.u != e.v);
      pairs.insert(std::minmax(e.u, e.v));
    }
    CHECK(pairs.size() == inst.network.edges.size());
    for (EdgeId e : inst.failures) {
      CHECK(reaches_all(inst.network, e));
      CHECK(is_connected(inst.network, e));
    }
  }
}

TEST_CASE("arc table incidence") {
  Network single{{std::int64_t{0}, std::int64_t{1}}, {{0, 0, 1}}};
  ArcTable a(single);
  REQUIRE(a.size() == 2);
  CHECK(a[0].tail == 0);
  CHECK(a[0].head == 1);
  CHECK(a.out(0).size() == 1);
  CHECK(a.out(0)[0] == 0);
  CHECK(a.in(0)[0] == 1);

  ArcTable cyc(gen_cycle(3, 1, 1).network);
  CHECK(cyc.size() == 6);
  for (NodeId v = 0; v < 3; ++v) CHECK(cyc.out(v).size() == 2);

  Network parallel{{std::int64_t{0}, std::int64_t{1}}, {{0, 0, 1}, {1, 0, 1}}};
  ArcTable p(parallel);
  CHECK(p.size() == 4);
  CHECK(p[ArcTable::forward(1)].edge == 1);
  CHECK(p[ArcTable::backward(1)].dir == ArcDir::kBackward);
}

TEST_CASE("save/load round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = gen_random(7, 4, 5, 6, seed);
    CHECK(load_instance(save_instance(inst)) == inst);
  }
  Instance appendix = load_instance_file(LAMBDA_BOUND_DATA_DIR "/appendix_a.json");
  CHECK(load_instance(save_instance(appendix)) == appendix);
}
