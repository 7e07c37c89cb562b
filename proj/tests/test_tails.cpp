#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "cka/tails.hpp"
#include "test_util.hpp"

using namespace cka;
using testutil::load_fixture;

namespace {

// Independent oracle: filter all nonempty subsets through the raw axioms,
// with MT1 phrased via reachability (ancestors of members are members).
std::vector<VertexSet> brute_force_tails(const Graph& g) {
  const int n = g.vertex_count();
  Reachability reach(g);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    VertexSet m(n, 0);
    for (int v = 0; v < n; ++v) m[v] = (mask >> v) & 1;
    bool mt1 = true;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (m[w] && reach.reaches(v, w) && !m[v]) mt1 = false;
    bool mt2 = true;
    for (int v = 0; v < n; ++v) {
      if (!m[v] || !finite_emitter(g, v)) continue;
      bool inside = false;
      for (int bi : g.out_bundles(v)) inside = inside || m[g.bundle(bi).dst];
      if (!inside) mt2 = false;
    }
    bool mt3 = true;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (!m[v] || !m[w]) continue;
        bool common = false;
        for (int y = 0; y < n; ++y)
          common = common || (m[y] && reach.reaches(v, y) && reach.reaches(w, y));
        if (!common) mt3 = false;
      }
    if (mt1 && mt2 && mt3) out.push_back(m);
  }
  return out;
}

std::vector<std::vector<std::string>> tail_ids(const Graph& g,
                                               const std::vector<MaximalTail>& ts) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : ts) out.push_back(set_ids(g, t.vertices));
  return out;
}

}  // namespace

TEST_CASE("check_maximal_tail") {
  SECTION("o2: {v} is a tail") {
    Graph g = load_fixture("o2");
    REQUIRE(is_maximal_tail(g, make_set(g, {"v"})));
  }
  SECTION("ab: {a} fails MT2") {
    Graph g = load_fixture("ab");
    TailCheck c = check_maximal_tail(g, make_set(g, {"a"}));
    REQUIRE_FALSE(c.ok());
    REQUIRE(c.mt1);
    REQUIRE_FALSE(c.mt2);
    REQUIRE(g.vertex_id(*c.mt2_violation_vertex) == "a");
  }
  SECTION("ab: {b} fails MT1, {a,b} is a tail") {
    Graph g = load_fixture("ab");
    TailCheck c = check_maximal_tail(g, make_set(g, {"b"}));
    REQUIRE_FALSE(c.mt1);
    REQUIRE(g.bundle(*c.mt1_violation_bundle).id == "e");
    REQUIRE(is_maximal_tail(g, make_set(g, {"a", "b"})));
  }
  SECTION("ex33: {x1,x2} fails MT1 (b1 reaches x1)") {
    Graph g = load_fixture("ex33");
    TailCheck c = check_maximal_tail(g, make_set(g, {"x1", "x2"}));
    REQUIRE_FALSE(c.mt1);
  }
  SECTION("empty set is rejected") {
    Graph g = load_fixture("o2");
    REQUIRE_THROWS_AS(check_maximal_tail(g, empty_set(g)), InvalidInput);
  }
}

TEST_CASE("classify_tail") {
  SECTION("loop: tau with witness (a)") {
    Graph g = load_fixture("loop");
    TailClassification c = classify_tail(g, make_set(g, {"v"}));
    REQUIRE(c.cls == TailClass::tau);
    REQUIRE(cycle_label(g, *c.exitless_cycle) == "(a)");
  }
  SECTION("o2: gamma") {
    Graph g = load_fixture("o2");
    TailClassification c = classify_tail(g, make_set(g, {"v"}));
    REQUIRE(c.cls == TailClass::gamma);
    REQUIRE_FALSE(c.exitless_cycle.has_value());
  }
  SECTION("ex12: the full tail is gamma") {
    Graph g = load_fixture("ex12");
    REQUIRE(classify_tail(g, full_set(g)).cls == TailClass::gamma);
  }
  SECTION("ex12: {x1,x2,b,u} is tau via (t1,t2)") {
    Graph g = load_fixture("ex12");
    TailClassification c = classify_tail(g, make_set(g, {"x1", "x2", "b", "u"}));
    REQUIRE(c.cls == TailClass::tau);
    REQUIRE(cycle_label(g, *c.exitless_cycle) == "(t1,t2)");
  }
  SECTION("ex33: the full tail is tau via the exitless l3") {
    Graph g = load_fixture("ex33");
    TailClassification c = classify_tail(g, full_set(g));
    REQUIRE(c.cls == TailClass::tau);
    REQUIRE(cycle_label(g, *c.exitless_cycle) == "(l3)");
  }
  SECTION("rejects non-tails") {
    Graph g = load_fixture("ab");
    REQUIRE_THROWS_AS(classify_tail(g, make_set(g, {"a"})), InvalidInput);
  }
}

TEST_CASE("maximal_tails on fixtures") {
  SECTION("loop: one tau tail") {
    Graph g = load_fixture("loop");
    auto ts = maximal_tails(g);
    REQUIRE(ts.size() == 1);
    REQUIRE(set_ids(g, ts[0].vertices) == std::vector<std::string>{"v"});
    REQUIRE(ts[0].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[0].exitless_cycle) == "(a)");
  }
  SECTION("o2: one gamma tail") {
    Graph g = load_fixture("o2");
    auto ts = maximal_tails(g);
    REQUIRE(ts.size() == 1);
    REQUIRE(ts[0].cls == TailClass::gamma);
  }
  SECTION("ab: only the full tail") {
    Graph g = load_fixture("ab");
    auto ts = maximal_tails(g);
    REQUIRE(tail_ids(g, ts) ==
            std::vector<std::vector<std::string>>{{"a", "b"}});
    REQUIRE(ts[0].cls == TailClass::gamma);
  }
  SECTION("ex12: four tails") {
    Graph g = load_fixture("ex12");
    auto ts = maximal_tails(g);
    REQUIRE(tail_ids(g, ts) ==
            std::vector<std::vector<std::string>>{
                {"x1", "x2", "x3", "b", "u", "w"},
                {"x1", "x2", "b", "u"},
                {"b", "u"},
                {"w"}});
    REQUIRE(ts[0].cls == TailClass::gamma);
    REQUIRE(ts[1].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[1].exitless_cycle) == "(t1,t2)");
    REQUIRE(ts[2].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[2].exitless_cycle) == "(e,f)");
    REQUIRE(ts[3].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[3].exitless_cycle) == "(d)");
  }
  SECTION("ex33: three tails") {
    Graph g = load_fixture("ex33");
    auto ts = maximal_tails(g);
    REQUIRE(tail_ids(g, ts) ==
            std::vector<std::vector<std::string>>{
                {"x1", "x2", "x3", "b1", "b2", "b3"},
                {"x1", "x2", "b1", "b2", "b3"},
                {"b1", "b2", "b3"}});
    REQUIRE(ts[0].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[0].exitless_cycle) == "(l3)");
    REQUIRE(ts[1].cls == TailClass::gamma);
    REQUIRE(ts[2].cls == TailClass::tau);
    REQUIRE(cycle_label(g, *ts[2].exitless_cycle) == "(c2,c3)");
  }
}

TEST_CASE("maximal_tails equals the axiom-filter oracle") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    CAPTURE(stem);
    auto fast = maximal_tails(g);
    auto slow = brute_force_tails(g);
    REQUIRE(fast.size() == slow.size());
    std::set<VertexSet> slow_set(slow.begin(), slow.end());
    for (const auto& t : fast) REQUIRE(slow_set.count(t.vertices) == 1);
  }
}

TEST_CASE("complement duality: tail complements are hereditary-saturated") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    for (const MaximalTail& t : maximal_tails(g)) {
      VertexSet comp = empty_set(g);
      for (int v = 0; v < g.vertex_count(); ++v) comp[v] = t.vertices[v] ? 0 : 1;
      SubsetCheck c = check_subset(g, comp);
      REQUIRE(c.hereditary);
      REQUIRE(c.saturated);
    }
  }
}

TEST_CASE("classification is exhaustive and exclusive") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    for (const MaximalTail& t : maximal_tails(g)) {
      if (t.cls == TailClass::tau) {
        REQUIRE(t.exitless_cycle.has_value());
        REQUIRE(loop_exits(g, *t.exitless_cycle, t.vertices).empty());
      } else {
        REQUIRE_FALSE(t.exitless_cycle.has_value());
        // Every cycle inside the tail has an exit into it.
        Graph sub = restriction(g, t.vertices, "m");
        for (const Cycle& c : vertex_simple_cycles(sub)) {
          Cycle in_g = map_cycle_by_id(sub, g, c);
          REQUIRE_FALSE(loop_exits(g, in_g, t.vertices).empty());
        }
      }
    }
  }
}
