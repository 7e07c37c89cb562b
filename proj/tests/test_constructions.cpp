#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cka/corpus.hpp"
#include "test_util.hpp"

using namespace cka;
using testutil::load_fixture;

namespace {

std::vector<std::string> family_labels(const Graph& g, const FResult& r) {
  std::vector<std::string> out;
  for (const PathFamily& f : r.families) out.push_back(family_label(g, f.bundles));
  return out;
}

Graph o2_plus_sink() {
  Graph g("o2s");
  g.add_vertex("v");
  g.add_vertex("s");
  g.add_bundle("a", "v", "v", Count(1));
  g.add_bundle("b", "v", "v", Count(1));
  g.add_bundle("c", "v", "s", Count(1));
  return g;
}

/// Independent naive family enumerator for the brute-force finiteness
/// oracle: literal walk over bundles, no shared code with the library DFS.
/// Walks revisiting an intermediate vertex a third time are pruned: an
/// unavoidable witness (omega edge or single pump) survives with every
/// vertex on at most an entry path, one cycle, and an exit path.
void naive_families(const Graph& g, const VertexSet& x, const VertexSet& b,
                    int depth, std::vector<int>& cur, std::vector<int>& visits,
                    int u, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) >= depth) return;
  for (int bi : g.out_bundles(u)) {
    int w = g.bundle(bi).dst;
    cur.push_back(bi);
    if (x[w] || b[w]) {
      bool excluded = cur.size() == 1 && b[u] && x[w];
      if (!excluded) out.push_back(cur);
    } else if (visits[w] < 3) {
      ++visits[w];
      naive_families(g, x, b, depth, cur, visits, w, out);
      --visits[w];
    }
    cur.pop_back();
  }
}

/// Oracle finiteness: within a generous window (3n+3) an infinite F must
/// show an omega-count family or a family revisiting a start/intermediate
/// vertex, and a finite F shows neither.  The family's final vertex is not
/// part of the repeat test: walks never continue through X or B, so landing
/// back on the start vertex of a B-rooted family cannot be pumped.
bool oracle_f_finite(const Graph& g, const VertexSet& x, const VertexSet& b) {
  std::vector<std::vector<int>> fams;
  std::vector<int> cur;
  std::vector<int> visits(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s)
    if (!x[s])
      naive_families(g, x, b, 3 * g.vertex_count() + 3, cur, visits, s, fams);
  for (const auto& fam : fams) {
    std::set<int> seen;
    seen.insert(g.bundle(fam[0]).src);
    bool repeat = false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (g.bundle(fam[i]).mult.is_omega()) return false;  // omega family
      if (i + 1 < fam.size())
        repeat = repeat || !seen.insert(g.bundle(fam[i]).dst).second;
    }
    if (repeat) return false;  // pumpable family
  }
  return true;
}

}  // namespace

TEST_CASE("f_paths input validation") {
  Graph ab = load_fixture("ab");
  CHECK_THROWS_AS(f_paths(ab, make_set(ab, {"b"}), empty_set(ab), 3),
                  InvalidInput);  // {b} is not saturated
  CHECK_THROWS_AS(f_paths(ab, empty_set(ab), empty_set(ab), 3), InvalidInput);
  CHECK_THROWS_AS(f_paths(ab, full_set(ab), empty_set(ab), 0), InvalidInput);
  Graph ex12 = load_fixture("ex12");
  CHECK_THROWS_AS(f_paths(ex12, make_set(ex12, {"x1", "x2", "x3"}),
                          make_set(ex12, {"u"}), 3),
                  InvalidInput);  // u is not in X^fin_inf
}

TEST_CASE("f_paths frozen listing for EX12") {
  Graph g = load_fixture("ex12");
  VertexSet x = make_set(g, {"x1", "x2", "x3"});
  VertexSet b = make_set(g, {"b"});
  FResult r = f_paths(g, x, b, 3);
  CHECK(family_labels(g, r) ==
        std::vector<std::string>{"(f)", "(g)", "(h)", "(e,f)", "(e,g)",
                                 "(d,h)", "(d,d,h)"});
  for (const PathFamily& f : r.families) CHECK(f.count == Count(1));
  CHECK_FALSE(r.is_finite);
  CHECK(r.depth_used == 3);
  CHECK_FALSE(r.omega_witness_bundle.has_value());
  REQUIRE(r.pump_witness_vertex.has_value());
  CHECK(g.vertex_id(*r.pump_witness_vertex) == "w");
}

TEST_CASE("f_paths frozen listing for EX33") {
  Graph g = load_fixture("ex33");
  VertexSet x = make_set(g, {"x1", "x2", "x3"});
  FResult r1 = f_paths(g, x, empty_set(g), 1);
  CHECK(family_labels(g, r1) ==
        std::vector<std::string>{"(v1)", "(v2)", "(v3)"});
  CHECK(r1.families[0].count == Count(1));
  CHECK(r1.families[1].count == Count(1));
  CHECK(r1.families[2].count == Count::omega());
  CHECK_FALSE(r1.is_finite);
  REQUIRE(r1.omega_witness_bundle.has_value());
  CHECK(g.bundle(*r1.omega_witness_bundle).id == "v3");

  FResult r2 = f_paths(g, x, empty_set(g), 2);
  CHECK(family_labels(g, r2) ==
        std::vector<std::string>{"(v1)", "(v2)", "(v3)", "(c1,v2)", "(c2,v3)",
                                 "(c3,v2)"});
  CHECK(r2.families[4].count == Count::omega());
}

TEST_CASE("f_paths on the loop-with-sink-exit graph") {
  Graph g = o2_plus_sink();
  VertexSet x = make_set(g, {"s"});
  FResult r1 = f_paths(g, x, empty_set(g), 1);
  CHECK(family_labels(g, r1) == std::vector<std::string>{"(c)"});
  CHECK_FALSE(r1.is_finite);
  REQUIRE(r1.pump_witness_vertex.has_value());
  CHECK(g.vertex_id(*r1.pump_witness_vertex) == "v");

  FResult r2 = f_paths(g, x, empty_set(g), 2);
  CHECK(family_labels(g, r2) ==
        std::vector<std::string>{"(c)", "(a,c)", "(b,c)"});
}

TEST_CASE("f_paths with X = whole vertex set") {
  Graph g = load_fixture("o2");
  FResult r = f_paths(g, full_set(g), empty_set(g), 5);
  CHECK(r.families.empty());
  CHECK(r.is_finite);
}

TEST_CASE("f_paths finiteness agrees with the brute-force oracle") {
  // Fixtures with every valid (X, B) pair.
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    for (const IdealSpec& spec : enumerate_gauge_ideals(g)) {
      if (set_empty(spec.x)) continue;
      FResult r = f_paths(g, spec.x, spec.b, 3);
      CHECK(r.is_finite == oracle_f_finite(g, spec.x, spec.b));
    }
  }
  // Random graphs: every hereditary & saturated X with B = empty and full.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.vertices = 2 + static_cast<int>(seed % 5);
    Graph g = random_graph(p);
    for (const VertexSet& x : enumerate_hersat(g)) {
      if (set_empty(x)) continue;
      BadVertexSet bad = x_fin_inf(g, x);
      for (const VertexSet& b : {empty_set(g), bad.vertices}) {
        FResult r = f_paths(g, x, b, 4);
        CHECK(r.is_finite == oracle_f_finite(g, x, b));
      }
    }
  }
}

TEST_CASE("build_subgraph frozen examples") {
  Graph o2 = load_fixture("o2");
  ConstructionResult r = build_subgraph(o2, make_set(o2, {"v"}), {"a#0"});
  CHECK(r.graph.vertex_ids() == std::vector<std::string>{"a_0", "v"});
  REQUIRE(r.graph.bundle_count() == 2);
  CHECK(r.graph.bundle(0).id == "a_0__a_0");
  CHECK(r.graph.bundle(1).id == "a_0__v");
  CHECK(r.provenance.at("a_0").label == "a#0");
  CHECK(r.provenance.at("a_0__a_0").label == "(a#0,a#0)");
  CHECK_FALSE(r.truncated);

  Graph ab = load_fixture("ab");
  ConstructionResult r2 = build_subgraph(ab, full_set(ab), {"e#0"});
  CHECK(r2.graph.vertex_ids() == std::vector<std::string>{"e_0", "b"});
  REQUIRE(r2.graph.bundle_count() == 1);
  CHECK(r2.graph.bundle(0).id == "e_0__b");

  Graph loop = load_fixture("loop");
  ConstructionResult r3 = build_subgraph(loop, make_set(loop, {"v"}), {"a#0"});
  CHECK(r3.graph.vertex_ids() == std::vector<std::string>{"a_0"});
  REQUIRE(r3.graph.bundle_count() == 1);
  CHECK(r3.graph.bundle(0).src == 0);
  CHECK(r3.graph.bundle(0).dst == 0);
}

TEST_CASE("build_subgraph selection errors") {
  Graph ex12 = load_fixture("ex12");
  CHECK_THROWS_AS(build_subgraph(ex12, full_set(ex12), {"i"}), InvalidInput);
  CHECK_THROWS_WITH(build_subgraph(ex12, full_set(ex12), {"i"}),
                    Catch::Matchers::ContainsSubstring("wholesale"));
  CHECK_THROWS_AS(build_subgraph(ex12, make_set(ex12, {"u"}), {"t1#0"}),
                  InvalidInput);  // r(t1) = x2 not in G0
  CHECK_THROWS_AS(build_subgraph(ex12, full_set(ex12), {"t1#1"}),
                  InvalidInput);  // copy out of range
  CHECK_THROWS_AS(build_subgraph(ex12, full_set(ex12), {"t1#0", "t1#0"}),
                  InvalidInput);  // duplicate instance
  CHECK_THROWS_AS(build_subgraph(ex12, full_set(ex12), {"zz#0"}), InvalidInput);
  // Omega instances picked individually are fine.
  ConstructionResult ok =
      build_subgraph(ex12, full_set(ex12), {"i#0", "i#5"});
  CHECK(ok.graph.vertex_count() > 0);
}

TEST_CASE("build_subgraph: bare finite bundle expands to all instances") {
  Graph g("m");
  g.add_vertex("u");
  g.add_vertex("w");
  g.add_bundle("a", "u", "w", Count(2));
  ConstructionResult r = build_subgraph(g, make_set(g, {"w"}), {"a"});
  CHECK(r.graph.vertex_ids() == std::vector<std::string>{"a_0", "a_1", "w"});
  // w is a sink in g, hence included; the instances compose with nothing
  // (r(a)=w emits nothing) except the w vertex itself.
  REQUIRE(r.graph.bundle_count() == 2);
  CHECK(r.graph.bundle(0).id == "a_0__w");
  CHECK(r.graph.bundle(1).id == "a_1__w");
}

TEST_CASE("build_ideal_graph frozen EX12 shape") {
  Graph g = load_fixture("ex12");
  VertexSet x = make_set(g, {"x1", "x2", "x3"});
  VertexSet b = make_set(g, {"b"});
  ConstructionResult r = build_ideal_graph(g, x, b, 3);
  CHECK(r.truncated);  // F is infinite
  CHECK(r.graph.vertex_count() == 11);
  CHECK(r.graph.bundle_count() == 11);
  CHECK(r.graph.vertex_ids() ==
        std::vector<std::string>{"x1", "x2", "x3", "b", "p_f_0", "p_g_0",
                                 "p_h_0", "p_e_0_f_0", "p_e_0_g_0",
                                 "p_d_0_h_0", "p_d_0_d_0_h_0"});
  // The restriction part and the omega edge from b into X survive as-is.
  CHECK(r.graph.find_bundle("t1").has_value());
  CHECK(r.graph.find_bundle("t2").has_value());
  CHECK(r.graph.find_bundle("t3").has_value());
  REQUIRE(r.graph.find_bundle("i").has_value());
  CHECK(r.graph.bundle(*r.graph.find_bundle("i")).mult.is_omega());
  // Each F-vertex emits exactly one edge to its range: b,x2,x3,b,x2,x3,x3.
  auto range_of = [&](const std::string& vid) {
    int v = *r.graph.find_vertex(vid);
    REQUIRE(r.graph.out_bundles(v).size() == 1);
    return r.graph.vertex_id(r.graph.bundle(r.graph.out_bundles(v)[0]).dst);
  };
  CHECK(range_of("p_f_0") == "b");
  CHECK(range_of("p_e_0_f_0") == "b");
  CHECK(range_of("p_g_0") == "x2");
  CHECK(range_of("p_e_0_g_0") == "x2");
  CHECK(range_of("p_h_0") == "x3");
  CHECK(range_of("p_d_0_h_0") == "x3");
  CHECK(range_of("p_d_0_d_0_h_0") == "x3");
  CHECK(r.provenance.at("p_d_0_d_0_h_0").label == "(d,d,h)");
  CHECK(r.provenance.at("p_e_0_f_0").kind == "path");
}

TEST_CASE("build_ideal_graph frozen EX33 shape with omega cap") {
  Graph g = load_fixture("ex33");
  VertexSet x = make_set(g, {"x1", "x2", "x3"});
  ConstructionResult r = build_ideal_graph(g, x, empty_set(g), 2);
  CHECK(r.truncated);
  // 3 X-vertices + families (v1),(v2),(v3)x3,(c1,v2),(c2,v3)x3,(c3,v2).
  CHECK(r.graph.vertex_count() == 13);
  CHECK(r.graph.bundle_count() == 15);  // 5 restriction edges + 10 F-edges
  REQUIRE(r.graph.find_vertex("p_v1_0").has_value());
  auto v = *r.graph.find_vertex("p_v1_0");
  REQUIRE(r.graph.out_bundles(v).size() == 1);
  CHECK(r.graph.vertex_id(r.graph.bundle(r.graph.out_bundles(v)[0]).dst) ==
        "x1");
  // Omega family (v3) materializes instances #0..#2.
  CHECK(r.graph.find_vertex("p_v3_0").has_value());
  CHECK(r.graph.find_vertex("p_v3_1").has_value());
  CHECK(r.graph.find_vertex("p_v3_2").has_value());
  CHECK_FALSE(r.graph.find_vertex("p_v3_3").has_value());
  CHECK(r.provenance.at("p_v3_1").label == "(v3#1)");

  ConstructionResult wide = build_ideal_graph(g, x, empty_set(g), 2, 5);
  CHECK(wide.graph.find_vertex("p_v3_4").has_value());
  CHECK(wide.graph.vertex_count() == 17);
}

TEST_CASE("build_ideal_graph with X = whole vertex set is the identity") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    ConstructionResult r = build_ideal_graph(g, full_set(g), empty_set(g), 3);
    CHECK(structural_equal(r.graph, g));
    CHECK_FALSE(r.truncated);
  }
}

TEST_CASE("build_ideal_graph raises the depth internally when F is finite") {
  // Chain u -> w -> x plus an escape w -> s (so {x} stays unsaturated-free):
  // the only families are (k2) and (k1,k2), and they must appear even at
  // depth 1 because F is finite.
  Graph g("chain");
  g.add_vertex("u");
  g.add_vertex("w");
  g.add_vertex("x");
  g.add_vertex("s");
  g.add_bundle("k1", "u", "w", Count(1));
  g.add_bundle("k2", "w", "x", Count(1));
  g.add_bundle("k3", "w", "s", Count(1));
  ConstructionResult r = build_ideal_graph(g, make_set(g, {"x"}),
                                           empty_set(g), 1);
  CHECK_FALSE(r.truncated);
  CHECK(r.graph.find_vertex("p_k2_0").has_value());
  CHECK(r.graph.find_vertex("p_k1_0_k2_0").has_value());
  CHECK(r.graph.vertex_count() == 3);
}

TEST_CASE("build_quotient_graph frozen examples") {
  Graph ex33 = load_fixture("ex33");
  VertexSet x = make_set(ex33, {"x1", "x2", "x3"});
  ConstructionResult r =
      build_quotient_graph(ex33, IdealSpec{x, empty_set(ex33)});
  CHECK(r.graph.vertex_ids() ==
        std::vector<std::string>{"b1", "b2", "b3", "beta_b3"});
  REQUIRE(r.graph.bundle_count() == 4);
  CHECK(r.graph.bundle(0).id == "c1");
  CHECK(r.graph.bundle(1).id == "c2");
  CHECK(r.graph.bundle(2).id == "c3");
  CHECK(r.graph.bundle(3).id == "c2_beta");
  CHECK(r.graph.vertex_id(r.graph.bundle(3).src) == "b2");
  CHECK(r.graph.vertex_id(r.graph.bundle(3).dst) == "beta_b3");
  CHECK(r.provenance.at("beta_b3").label == "β(b3)");
  CHECK(r.provenance.at("beta_b3").kind == "beta");

  // With b3 in B no sink is added.
  ConstructionResult rb =
      build_quotient_graph(ex33, IdealSpec{x, make_set(ex33, {"b3"})});
  CHECK(rb.graph.vertex_ids() == std::vector<std::string>{"b1", "b2", "b3"});
  CHECK(rb.graph.bundle_count() == 3);

  Graph ex12 = load_fixture("ex12");
  ConstructionResult r12 = build_quotient_graph(
      ex12, IdealSpec{make_set(ex12, {"x1", "x2", "x3"}),
                      make_set(ex12, {"b"})});
  CHECK(r12.graph.vertex_ids() == std::vector<std::string>{"b", "u", "w"});
  REQUIRE(r12.graph.bundle_count() == 3);
  CHECK(r12.graph.bundle(0).id == "e");
  CHECK(r12.graph.bundle(1).id == "f");
  CHECK(r12.graph.bundle(2).id == "d");
}

TEST_CASE("build_quotient_graph with empty X is the identity") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    ConstructionResult r =
        build_quotient_graph(g, IdealSpec{empty_set(g), empty_set(g)});
    CHECK(structural_equal(r.graph, g));
  }
}

TEST_CASE("stable_ideal_decomposition frozen examples") {
  Graph ex33 = load_fixture("ex33");
  Decomposition d = stable_ideal_decomposition(ex33);
  CHECK(set_ids(ex33, d.x0) == std::vector<std::string>{"x1"});
  CHECK(set_ids(ex33, d.x) == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(d.hypothesis_ok);
  REQUIRE(d.ideal.has_value());
  CHECK(d.ideal->truncated);
  CHECK(d.quotient.graph.vertex_count() == 4);
  CHECK(d.quotient.graph.bundle_count() == 4);
  CHECK(has_isolated_loops(d.quotient.graph).verdict);

  Graph o2 = load_fixture("o2");
  Decomposition d2 = stable_ideal_decomposition(o2);
  CHECK(set_ids(o2, d2.x0) == std::vector<std::string>{"v"});
  CHECK(set_ids(o2, d2.x) == std::vector<std::string>{"v"});
  CHECK_FALSE(d2.hypothesis_ok);  // O2 itself is a pi simple unital quotient
  REQUIRE(d2.pi_tail.has_value());
  REQUIRE(d2.ideal.has_value());
  CHECK(structural_equal(d2.ideal->graph, o2));
  CHECK(d2.quotient.graph.vertex_count() == 0);

  Graph loop = load_fixture("loop");
  Decomposition d3 = stable_ideal_decomposition(loop);
  CHECK(set_empty(d3.x0));
  CHECK(set_empty(d3.x));
  CHECK_FALSE(d3.ideal.has_value());
  CHECK(structural_equal(d3.quotient.graph, loop));

  Graph ex12 = load_fixture("ex12");
  Decomposition d4 = stable_ideal_decomposition(ex12);
  CHECK(set_empty(d4.x0));  // no vertex has two returning edge instances
  CHECK(d4.hypothesis_ok);
  CHECK(structural_equal(d4.quotient.graph, ex12));
}

TEST_CASE("X0 counts parallel and omega instances as distinct edges") {
  Graph g("par");
  g.add_vertex("v");
  g.add_bundle("a", "v", "v", Count(2));
  Decomposition d = stable_ideal_decomposition(g);
  CHECK(set_ids(g, d.x0) == std::vector<std::string>{"v"});

  Graph w("wo");
  w.add_vertex("v");
  w.add_bundle("a", "v", "v", Count::omega());
  CHECK(set_ids(w, stable_ideal_decomposition(w).x0) ==
        std::vector<std::string>{"v"});
}

TEST_CASE("enumerate_gauge_ideals frozen counts") {
  Graph o2 = load_fixture("o2");
  auto specs = enumerate_gauge_ideals(o2);
  REQUIRE(specs.size() == 2);
  CHECK(set_empty(specs[0].x));
  CHECK(set_ids(o2, specs[1].x) == std::vector<std::string>{"v"});

  Graph ex12 = load_fixture("ex12");
  auto s12 = enumerate_gauge_ideals(ex12);
  CHECK(s12.size() == 9);
  int with_b = 0;
  for (const IdealSpec& s : s12)
    if (!set_empty(s.b)) {
      ++with_b;
      CHECK(set_ids(ex12, s.b) == std::vector<std::string>{"b"});
      CHECK(set_size(s.x) >= 3);
    }
  CHECK(with_b == 2);  // X = {x1,x2,x3} and {x1,x2,x3,w}
  for (const IdealSpec& s : s12) validate_ideal_spec(ex12, s);
}

TEST_CASE("gauge_primitive_ideals frozen records") {
  Graph loop = load_fixture("loop");
  CHECK(gauge_primitive_ideals(loop).empty());  // only tail is tau

  Graph o2 = load_fixture("o2");
  auto recs = gauge_primitive_ideals(o2);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].from_tail);
  CHECK(set_empty(recs[0].spec.x));

  Graph ex12 = load_fixture("ex12");
  auto r12 = gauge_primitive_ideals(ex12);
  REQUIRE(r12.size() == 2);
  CHECK(r12[0].from_tail);
  CHECK(set_empty(r12[0].spec.x));  // Omega(whole-graph tail) is empty
  CHECK_FALSE(r12[1].from_tail);
  CHECK(ex12.vertex_id(r12[1].vertex) == "b");
  CHECK(set_ids(ex12, r12[1].spec.x) ==
        std::vector<std::string>{"x1", "x2", "x3", "w"});
  CHECK(set_empty(r12[1].spec.b));

  Graph ex33 = load_fixture("ex33");
  auto r33 = gauge_primitive_ideals(ex33);
  REQUIRE(r33.size() == 2);
  CHECK(r33[0].from_tail);
  CHECK(set_ids(ex33, r33[0].tail) ==
        std::vector<std::string>{"x1", "x2", "b1", "b2", "b3"});
  CHECK(set_ids(ex33, r33[0].spec.x) == std::vector<std::string>{"x3"});
  CHECK(set_ids(ex33, r33[0].spec.b) == std::vector<std::string>{"b3"});
  CHECK_FALSE(r33[1].from_tail);
  CHECK(ex33.vertex_id(r33[1].vertex) == "b3");
  CHECK(set_ids(ex33, r33[1].spec.x) ==
        std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(set_empty(r33[1].spec.b));
  for (const auto& rec : r33) validate_ideal_spec(ex33, rec.spec);
}

TEST_CASE("every ideal-graph cycle lies inside X") {
  for (const char* stem : {"loop", "o2", "ab", "ex12", "ex33"}) {
    Graph g = load_fixture(stem);
    for (const IdealSpec& spec : enumerate_gauge_ideals(g)) {
      if (set_empty(spec.x)) continue;
      // The builder asserts the structure law internally; verify explicitly.
      ConstructionResult r = build_ideal_graph(g, spec.x, spec.b, 3);
      for (const Cycle& c : vertex_simple_cycles(r.graph))
        for (int v : cycle_vertices(r.graph, c)) {
          auto orig = g.find_vertex(r.graph.vertex_id(v));
          REQUIRE(orig.has_value());
          CHECK(spec.x[*orig]);
        }
    }
  }
}

TEST_CASE("construction provenance is total") {
  Graph g = load_fixture("ex33");
  VertexSet x = make_set(g, {"x1", "x2", "x3"});
  for (const ConstructionResult& r :
       {build_ideal_graph(g, x, empty_set(g), 2),
        build_quotient_graph(g, IdealSpec{x, empty_set(g)}),
        build_subgraph(g, make_set(g, {"x1", "x2"}), {"p#0", "q#0"})}) {
    for (int v = 0; v < r.graph.vertex_count(); ++v)
      CHECK(r.provenance.count(r.graph.vertex_id(v)) == 1);
    for (int bi = 0; bi < r.graph.bundle_count(); ++bi)
      CHECK(r.provenance.count(r.graph.bundle(bi).id) == 1);
  }
}
