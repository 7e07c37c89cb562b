#pragma once

#include <random>
#include <string>
#include <vector>

#include "cka/traces.hpp"

namespace cka {

// ---------------------------------------------------------------------------
// Built-in fixtures
// ---------------------------------------------------------------------------

inline Graph fixture_loop() {
  Graph g("loop");
  g.add_vertex("v");
  g.add_bundle("a", "v", "v", Count(1));
  return g;
}

inline Graph fixture_o2() {
  Graph g("o2");
  g.add_vertex("v");
  g.add_bundle("a", "v", "v", Count(1));
  g.add_bundle("b", "v", "v", Count(1));
  return g;
}

inline Graph fixture_ab() {
  Graph g("ab");
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_bundle("e", "a", "b", Count(1));
  return g;
}

inline Graph fixture_ex12() {
  Graph g("ex12");
  for (const char* v : {"x1", "x2", "x3", "b", "u", "w"}) g.add_vertex(v);
  g.add_bundle("t1", "x1", "x2", Count(1));
  g.add_bundle("t2", "x2", "x1", Count(1));
  g.add_bundle("t3", "x2", "x3", Count(1));
  g.add_bundle("i", "b", "x1", Count::omega());
  g.add_bundle("e", "b", "u", Count(1));
  g.add_bundle("f", "u", "b", Count(1));
  g.add_bundle("g", "u", "x2", Count(1));
  g.add_bundle("h", "w", "x3", Count(1));
  g.add_bundle("d", "w", "w", Count(1));
  return g;
}

inline Graph fixture_ex33() {
  Graph g("ex33");
  for (const char* v : {"x1", "x2", "x3", "b1", "b2", "b3"}) g.add_vertex(v);
  g.add_bundle("l1", "x1", "x1", Count(1));
  g.add_bundle("p", "x1", "x2", Count(1));
  g.add_bundle("q", "x2", "x1", Count(1));
  g.add_bundle("r", "x2", "x3", Count(1));
  g.add_bundle("l3", "x3", "x3", Count(1));
  g.add_bundle("v1", "b1", "x1", Count(1));
  g.add_bundle("v2", "b2", "x2", Count(1));
  g.add_bundle("v3", "b3", "x3", Count::omega());
  g.add_bundle("c1", "b1", "b2", Count(1));
  g.add_bundle("c2", "b2", "b3", Count(1));
  g.add_bundle("c3", "b3", "b2", Count(1));
  return g;
}

inline std::vector<std::string> fixture_names() {
  return {"loop", "o2", "ab", "ex12", "ex33"};
}

inline Graph fixture(const std::string& name) {
  if (name == "loop") return fixture_loop();
  if (name == "o2") return fixture_o2();
  if (name == "ab") return fixture_ab();
  if (name == "ex12") return fixture_ex12();
  if (name == "ex33") return fixture_ex33();
  throw InvalidInput("unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------
// Seeded random graphs
// ---------------------------------------------------------------------------

/// Deterministic generator parameters.  Probabilities are exact rationals;
/// the generator uses integer arithmetic on a standardized engine only, so
/// identical parameters give identical graphs on every platform.
struct GeneratorParams {
  std::uint64_t seed = 0;
  int vertices = 1;
  std::uint64_t density_num = 1;
  std::uint64_t density_den = 2;
  std::uint64_t inf_num = 1;
  std::uint64_t inf_den = 10;
  std::uint64_t max_mult = 2;
  bool acyclic = false;  // forward edges only (i -> j with i < j)
};

inline Graph random_graph(const GeneratorParams& p) {
  if (p.vertices < 1)
    throw InvalidInput("random_graph: need at least one vertex");
  if (p.density_den == 0 || p.inf_den == 0 ||
      p.density_num > p.density_den || p.inf_num > p.inf_den ||
      p.max_mult < 1)
    throw InvalidInput("random_graph: invalid parameters");
  std::mt19937_64 rng(p.seed);
  auto hit = [&rng](std::uint64_t num, std::uint64_t den) {
    return rng() % den < num;
  };
  Graph g("rnd" + std::to_string(p.seed));
  for (int i = 0; i < p.vertices; ++i) g.add_vertex("v" + std::to_string(i));
  int edges = 0;
  for (int i = 0; i < p.vertices; ++i) {
    for (int j = p.acyclic ? i + 1 : 0; j < p.vertices; ++j) {
      if (!hit(p.density_num, p.density_den)) continue;
      std::uint64_t mult = 1 + rng() % p.max_mult;
      Count m = hit(p.inf_num, p.inf_den) ? Count::omega() : Count(mult);
      g.add_bundle("e" + std::to_string(edges++), "v" + std::to_string(i),
                   "v" + std::to_string(j), m);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// All subsets passing check_subset, by exhaustive mask scan; returned in
/// the (size, lexicographic ids) order the fast enumeration promises.
inline std::vector<VertexSet> oracle_hersat(const Graph& g) {
  const int n = g.vertex_count();
  require_vertex_cap(g, 16, "oracle_hersat");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet s = empty_set(g);
    for (int v = 0; v < n; ++v)
      if (mask & (std::uint64_t{1} << v)) s[v] = 1;
    SubsetCheck chk = check_subset(g, s);
    if (chk.hereditary && chk.saturated) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [&](const VertexSet& a, const VertexSet& b) {
    if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
    return set_ids(g, a) < set_ids(g, b);
  });
  return out;
}

/// All nonempty subsets passing the three tail axioms directly.
inline std::vector<VertexSet> oracle_maximal_tails(const Graph& g) {
  const int n = g.vertex_count();
  require_vertex_cap(g, 16, "oracle_maximal_tails");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet m = empty_set(g);
    for (int v = 0; v < n; ++v)
      if (mask & (std::uint64_t{1} << v)) m[v] = 1;
    if (check_maximal_tail(g, m).ok()) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [&](const VertexSet& a, const VertexSet& b) {
    if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
    return set_ids(g, a) < set_ids(g, b);
  });
  return out;
}

/// Exhaustive vertex-simple cycle enumeration by naive walk: start anywhere,
/// never revisit a vertex, close only at the start, and keep the cycle iff
/// the start carries the minimal vertex index (one representative per
/// rotation).  Canonicalized for comparison.
inline std::vector<Cycle> oracle_cycles(const Graph& g) {
  require_vertex_cap(g, 8, "oracle_cycles");
  std::vector<Cycle> out;
  std::vector<EdgeInstance> walk;
  std::vector<char> on_path(g.vertex_count(), 0);
  auto dfs = [&](auto&& self, int start, int u) -> void {
    for (int bi : g.out_bundles(u)) {
      const Bundle& bun = g.bundle(bi);
      std::uint64_t copies = bun.mult.is_omega() ? 2 : bun.mult.finite();
      for (std::uint64_t k = 0; k < copies; ++k) {
        if (bun.dst == start) {
          walk.push_back(EdgeInstance{bi, k});
          out.push_back(detail::canonical_cycle(g, walk));
          walk.pop_back();
        } else if (!on_path[bun.dst] && bun.dst > start) {
          walk.push_back(EdgeInstance{bi, k});
          on_path[bun.dst] = 1;
          self(self, start, bun.dst);
          on_path[bun.dst] = 0;
          walk.pop_back();
        }
      }
    }
  };
  for (int s = 0; s < g.vertex_count(); ++s) {
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return out;
}

/// Pairwise isolated-loops test straight from the definition: no two
/// enumerated loops may pass through a common vertex with different edge
/// instances there.
inline bool oracle_isolated(const Graph& g) {
  std::vector<Cycle> cycles = oracle_cycles(g);
  for (const Cycle& c : cycles)
    if (c.omega_parallel) return false;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j)
      for (int v : cycle_vertices(g, cycles[i])) {
        auto e1 = cycle_edge_at(g, cycles[i], v);
        auto e2 = cycle_edge_at(g, cycles[j], v);
        if (e1 && e2 && !(*e1 == *e2)) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Oracle and consistency suites
// ---------------------------------------------------------------------------

struct SuiteReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
};

namespace detail {

inline std::vector<std::string> sorted_cycle_labels(const Graph& g,
                                                    std::vector<Cycle> cs) {
  std::vector<std::string> out;
  for (const Cycle& c : cs) out.push_back(cycle_label(g, c));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::string>> sorted_id_sets(
    const Graph& g, const std::vector<VertexSet>& sets) {
  std::vector<std::vector<std::string>> out;
  for (const VertexSet& s : sets) out.push_back(set_ids(g, s));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

}  // namespace detail

/// Diff the fast implementations against the brute-force oracles.
inline SuiteReport oracle_suite(const Graph& g) {
  require_vertex_cap(g, 8, "oracle_suite");
  SuiteReport rep;
  {
    auto fast = detail::sorted_id_sets(g, enumerate_hersat(g));
    auto brute = detail::sorted_id_sets(g, oracle_hersat(g));
    if (fast != brute) rep.fail("hersat sets differ from oracle");
  }
  {
    std::vector<VertexSet> fast_sets;
    for (const MaximalTail& t : maximal_tails(g)) fast_sets.push_back(t.vertices);
    auto fast = detail::sorted_id_sets(g, fast_sets);
    auto brute = detail::sorted_id_sets(g, oracle_maximal_tails(g));
    if (fast != brute) rep.fail("maximal tails differ from oracle");
  }
  {
    auto fast = detail::sorted_cycle_labels(g, vertex_simple_cycles(g));
    auto brute = detail::sorted_cycle_labels(g, oracle_cycles(g));
    if (fast != brute) rep.fail("cycle enumeration differs from oracle");
  }
  if (has_isolated_loops(g).verdict != oracle_isolated(g))
    rep.fail("isolated-loops verdict differs from oracle");
  return rep;
}

/// Cross-theorem checks: trichotomy exclusivity, the implication chain,
/// quotient isolation, E_G preservation on random selections, and trace
/// evidence re-validation.
inline SuiteReport consistency_suite(const Graph& g, std::uint64_t seed = 0) {
  require_vertex_cap(g, max_vertices_cap(), "consistency_suite");
  SuiteReport rep;
  bool one_test = no_loop_has_exit(g).verdict;
  bool inf_test = pi_simple_unital_quotient(g).has_value();
  bool isolated = has_isolated_loops(g).verdict;
  if (one_test && inf_test)
    rep.fail("(a) stable-rank 1 and infinity tests both fired");
  if (one_test && !isolated) rep.fail("(b) no-exit graph without isolated loops");
  if (isolated && !is_type_I(g).verdict)
    rep.fail("(c) isolated loops but not type I");
  if (isolated && inf_test)
    rep.fail("(c) isolated loops with a purely infinite simple quotient");
  {
    Decomposition d = stable_ideal_decomposition(g, 4);
    if (!has_isolated_loops(d.quotient.graph).verdict)
      rep.fail("(d) decomposition quotient without isolated loops");
  }
  if (isolated) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int round = 0; round < 3; ++round) {
      VertexSet g0 = empty_set(g);
      for (int v = 0; v < g.vertex_count(); ++v) g0[v] = rng() % 2;
      std::vector<std::string> g1;
      for (int bi = 0; bi < g.bundle_count(); ++bi) {
        const Bundle& bun = g.bundle(bi);
        if (!g0[bun.dst]) continue;
        std::uint64_t copies =
            bun.mult.is_omega() ? 2 : bun.mult.finite();
        for (std::uint64_t k = 0; k < copies; ++k)
          if (rng() % 2)
            g1.push_back(bun.id + "#" + std::to_string(k));
      }
      ConstructionResult eg = build_subgraph(g, g0, g1);
      if (!eg.graph.vertex_count()) continue;
      if (!has_isolated_loops(eg.graph).verdict)
        rep.fail("(e) subgraph construction broke isolated loops");
    }
  }
  {
    TraceOutcome t = bounded_graph_trace(g);
    if (t.feasible) {
      if (!validate_trace_witness(g, t.witness))
        rep.fail("(f) trace witness failed re-validation");
    } else if (!validate_trace_certificate(g, t.certificate)) {
      rep.fail("(f) trace certificate failed re-validation");
    }
  }
  return rep;
}

}  // namespace cka
