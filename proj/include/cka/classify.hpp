#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cka/tails.hpp"

namespace cka {

namespace detail {

/// Rotate a closed edge walk so the lexicographically least source vertex
/// comes first (the Cycle canonical form).
inline Cycle canonical_cycle(const Graph& g, std::vector<EdgeInstance> edges) {
  internal_check(!edges.empty(), "canonical_cycle: empty walk");
  std::size_t best = 0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (g.vertex_id(g.bundle(edges[i].bundle).src) <
        g.vertex_id(g.bundle(edges[best].bundle).src))
      best = i;
  }
  std::rotate(edges.begin(), edges.begin() + best, edges.end());
  Cycle c;
  c.edges = std::move(edges);
  for (const EdgeInstance& e : c.edges)
    if (g.bundle(e.bundle).mult.is_omega()) c.omega_parallel = true;
  check_cycle(g, c);
  return c;
}

/// A vertex-simple cycle through v that starts with the given edge instance
/// (whose source must be v and whose target must lie in v's strongly
/// connected component), closed up by a shortest path back to v inside the
/// component.  Returned in canonical form.
inline Cycle cycle_through(const Graph& g, const SccPartition& scc, int v,
                           const EdgeInstance& first) {
  const Bundle& fb = g.bundle(first.bundle);
  internal_check(fb.src == v, "cycle_through: edge does not start at v");
  const int comp = scc.component_of[v];
  internal_check(scc.component_of[fb.dst] == comp,
                 "cycle_through: edge leaves the component");
  std::vector<EdgeInstance> walk{first};
  if (fb.dst != v) {
    // BFS from the edge's target back to v inside the component.
    std::vector<int> parent_vertex(g.vertex_count(), -1);
    std::vector<int> parent_bundle(g.vertex_count(), -1);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> queue{fb.dst};
    seen[fb.dst] = 1;
    for (std::size_t qi = 0; qi < queue.size() && !seen[v]; ++qi) {
      int u = queue[qi];
      for (int bi : g.out_bundles(u)) {
        int w = g.bundle(bi).dst;
        if (seen[w] || scc.component_of[w] != comp) continue;
        seen[w] = 1;
        parent_vertex[w] = u;
        parent_bundle[w] = bi;
        queue.push_back(w);
      }
    }
    internal_check(seen[v] != 0, "cycle_through: no return path in component");
    std::vector<EdgeInstance> back;
    for (int u = v; u != fb.dst; u = parent_vertex[u])
      back.push_back(EdgeInstance{parent_bundle[u], 0});
    walk.insert(walk.end(), back.rbegin(), back.rend());
  }
  return canonical_cycle(g, std::move(walk));
}

/// Edge instances from v staying inside v's component (the candidates for
/// loops based at v), in declaration order; omega bundles contribute copies
/// #0 and #1.  At most `max_needed` are collected.
inline std::vector<EdgeInstance> internal_instances_at(const Graph& g,
                                                       const SccPartition& scc,
                                                       int v,
                                                       std::size_t max_needed) {
  std::vector<EdgeInstance> out;
  const int comp = scc.component_of[v];
  for (int bi : g.out_bundles(v)) {
    const Bundle& b = g.bundle(bi);
    if (scc.component_of[b.dst] != comp) continue;
    std::uint64_t copies = b.mult.is_omega() ? 2 : b.mult.finite();
    for (std::uint64_t k = 0; k < copies && out.size() < max_needed; ++k)
      out.push_back(EdgeInstance{bi, k});
    if (out.size() >= max_needed) break;
  }
  return out;
}

/// Instance-counted internal out-degree of v within its component.
inline Count internal_out_degree(const Graph& g, const SccPartition& scc, int v) {
  Count d{0};
  for (int bi : g.out_bundles(v))
    if (scc.component_of[g.bundle(bi).dst] == scc.component_of[v])
      d += g.bundle(bi).mult;
  return d;
}

}  // namespace detail

/// The edge a cycle uses at vertex v, if v lies on the cycle.
inline std::optional<EdgeInstance> cycle_edge_at(const Graph& g, const Cycle& c,
                                                 int v) {
  for (const EdgeInstance& e : c.edges)
    if (g.bundle(e.bundle).src == v) return e;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// No loop has an exit
// ---------------------------------------------------------------------------

/// no_loop_has_exit: true iff every vertex lying on some cycle has
/// out-degree exactly 1 (any second edge at a cycle vertex is an exit).
/// On false, the witness is such a vertex together with a cycle through it.
struct NoExitReport {
  bool verdict = true;
  std::optional<int> witness_vertex;
  std::optional<Cycle> witness_cycle;
};

inline NoExitReport no_loop_has_exit(const Graph& g) {
  SccPartition scc = strongly_connected_components(g);
  NoExitReport r;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!scc.components[scc.component_of[v]].has_internal_edge) continue;
    // Singleton components with an internal edge have a self-loop; larger
    // ones put every vertex on a cycle.
    if (out_degree(g, v) == Count(1)) continue;
    auto starts = detail::internal_instances_at(g, scc, v, 1);
    internal_check(!starts.empty(), "cycle vertex with no internal edge");
    r.verdict = false;
    r.witness_vertex = v;
    r.witness_cycle = detail::cycle_through(g, scc, v, starts[0]);
    return r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Isolated loops
// ---------------------------------------------------------------------------

/// has_isolated_loops: any two loops through a common vertex use the same
/// edge there.  Equivalent (and implemented as): every strongly connected
/// component with an internal edge is a single vertex-simple cycle of
/// multiplicity-1 bundles, i.e. every vertex of such a component has exactly
/// one internal edge instance.  On false, the witness is a shared vertex with
/// two distinct loops through it using different edges at that vertex.
struct IsolatedLoopsReport {
  bool verdict = true;
  std::optional<int> witness_vertex;
  std::optional<std::pair<Cycle, Cycle>> witness_loops;
};

inline IsolatedLoopsReport has_isolated_loops(const Graph& g) {
  SccPartition scc = strongly_connected_components(g);
  IsolatedLoopsReport r;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!scc.components[scc.component_of[v]].has_internal_edge) continue;
    if (detail::internal_out_degree(g, scc, v) == Count(1)) continue;
    auto starts = detail::internal_instances_at(g, scc, v, 2);
    internal_check(starts.size() == 2, "expected two internal instances");
    r.verdict = false;
    r.witness_vertex = v;
    r.witness_loops = {detail::cycle_through(g, scc, v, starts[0]),
                       detail::cycle_through(g, scc, v, starts[1])};
    return r;
  }
  return r;
}

/// All vertices carrying two loops with distinct first edges (the
/// properly-infinite witnesses).  Empty iff has_isolated_loops.
struct ProperlyInfiniteWitness {
  int vertex;
  Cycle loop1;
  Cycle loop2;
};

inline std::vector<ProperlyInfiniteWitness> properly_infinite_witnesses(
    const Graph& g) {
  SccPartition scc = strongly_connected_components(g);
  std::vector<ProperlyInfiniteWitness> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!scc.components[scc.component_of[v]].has_internal_edge) continue;
    if (detail::internal_out_degree(g, scc, v) == Count(1)) continue;
    auto starts = detail::internal_instances_at(g, scc, v, 2);
    internal_check(starts.size() == 2, "expected two internal instances");
    out.push_back(ProperlyInfiniteWitness{
        v, detail::cycle_through(g, scc, v, starts[0]),
        detail::cycle_through(g, scc, v, starts[1])});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Type I
// ---------------------------------------------------------------------------

/// Per-gamma-tail record: which clause held.  Clause (ii) would need an
/// infinite path through infinitely many distinct vertices, which cannot
/// happen over a finite vertex set; it is reported as structurally false.
struct TailRecord {
  VertexSet tail;
  bool clause_i = false;
  std::optional<int> clause_i_vertex;  // member emitting no edge into the tail
};

struct TypeIReport {
  bool verdict = true;
  std::vector<TailRecord> gamma_tails;
  std::string note =
      "clause (ii) requires infinitely many distinct vertices along an "
      "infinite path and is identically false on finite vertex sets";
};

inline TypeIReport is_type_I(const Graph& g) {
  TypeIReport r;
  for (const MaximalTail& t : maximal_tails(g)) {
    if (t.cls != TailClass::gamma) continue;
    TailRecord rec;
    rec.tail = t.vertices;
    for (int v = 0; v < g.vertex_count() && !rec.clause_i; ++v) {
      if (!t.vertices[v]) continue;
      bool emits_inside = false;
      for (int bi : g.out_bundles(v))
        emits_inside = emits_inside || t.vertices[g.bundle(bi).dst];
      if (!emits_inside) {
        rec.clause_i = true;
        rec.clause_i_vertex = v;
      }
    }
    if (!rec.clause_i) r.verdict = false;
    r.gamma_tails.push_back(std::move(rec));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Purely infinite simple unital quotient
// ---------------------------------------------------------------------------

/// A gamma tail whose restriction contains a cycle and admits no nontrivial
/// hereditary & saturated subsets, if one exists.  (Tails of a finite graph
/// are finite, so the unitality condition is automatic.)
inline std::optional<MaximalTail> pi_simple_unital_quotient(const Graph& g) {
  for (const MaximalTail& t : maximal_tails(g)) {
    if (t.cls != TailClass::gamma) continue;
    Graph sub = restriction(g, t.vertices, "m_restr");
    if (vertex_simple_cycles(sub).empty()) continue;
    if (enumerate_hersat(sub).size() == 2) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stable rank
// ---------------------------------------------------------------------------

enum class StableRank { one, two, infinity };

inline std::string stable_rank_str(StableRank v) {
  switch (v) {
    case StableRank::one: return "1";
    case StableRank::two: return "2";
    default: return "infinity";
  }
}

/// Trichotomy verdict with re-checkable evidence:
///   1         no loop has an exit (no_exit.verdict true);
///   infinity  a witness tail giving a unital purely infinite simple quotient;
///   2         otherwise — a cycle with an exit plus the failed-infinity
///             report (pi_tail absent).
struct StableRankVerdict {
  StableRank value = StableRank::one;
  NoExitReport no_exit;
  std::optional<MaximalTail> pi_tail;
  std::optional<Cycle> exit_cycle;        // rank 2: cycle with an exit
  std::optional<EdgeInstance> exit_edge;  // rank 2: one of its exits
};

inline StableRankVerdict stable_rank(const Graph& g) {
  StableRankVerdict v;
  v.no_exit = no_loop_has_exit(g);
  v.pi_tail = pi_simple_unital_quotient(g);
  internal_check(!(v.no_exit.verdict && v.pi_tail.has_value()),
                 "stable rank 1 and infinity tests both fired");
  if (v.no_exit.verdict) {
    v.value = StableRank::one;
  } else if (v.pi_tail.has_value()) {
    v.value = StableRank::infinity;
  } else {
    v.value = StableRank::two;
    v.exit_cycle = v.no_exit.witness_cycle;
    auto exits = loop_exits(g, *v.exit_cycle, full_set(g));
    internal_check(!exits.empty(), "rank-2 witness cycle has no exit");
    v.exit_edge = exits.front();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Loop partial order
// ---------------------------------------------------------------------------

/// The reachability order on the (isolated) loops: alpha >= beta iff some
/// vertex of alpha reaches some vertex of beta.  Verified to be a partial
/// order; maximal elements (no distinct loop above) are flagged.
/// Requires has_isolated_loops.
struct LoopPoset {
  std::vector<Cycle> cycles;
  std::vector<std::vector<char>> geq;
  std::vector<char> maximal;
};

inline LoopPoset loop_poset(const Graph& g,
                            std::uint64_t cycle_limit = kDefaultCycleLimit) {
  if (!has_isolated_loops(g).verdict)
    throw InvalidInput("loop_poset: graph does not have isolated loops");
  LoopPoset p;
  p.cycles = vertex_simple_cycles(g, cycle_limit);
  const std::size_t k = p.cycles.size();
  Reachability reach(g);
  p.geq.assign(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    auto vi = cycle_vertices(g, p.cycles[i]);
    for (std::size_t j = 0; j < k; ++j) {
      auto vj = cycle_vertices(g, p.cycles[j]);
      bool geq = false;
      for (int a : vi)
        for (int b : vj) geq = geq || reach.reaches(a, b);
      p.geq[i][j] = geq ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    internal_check(p.geq[i][i] != 0, "loop order not reflexive");
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j)
        internal_check(!(p.geq[i][j] && p.geq[j][i]), "loop order not antisymmetric");
      for (std::size_t l = 0; l < k; ++l)
        internal_check(!(p.geq[i][j] && p.geq[j][l]) || p.geq[i][l],
                       "loop order not transitive");
    }
  }
  p.maximal.assign(k, 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && p.geq[j][i]) p.maximal[i] = 0;
  return p;
}

// ---------------------------------------------------------------------------
// Tail algebra flags
// ---------------------------------------------------------------------------

/// Structure flags of the algebra attached to a gamma tail: unital (always,
/// on finite vertex sets), has_loop (the restriction contains a cycle),
/// simple (the restriction has only trivial hereditary & saturated subsets).
/// Tau tails are rejected: the simplicity criterion needs every internal
/// loop to have an exit.
struct TailAlgebraFlags {
  bool unital = true;
  bool has_loop = false;
  bool simple = false;
};

inline TailAlgebraFlags tail_algebra_flags(const Graph& g, const VertexSet& m) {
  TailClassification cls = classify_tail(g, m);
  if (cls.cls == TailClass::tau)
    throw InvalidInput(
        "tail_algebra_flags: tau tail (criterion needs every internal loop "
        "to have an exit)");
  Graph sub = restriction(g, m, "m_restr");
  TailAlgebraFlags f;
  f.unital = true;
  f.has_loop = !vertex_simple_cycles(sub).empty();
  f.simple = enumerate_hersat(sub).size() == 2;
  return f;
}

}  // namespace cka
