#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cka/subsets.hpp"

namespace cka {

/// Maximal-tail axiom check with per-axiom diagnostics:
///   MT1  ancestors of members are members,
///   MT2  finite non-sink emitters in M keep an edge inside M,
///   MT3  any two members reach a common member.
struct TailCheck {
  bool mt1 = true;
  bool mt2 = true;
  bool mt3 = true;
  std::optional<int> mt1_violation_bundle;        // edge entering M from outside
  std::optional<int> mt2_violation_vertex;        // member with no edge into M
  std::optional<std::pair<int, int>> mt3_violation_pair;  // members, no common member descendant
  bool ok() const { return mt1 && mt2 && mt3; }
};

inline TailCheck check_maximal_tail(const Graph& g, const VertexSet& m) {
  if (set_empty(m)) throw InvalidInput("maximal tail: empty vertex set");
  TailCheck r;
  // MT1 via edges: any edge into M must come from M (equivalent to
  // ancestor-closure by path induction).
  for (int bi = 0; bi < g.bundle_count() && r.mt1; ++bi) {
    const Bundle& b = g.bundle(bi);
    if (m[b.dst] && !m[b.src]) {
      r.mt1 = false;
      r.mt1_violation_bundle = bi;
    }
  }
  for (int v = 0; v < g.vertex_count() && r.mt2; ++v) {
    if (!m[v] || !finite_emitter(g, v)) continue;
    bool inside = false;
    for (int bi : g.out_bundles(v)) inside = inside || m[g.bundle(bi).dst];
    if (!inside) {
      r.mt2 = false;
      r.mt2_violation_vertex = v;
    }
  }
  // MT3 with plain graph reachability: when MT1 holds, any path between
  // members stays inside M anyway.
  Reachability reach(g);
  for (int v = 0; v < g.vertex_count() && r.mt3; ++v) {
    if (!m[v]) continue;
    for (int w = v; w < g.vertex_count() && r.mt3; ++w) {
      if (!m[w]) continue;
      bool common = false;
      for (int y = 0; y < g.vertex_count() && !common; ++y)
        common = m[y] && reach.reaches(v, y) && reach.reaches(w, y);
      if (!common) {
        r.mt3 = false;
        r.mt3_violation_pair = {v, w};
      }
    }
  }
  return r;
}

inline bool is_maximal_tail(const Graph& g, const VertexSet& m) {
  return check_maximal_tail(g, m).ok();
}

enum class TailClass { gamma, tau };

/// Classification of a maximal tail M: tau iff the restriction of g to M
/// contains a cycle without any exit into M, witnessed by that cycle
/// (edges mapped back to g); gamma otherwise.
struct TailClassification {
  TailClass cls = TailClass::gamma;
  std::optional<Cycle> exitless_cycle;
};

inline TailClassification classify_tail(const Graph& g, const VertexSet& m,
                                        std::uint64_t cycle_limit = kDefaultCycleLimit) {
  TailCheck chk = check_maximal_tail(g, m);
  if (!chk.ok()) throw InvalidInput("classify_tail: not a maximal tail");
  Graph sub = restriction(g, m, "m_restr");
  TailClassification out;
  for (const Cycle& c : vertex_simple_cycles(sub, cycle_limit)) {
    Cycle in_g = map_cycle_by_id(sub, g, c);
    if (loop_exits(g, in_g, m).empty()) {
      out.cls = TailClass::tau;
      out.exitless_cycle = in_g;
      return out;
    }
  }
  return out;
}

struct MaximalTail {
  VertexSet vertices;
  TailClass cls = TailClass::gamma;
  std::optional<Cycle> exitless_cycle;  // present iff tau
};

/// All maximal tails, classified.  Computed as the MT3-satisfying complements
/// of proper hereditary & saturated sets (the complement duality makes
/// MT1 and MT2 equivalent to the complement being hereditary & saturated).
/// Order follows enumerate_hersat of the complements.
inline std::vector<MaximalTail> maximal_tails(const Graph& g) {
  std::vector<MaximalTail> out;
  for (const VertexSet& x : enumerate_hersat(g)) {
    if (set_size(x) == g.vertex_count()) continue;  // complement would be empty
    VertexSet m = empty_set(g);
    for (int v = 0; v < g.vertex_count(); ++v) m[v] = x[v] ? 0 : 1;
    TailCheck chk = check_maximal_tail(g, m);
    internal_check(chk.mt1 && chk.mt2,
                   "complement of hereditary/saturated set fails MT1/MT2");
    if (!chk.mt3) continue;
    TailClassification cls = classify_tail(g, m);
    out.push_back(MaximalTail{m, cls.cls, cls.exitless_cycle});
  }
  return out;
}

}  // namespace cka
