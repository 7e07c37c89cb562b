#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cka/graph.hpp"

namespace cka {

/// check_subset result.  Violation fields hold the first witness found in
/// declaration order (an edge leaving the set; a vertex forced in by
/// saturation).
struct SubsetCheck {
  bool hereditary = true;
  bool saturated = true;
  std::optional<int> hereditary_violation_bundle;
  std::optional<int> saturation_violation_vertex;
};

/// Hereditary: membership is closed under following edges forward.
/// Saturated: contains every finite non-sink emitter all of whose edge
/// targets lie inside (sinks and omega-emitters impose no constraint).
inline SubsetCheck check_subset(const Graph& g, const VertexSet& s) {
  SubsetCheck r;
  for (int bi = 0; bi < g.bundle_count() && r.hereditary; ++bi) {
    const Bundle& b = g.bundle(bi);
    if (s[b.src] && !s[b.dst]) {
      r.hereditary = false;
      r.hereditary_violation_bundle = bi;
    }
  }
  for (int v = 0; v < g.vertex_count() && r.saturated; ++v) {
    if (s[v] || !finite_emitter(g, v)) continue;
    bool all_in = true;
    for (int bi : g.out_bundles(v)) all_in = all_in && s[g.bundle(bi).dst];
    if (all_in) {
      r.saturated = false;
      r.saturation_violation_vertex = v;
    }
  }
  return r;
}

inline bool is_hersat(const Graph& g, const VertexSet& s) {
  SubsetCheck c = check_subset(g, s);
  return c.hereditary && c.saturated;
}

/// Least hereditary and saturated superset: closes under (a) adding edge
/// targets of members, (b) adding finite non-sink emitters whose targets all
/// lie inside.  Monotone in s.
inline VertexSet hersat_closure(const Graph& g, VertexSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Bundle& b : g.bundles()) {
      if (s[b.src] && !s[b.dst]) {
        s[b.dst] = 1;
        changed = true;
      }
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (s[v] || !finite_emitter(g, v)) continue;
      bool all_in = true;
      for (int bi : g.out_bundles(v)) all_in = all_in && s[g.bundle(bi).dst];
      if (all_in) {
        s[v] = 1;
        changed = true;
      }
    }
  }
  return s;
}

/// All hereditary & saturated subsets (including the empty set and the full
/// vertex set), sorted by size then lexicographically by member ids.
/// Throws CapExceeded beyond the vertex cap.
inline std::vector<VertexSet> enumerate_hersat(const Graph& g) {
  const int n = g.vertex_count();
  require_vertex_cap(g, max_vertices_cap(), "enumerate_hersat");

  // Per-vertex target masks make the 2^n scan cheap.
  std::vector<std::uint64_t> target_mask(n, 0);
  std::vector<char> fin_emitter(n, 0);
  for (int v = 0; v < n; ++v) {
    fin_emitter[v] = finite_emitter(g, v) ? 1 : 0;
    for (int bi : g.out_bundles(v))
      target_mask[v] |= std::uint64_t(1) << g.bundle(bi).dst;
  }
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      bool in = (mask >> v) & 1;
      bool targets_in = (target_mask[v] & ~mask) == 0;
      if (in && !targets_in) ok = false;                      // hereditary
      if (!in && fin_emitter[v] && targets_in) ok = false;    // saturated
    }
    if (!ok) continue;
    VertexSet s(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) s[v] = (mask >> v) & 1;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [&](const VertexSet& a, const VertexSet& b) {
    int sa = set_size(a), sb = set_size(b);
    if (sa != sb) return sa < sb;
    return set_ids(g, a) < set_ids(g, b);
  });
  return out;
}

inline bool is_trivial_subset(const Graph& g, const VertexSet& s) {
  return set_empty(s) || set_size(s) == g.vertex_count();
}

/// Omega(S): the vertices outside S from which no path reaches S.  Always
/// hereditary; saturation can only fail at members of S themselves, which is
/// checked as an internal invariant.
inline VertexSet omega_set(const Graph& g, const VertexSet& s) {
  // Reverse reachability: everything that reaches S (including S).
  VertexSet reaches_s = s;
  std::vector<int> stack;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (s[v]) stack.push_back(v);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int bi : g.in_bundles(u)) {
      int w = g.bundle(bi).src;
      if (!reaches_s[w]) {
        reaches_s[w] = 1;
        stack.push_back(w);
      }
    }
  }
  VertexSet result = empty_set(g);
  for (int v = 0; v < g.vertex_count(); ++v) result[v] = reaches_s[v] ? 0 : 1;

  SubsetCheck chk = check_subset(g, result);
  internal_check(chk.hereditary, "omega_set result not hereditary");
  internal_check(chk.saturated || s[*chk.saturation_violation_vertex],
                 "omega_set saturation violated outside S");
  return result;
}

/// X^fin_inf membership details: instance-counted edges escaping X.
struct BadVertexSet {
  VertexSet vertices;
  std::map<int, std::uint64_t> escape_count;  // member vertex -> finite count
};

/// The omega-emitters outside X with finitely many (but at least one) edges
/// into the complement of X.  Requires X hereditary & saturated.
inline BadVertexSet x_fin_inf(const Graph& g, const VertexSet& x) {
  if (!is_hersat(g, x))
    throw InvalidInput("x_fin_inf: X is not hereditary and saturated");
  BadVertexSet out;
  out.vertices = empty_set(g);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (x[v] || !out_degree(g, v).is_omega()) continue;
    Count escaping{0};
    for (int bi : g.out_bundles(v))
      if (!x[g.bundle(bi).dst]) escaping += g.bundle(bi).mult;
    if (!escaping.is_zero() && !escaping.is_omega()) {
      out.vertices[v] = 1;
      out.escape_count[v] = escaping.finite();
    }
  }
  return out;
}

/// Breaking vertices: omega-emitters v with finitely many (>= 1) edges whose
/// targets avoid Omega(v).
inline std::vector<int> breaking_vertices(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!out_degree(g, v).is_omega()) continue;
    VertexSet sv = empty_set(g);
    sv[v] = 1;
    VertexSet omega_v = omega_set(g, sv);
    Count avoiding{0};
    for (int bi : g.out_bundles(v))
      if (!omega_v[g.bundle(bi).dst]) avoiding += g.bundle(bi).mult;
    if (!avoiding.is_zero() && !avoiding.is_omega()) out.push_back(v);
  }
  return out;
}

/// Names a gauge-invariant ideal: X hereditary & saturated, B a subset of
/// X^fin_inf.
struct IdealSpec {
  VertexSet x;
  VertexSet b;
};

inline void validate_ideal_spec(const Graph& g, const IdealSpec& spec) {
  if (static_cast<int>(spec.x.size()) != g.vertex_count() ||
      static_cast<int>(spec.b.size()) != g.vertex_count())
    throw InvalidInput("ideal spec: mask size mismatch");
  if (!is_hersat(g, spec.x))
    throw InvalidInput("ideal spec: X is not hereditary and saturated");
  BadVertexSet bad = x_fin_inf(g, spec.x);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (spec.b[v] && !bad.vertices[v])
      throw InvalidInput("ideal spec: '" + g.vertex_id(v) +
                         "' is not in X^fin_inf");
}

}  // namespace cka
