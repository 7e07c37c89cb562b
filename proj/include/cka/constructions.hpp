#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cka/classify.hpp"

namespace cka {

// ---------------------------------------------------------------------------
// F-path families
// ---------------------------------------------------------------------------

/// A family of parallel paths sharing a bundle sequence; count is the product
/// of the member multiplicities (omega-absorbing).
struct PathFamily {
  std::vector<int> bundles;  // bundle indexes, consecutive ones compose
  Count count{1};
};

/// Listing of the families up to a depth bound plus the exact (depth
/// independent) finiteness verdict with its witness.
struct FResult {
  std::vector<PathFamily> families;
  bool is_finite = true;
  int depth_used = 0;
  std::optional<int> omega_witness_bundle;  // omega bundle lying on a family
  std::optional<int> pump_witness_vertex;   // cycle vertex outside X∪B that
                                            // can finish into X∪B
};

/// "(e,f)" style label for a family's bundle sequence.
inline std::string family_label(const Graph& g, const std::vector<int>& bundles) {
  std::string out = "(";
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (i) out += ",";
    out += g.bundle(bundles[i]).id;
  }
  return out + ")";
}

namespace detail {

/// For vertices outside X∪B: can a path from here reach `accept` (a subset
/// of X∪B) using intermediate vertices outside X∪B only?
inline std::vector<char> can_finish(const Graph& g, const VertexSet& xb,
                                    const VertexSet& accept) {
  std::vector<char> cf(g.vertex_count(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (xb[v] || cf[v]) continue;
      for (int bi : g.out_bundles(v)) {
        int w = g.bundle(bi).dst;
        if (accept[w] || (!xb[w] && cf[w])) {
          cf[v] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  return cf;
}

struct InfinitenessWitness {
  std::optional<int> omega_bundle;
  std::optional<int> pump_vertex;
  bool infinite() const {
    return omega_bundle.has_value() || pump_vertex.has_value();
  }
};

/// Exact test for "infinitely many path instances whose family ends inside
/// `accept`".  Two sources of infinity:
///   - an omega bundle lying on some valid family (instance blow-up), or
///   - a cycle entirely outside X∪B from which `accept` is reachable
///     through outside vertices (length blow-up).
inline InfinitenessWitness f_infinite(const Graph& g, const VertexSet& x,
                                      const VertexSet& b,
                                      const VertexSet& accept) {
  VertexSet xb = x;
  for (int v = 0; v < g.vertex_count(); ++v) xb[v] = (x[v] || b[v]) ? 1 : 0;
  std::vector<char> cf = can_finish(g, xb, accept);
  InfinitenessWitness w;
  for (int bi = 0; bi < g.bundle_count() && !w.omega_bundle; ++bi) {
    const Bundle& e = g.bundle(bi);
    if (!e.mult.is_omega() || x[e.src]) continue;
    // A family through e ends at e (targets in X∪B stop the path), so e lies
    // on a valid family iff either e itself closes one into `accept` (and is
    // not an excluded single edge from B into X), or its target can still
    // finish from outside.
    bool closes = xb[e.dst] && accept[e.dst] && !(b[e.src] && x[e.dst]);
    bool continues = !xb[e.dst] && cf[e.dst];
    if (closes || continues) w.omega_bundle = bi;
  }
  // Cycles entirely outside X∪B: strongly connected components of the
  // restriction to the complement of X∪B.
  VertexSet outside = empty_set(g);
  for (int v = 0; v < g.vertex_count(); ++v) outside[v] = xb[v] ? 0 : 1;
  Graph rest = restriction(g, outside, "outside");
  SccPartition scc = strongly_connected_components(rest);
  for (const Scc& comp : scc.components) {
    if (!comp.has_internal_edge || w.pump_vertex) continue;
    for (int rv : comp.vertices) {
      int v = *g.find_vertex(rest.vertex_id(rv));
      if (cf[v]) {
        w.pump_vertex = v;
        break;
      }
    }
  }
  return w;
}

/// Depth-bounded family enumeration (shared by f_paths and the ideal-graph
/// builder): paths starting outside X, ending at the first hit of X∪B, with
/// single edges from B into X excluded.  Sorted by (length, bundle sequence).
inline std::vector<PathFamily> enumerate_families(const Graph& g,
                                                  const VertexSet& x,
                                                  const VertexSet& b, int depth,
                                                  std::uint64_t family_limit) {
  VertexSet xb = x;
  for (int v = 0; v < g.vertex_count(); ++v) xb[v] = (x[v] || b[v]) ? 1 : 0;
  std::vector<PathFamily> fams;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int u) -> void {
    for (int bi : g.out_bundles(u)) {
      int w = g.bundle(bi).dst;
      if (xb[w]) {
        if (cur.empty() && b[u] && x[w]) continue;  // excluded single edge
        if (static_cast<int>(cur.size()) + 1 > depth) continue;
        PathFamily f;
        f.bundles = cur;
        f.bundles.push_back(bi);
        for (int fb : f.bundles) f.count *= g.bundle(fb).mult;
        if (fams.size() >= family_limit)
          throw CapExceeded("f_paths: family limit exceeded");
        fams.push_back(std::move(f));
      } else if (static_cast<int>(cur.size()) + 1 < depth) {
        cur.push_back(bi);
        self(self, w);
        cur.pop_back();
      }
    }
  };
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (x[s]) continue;
    dfs(dfs, s);
  }
  std::stable_sort(fams.begin(), fams.end(),
                   [](const PathFamily& a, const PathFamily& c) {
                     if (a.bundles.size() != c.bundles.size())
                       return a.bundles.size() < c.bundles.size();
                     return a.bundles < c.bundles;
                   });
  return fams;
}

inline void check_f_inputs(const Graph& g, const VertexSet& x,
                           const VertexSet& b, int depth) {
  validate_ideal_spec(g, IdealSpec{x, b});
  if (set_empty(x)) throw InvalidInput("f_paths: X must be nonempty");
  if (depth < 1) throw InvalidInput("f_paths: depth must be at least 1");
}

}  // namespace detail

/// The families of paths entering X∪B from outside X (single edges from B
/// into X excluded), listed up to `depth`, plus the exact finiteness verdict.
inline FResult f_paths(const Graph& g, const VertexSet& x, const VertexSet& b,
                       int depth,
                       std::uint64_t family_limit = kDefaultCycleLimit) {
  detail::check_f_inputs(g, x, b, depth);
  FResult r;
  r.depth_used = depth;
  r.families = detail::enumerate_families(g, x, b, depth, family_limit);
  VertexSet xb = x;
  for (int v = 0; v < g.vertex_count(); ++v) xb[v] = (x[v] || b[v]) ? 1 : 0;
  detail::InfinitenessWitness w = detail::f_infinite(g, x, b, xb);
  r.omega_witness_bundle = w.omega_bundle;
  r.pump_witness_vertex = w.pump_vertex;
  r.is_finite = !w.infinite();
  return r;
}

// ---------------------------------------------------------------------------
// Construction results with provenance
// ---------------------------------------------------------------------------

/// Where a constructed vertex or bundle came from.  Kinds:
///   "vertex"/"edge"          carried over from the input graph
///   "path"/"path_edge"       an F-path instance and its single out-edge
///   "beta"/"beta_edge"       an added sink β(v) and a copied in-edge
///   "pair"/"pair_edge"       E_G edge-part vertices and composition edges
struct ProvEntry {
  std::string kind;
  std::string label;
  std::vector<std::string> origin;
};

struct ConstructionResult {
  Graph graph;
  bool truncated = false;
  std::map<std::string, ProvEntry> provenance;  // new id -> origin

  /// Display labels for DOT rendering (only where they differ from the id).
  std::map<std::string, std::string> vertex_labels() const {
    std::map<std::string, std::string> out;
    for (int v = 0; v < graph.vertex_count(); ++v) {
      auto it = provenance.find(graph.vertex_id(v));
      if (it != provenance.end() && it->second.label != graph.vertex_id(v))
        out[graph.vertex_id(v)] = it->second.label;
    }
    return out;
  }
};

namespace detail {

/// Deterministic fresh-id source: returns the candidate itself when unused,
/// otherwise appends _2, _3, ...
class IdGen {
 public:
  std::string fresh(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int k = 2;; ++k) {
      std::string c = base + "_" + std::to_string(k);
      if (used_.insert(c).second) return c;
    }
  }

 private:
  std::set<std::string> used_;
};

/// Parse an edge-instance selection: "a#0" picks one instance, a bare finite
/// bundle id picks all of its instances; bare omega bundles are rejected.
inline std::vector<EdgeInstance> parse_instance_selection(
    const Graph& g, const std::vector<std::string>& labels) {
  std::vector<EdgeInstance> out;
  for (const std::string& lbl : labels) {
    std::size_t hash = lbl.find('#');
    std::string id = lbl.substr(0, hash);
    std::optional<int> bi = g.find_bundle(id);
    if (!bi) throw InvalidInput("unknown bundle '" + id + "'");
    const Bundle& bun = g.bundle(*bi);
    if (hash == std::string::npos) {
      if (bun.mult.is_omega())
        throw InvalidInput("omega bundle '" + id +
                           "' selected wholesale; pick instances like '" + id +
                           "#0'");
      for (std::uint64_t k = 0; k < bun.mult.finite(); ++k)
        out.push_back(EdgeInstance{*bi, k});
    } else {
      std::string copy = lbl.substr(hash + 1);
      if (copy.empty() ||
          copy.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("bad instance label '" + lbl + "'");
      std::uint64_t k = std::stoull(copy);
      if (!bun.mult.is_omega() && k >= bun.mult.finite())
        throw InvalidInput("instance '" + lbl + "' out of range (multiplicity " +
                           bun.mult.str() + ")");
      out.push_back(EdgeInstance{*bi, k});
    }
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw InvalidInput("duplicate edge instance '" +
                         instance_label(g, out[i]) + "'");
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// E_G: the finite approximation subgraph
// ---------------------------------------------------------------------------

/// E_G for a finite vertex selection G0 and edge-instance selection G1 (with
/// r(G1) ⊆ G0).  Vertices are the picked instances plus those members of G0
/// that are sinks or emit an instance outside G1; edges are the compositions
/// (e,f) with r(e) = s(f), where a G0-part vertex acts as its own source.
/// Every G0-part vertex is a sink of the result.
inline ConstructionResult build_subgraph(const Graph& g, const VertexSet& g0,
                                         const std::vector<std::string>& g1) {
  if (static_cast<int>(g0.size()) != g.vertex_count())
    throw InvalidInput("build_subgraph: G0 mask size mismatch");
  std::vector<EdgeInstance> inst = detail::parse_instance_selection(g, g1);
  for (const EdgeInstance& e : inst)
    if (!g0[g.bundle(e.bundle).dst])
      throw InvalidInput("build_subgraph: r(" + instance_label(g, e) +
                         ") = '" + g.vertex_id(g.bundle(e.bundle).dst) +
                         "' is not in G0");
  std::map<int, std::uint64_t> selected;  // bundle -> #instances picked
  for (const EdgeInstance& e : inst) ++selected[e.bundle];

  ConstructionResult res;
  res.graph = Graph(g.name() + "_eg");
  detail::IdGen ids;

  // Edge part, in instance order.
  std::vector<std::string> inst_vid(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const EdgeInstance& e = inst[i];
    std::string base =
        g.bundle(e.bundle).id + "_" + std::to_string(e.copy);
    inst_vid[i] = ids.fresh(base);
    res.graph.add_vertex(inst_vid[i]);
    res.provenance[inst_vid[i]] =
        ProvEntry{"pair", instance_label(g, e), {instance_label(g, e)}};
  }
  // Vertex part: members of G0 that are sinks or emit outside G1.
  std::vector<int> vert_part;
  std::vector<std::string> vert_vid;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g0[v]) continue;
    bool outside = g.out_bundles(v).empty();  // sinks qualify
    for (int bi : g.out_bundles(v)) {
      const Bundle& bun = g.bundle(bi);
      std::uint64_t picked = selected.count(bi) ? selected[bi] : 0;
      if (bun.mult.is_omega() || picked < bun.mult.finite()) outside = true;
    }
    if (!outside) continue;
    vert_part.push_back(v);
    std::string vid = ids.fresh(g.vertex_id(v));
    vert_vid.push_back(vid);
    res.graph.add_vertex(vid);
    res.provenance[vid] = ProvEntry{"vertex", g.vertex_id(v), {g.vertex_id(v)}};
  }
  // Composition edges (e,f): r(e) = source-of-f.
  for (std::size_t i = 0; i < inst.size(); ++i) {
    int re = g.bundle(inst[i].bundle).dst;
    auto add_pair = [&](const std::string& fid, const std::string& flabel) {
      std::string eid = ids.fresh(inst_vid[i] + "__" + fid);
      res.graph.add_bundle(eid, inst_vid[i], fid, Count(1));
      res.provenance[eid] =
          ProvEntry{"pair_edge",
                    "(" + instance_label(g, inst[i]) + "," + flabel + ")",
                    {instance_label(g, inst[i]), flabel}};
    };
    for (std::size_t j = 0; j < inst.size(); ++j)
      if (g.bundle(inst[j].bundle).src == re)
        add_pair(inst_vid[j], instance_label(g, inst[j]));
    for (std::size_t j = 0; j < vert_part.size(); ++j)
      if (vert_part[j] == re) add_pair(vert_vid[j], g.vertex_id(vert_part[j]));
  }
  for (const std::string& vid : vert_vid)
    internal_check(
        res.graph.out_bundles(*res.graph.find_vertex(vid)).empty(),
        "build_subgraph: G0-part vertex is not a sink");
  return res;
}

// ---------------------------------------------------------------------------
// The ideal graph
// ---------------------------------------------------------------------------

/// An F-path instance: one copy choice per position of a family.  The copy
/// index is shown only where a position is ambiguous (multiplicity above 1
/// or omega), so a multiplicity-free instance reads like its family.
inline std::string path_instance_label(const Graph& g,
                                       const std::vector<int>& bundles,
                                       const std::vector<std::uint64_t>& copies) {
  std::string out = "(";
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (i) out += ",";
    const Bundle& bun = g.bundle(bundles[i]);
    if (bun.mult == Count(1))
      out += bun.id;
    else
      out += instance_label(g, EdgeInstance{bundles[i], copies[i]});
  }
  return out + ")";
}

/// The graph of the gauge-invariant ideal named by (X, B): the restriction
/// to X, the B vertices with their edges into X, and one vertex per F-path
/// instance carrying a single edge to the path's range.  Omega families
/// materialize `omega_cap` copies per omega position; `truncated` mirrors
/// the exact infiniteness verdict.  When F is finite the depth is raised
/// internally so the listing is complete regardless of the requested depth.
inline ConstructionResult build_ideal_graph(
    const Graph& g, const VertexSet& x, const VertexSet& b, int depth,
    std::uint64_t omega_cap = 3, std::uint64_t family_limit = kDefaultCycleLimit) {
  detail::check_f_inputs(g, x, b, depth);
  if (omega_cap < 1)
    throw InvalidInput("build_ideal_graph: omega cap must be at least 1");
  VertexSet xb = x;
  for (int v = 0; v < g.vertex_count(); ++v) xb[v] = (x[v] || b[v]) ? 1 : 0;
  detail::InfinitenessWitness wit = detail::f_infinite(g, x, b, xb);
  // Finite families have pairwise distinct positions, so their length is
  // bounded by the vertex count; raising the depth makes the listing exact.
  int effective_depth =
      wit.infinite() ? depth : std::max(depth, g.vertex_count());
  std::vector<PathFamily> fams =
      detail::enumerate_families(g, x, b, effective_depth, family_limit);

  ConstructionResult res;
  res.truncated = wit.infinite();
  res.graph = Graph(g.name() + "_ideal");
  detail::IdGen ids;

  // X-part and B-part vertices keep their original ids.
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!x[v] && !b[v]) continue;
    std::string vid = ids.fresh(g.vertex_id(v));
    internal_check(vid == g.vertex_id(v), "original id not fresh");
    res.graph.add_vertex(vid);
    res.provenance[vid] = ProvEntry{"vertex", vid, {vid}};
  }
  // F-part: one vertex per path instance, families in listing order,
  // instances in lexicographic copy order.
  struct FVertex {
    std::string id;
    int range;  // original vertex index
  };
  std::vector<FVertex> fverts;
  for (const PathFamily& fam : fams) {
    std::vector<std::uint64_t> range_per_pos;
    for (int bi : fam.bundles) {
      const Count& m = g.bundle(bi).mult;
      range_per_pos.push_back(m.is_omega() ? omega_cap : m.finite());
    }
    std::vector<std::uint64_t> copies(fam.bundles.size(), 0);
    bool more = true;
    while (more) {
      std::string base = "p";
      for (std::size_t i = 0; i < fam.bundles.size(); ++i)
        base += "_" + g.bundle(fam.bundles[i]).id + "_" +
                std::to_string(copies[i]);
      std::string vid = ids.fresh(base);
      res.graph.add_vertex(vid);
      std::vector<std::string> origin;
      for (std::size_t i = 0; i < fam.bundles.size(); ++i)
        origin.push_back(
            instance_label(g, EdgeInstance{fam.bundles[i], copies[i]}));
      res.provenance[vid] = ProvEntry{
          "path", path_instance_label(g, fam.bundles, copies), origin};
      fverts.push_back(FVertex{vid, g.bundle(fam.bundles.back()).dst});
      // Advance the copy tuple lexicographically (last position fastest).
      more = false;
      for (std::size_t i = fam.bundles.size(); i-- > 0;) {
        if (++copies[i] < range_per_pos[i]) {
          more = true;
          break;
        }
        copies[i] = 0;
      }
    }
  }
  // Edges: the restriction to X, then B's edges into X, then one edge per
  // F-vertex to its range.
  for (int bi = 0; bi < g.bundle_count(); ++bi) {
    const Bundle& bun = g.bundle(bi);
    if (x[bun.src]) {
      internal_check(x[bun.dst], "hereditary X leaks an edge");
      std::string eid = ids.fresh(bun.id);
      res.graph.add_bundle(eid, g.vertex_id(bun.src), g.vertex_id(bun.dst),
                           bun.mult);
      res.provenance[eid] = ProvEntry{"edge", eid, {bun.id}};
    } else if (b[bun.src] && x[bun.dst]) {
      std::string eid = ids.fresh(bun.id);
      res.graph.add_bundle(eid, g.vertex_id(bun.src), g.vertex_id(bun.dst),
                           bun.mult);
      res.provenance[eid] = ProvEntry{"edge", eid, {bun.id}};
    }
  }
  for (const FVertex& fv : fverts) {
    std::string eid = ids.fresh(fv.id + "_e");
    res.graph.add_bundle(eid, fv.id, g.vertex_id(fv.range), Count(1));
    res.provenance[eid] =
        ProvEntry{"path_edge", res.provenance[fv.id].label, {fv.id}};
  }

  // Structure laws of the construction.
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!b[v]) continue;
    int nv = *res.graph.find_vertex(g.vertex_id(v));
    internal_check(out_degree(res.graph, nv).is_omega(),
                   "B vertex lost its omega degree");
    for (int bi : res.graph.out_bundles(nv)) {
      int dst = res.graph.bundle(bi).dst;
      auto orig = g.find_vertex(res.graph.vertex_id(dst));
      internal_check(orig.has_value() && x[*orig],
                     "B vertex emits outside X in the ideal graph");
    }
  }
  for (const FVertex& fv : fverts) {
    int nv = *res.graph.find_vertex(fv.id);
    internal_check(res.graph.out_bundles(nv).size() == 1 &&
                       res.graph.bundle(res.graph.out_bundles(nv)[0])
                           .mult == Count(1),
                   "F vertex must emit exactly one edge");
  }
  SccPartition scc = strongly_connected_components(res.graph);
  for (const Scc& comp : scc.components) {
    if (!comp.has_internal_edge) continue;
    for (int v : comp.vertices) {
      auto orig = g.find_vertex(res.graph.vertex_id(v));
      internal_check(orig.has_value() && x[*orig],
                     "ideal-graph cycle leaves X");
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// The quotient graph
// ---------------------------------------------------------------------------

/// The quotient graph for (X, B): the restriction to E^0∖X plus a sink β(v)
/// for every v ∈ X^fin_∞∖B, where β(v) receives a fresh copy of every edge
/// instance into v.
inline ConstructionResult build_quotient_graph(const Graph& g,
                                               const IdealSpec& spec) {
  validate_ideal_spec(g, spec);
  BadVertexSet bad = x_fin_inf(g, spec.x);
  ConstructionResult res;
  res.graph = Graph(g.name() + "_quot");
  detail::IdGen ids;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (spec.x[v]) continue;
    std::string vid = ids.fresh(g.vertex_id(v));
    internal_check(vid == g.vertex_id(v), "original id not fresh");
    res.graph.add_vertex(vid);
    res.provenance[vid] = ProvEntry{"vertex", vid, {vid}};
  }
  std::vector<std::pair<int, std::string>> betas;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!bad.vertices[v] || spec.b[v]) continue;
    std::string vid = ids.fresh("beta_" + g.vertex_id(v));
    res.graph.add_vertex(vid);
    res.provenance[vid] =
        ProvEntry{"beta", "β(" + g.vertex_id(v) + ")", {g.vertex_id(v)}};
    betas.emplace_back(v, vid);
  }
  for (int bi = 0; bi < g.bundle_count(); ++bi) {
    const Bundle& bun = g.bundle(bi);
    if (spec.x[bun.dst]) continue;
    internal_check(!spec.x[bun.src], "hereditary X emits into the complement");
    std::string eid = ids.fresh(bun.id);
    res.graph.add_bundle(eid, g.vertex_id(bun.src), g.vertex_id(bun.dst),
                         bun.mult);
    res.provenance[eid] = ProvEntry{"edge", eid, {bun.id}};
  }
  for (const auto& [v, beta_id] : betas) {
    for (int bi : g.in_bundles(v)) {
      const Bundle& bun = g.bundle(bi);
      internal_check(!spec.x[bun.src], "edge from X into X^fin_inf vertex");
      std::string eid = ids.fresh(bun.id + "_beta");
      res.graph.add_bundle(eid, g.vertex_id(bun.src), beta_id, bun.mult);
      res.provenance[eid] =
          ProvEntry{"beta_edge", bun.id + "→β(" + g.vertex_id(v) + ")",
                    {bun.id}};
    }
    internal_check(
        res.graph.out_bundles(*res.graph.find_vertex(beta_id)).empty(),
        "β vertex must be a sink");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Stable ideal decomposition
// ---------------------------------------------------------------------------

/// X0, its hereditary & saturated closure X, the ideal graph over X (absent
/// when X is empty) and the quotient graph.  hypothesis_ok records whether
/// the no-purely-infinite-simple-unital-quotient hypothesis held; the
/// decomposition is computed either way.  The quotient always has isolated
/// loops (asserted).
struct Decomposition {
  VertexSet x0;
  VertexSet x;
  bool hypothesis_ok = true;
  std::optional<MaximalTail> pi_tail;  // violating tail when hypothesis fails
  std::optional<ConstructionResult> ideal;
  ConstructionResult quotient;
};

inline Decomposition stable_ideal_decomposition(const Graph& g, int depth = 6,
                                                std::uint64_t omega_cap = 3) {
  Decomposition d;
  d.x0 = empty_set(g);
  Reachability reach(g);
  for (int v = 0; v < g.vertex_count(); ++v) {
    Count returning{0};
    for (int bi : g.out_bundles(v))
      if (reach.reaches(g.bundle(bi).dst, v)) returning += g.bundle(bi).mult;
    if (!(returning < Count(2))) d.x0[v] = 1;
  }
  d.x = hersat_closure(g, d.x0);
  d.pi_tail = pi_simple_unital_quotient(g);
  d.hypothesis_ok = !d.pi_tail.has_value();
  if (!set_empty(d.x))
    d.ideal = build_ideal_graph(g, d.x, empty_set(g), depth, omega_cap);
  d.quotient = build_quotient_graph(g, IdealSpec{d.x, empty_set(g)});
  internal_check(has_isolated_loops(d.quotient.graph).verdict,
                 "decomposition quotient must have isolated loops");
  return d;
}

// ---------------------------------------------------------------------------
// Gauge-invariant ideal enumeration
// ---------------------------------------------------------------------------

/// All pairs (X, B) with X hereditary & saturated and B ⊆ X^fin_∞, in
/// (hersat order, subset-mask order).
inline std::vector<IdealSpec> enumerate_gauge_ideals(const Graph& g) {
  require_vertex_cap(g, std::min(16, max_vertices_cap()),
                     "enumerate_gauge_ideals");
  std::vector<IdealSpec> out;
  for (const VertexSet& x : enumerate_hersat(g)) {
    BadVertexSet bad = x_fin_inf(g, x);
    std::vector<int> members;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (bad.vertices[v]) members.push_back(v);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size());
         ++mask) {
      VertexSet b = empty_set(g);
      for (std::size_t i = 0; i < members.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) b[members[i]] = 1;
      out.push_back(IdealSpec{x, b});
    }
  }
  return out;
}

/// A gauge-invariant primitive-ideal name with its origin.
struct PrimitiveIdealRecord {
  IdealSpec spec;
  bool from_tail = false;  // else from a breaking vertex
  VertexSet tail;          // meaningful when from_tail
  int vertex = -1;         // meaningful when !from_tail
};

/// One spec (Ω(M), Ω(M)^fin_∞) per gamma tail M and one spec
/// (Ω(v), Ω(v)^fin_∞∖{v}) per breaking vertex v.
inline std::vector<PrimitiveIdealRecord> gauge_primitive_ideals(const Graph& g) {
  require_vertex_cap(g, std::min(16, max_vertices_cap()),
                     "gauge_primitive_ideals");
  std::vector<PrimitiveIdealRecord> out;
  for (const MaximalTail& t : maximal_tails(g)) {
    if (t.cls != TailClass::gamma) continue;
    PrimitiveIdealRecord rec;
    rec.from_tail = true;
    rec.tail = t.vertices;
    rec.spec.x = omega_set(g, t.vertices);
    rec.spec.b = x_fin_inf(g, rec.spec.x).vertices;
    out.push_back(std::move(rec));
  }
  for (int v : breaking_vertices(g)) {
    PrimitiveIdealRecord rec;
    rec.vertex = v;
    VertexSet sv = empty_set(g);
    sv[v] = 1;
    rec.spec.x = omega_set(g, sv);
    rec.spec.b = x_fin_inf(g, rec.spec.x).vertices;
    rec.spec.b[v] = 0;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace cka
