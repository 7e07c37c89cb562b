#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cka/count.hpp"
#include "cka/errors.hpp"

namespace cka {

/// A bundle of parallel edges: `mult` edge instances named `id#0 ... id#(m-1)`
/// from `src` to `dst`.  Omega bundles stay symbolic; instances are exposed
/// on demand.
struct Bundle {
  std::string id;
  int src = -1;
  int dst = -1;
  Count mult{1};
};

/// One concrete edge out of a bundle.
struct EdgeInstance {
  int bundle = -1;
  std::uint64_t copy = 0;
  friend bool operator==(const EdgeInstance&, const EdgeInstance&) = default;
  friend auto operator<=>(const EdgeInstance&, const EdgeInstance&) = default;
};

inline bool valid_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

/// A finite directed graph with multiplicities.  Immutable once built;
/// vertices and bundles keep declaration order, which fixes the iteration
/// order of every algorithm in this library.  Parsed graphs always have at
/// least one vertex; constructed graphs (quotients) may be empty.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::string name) : name_(std::move(name)) {
    if (!valid_id(name_)) throw InvalidInput("invalid graph name: '" + name_ + "'");
  }

  int add_vertex(const std::string& id) {
    if (!valid_id(id)) throw InvalidInput("invalid vertex id: '" + id + "'");
    if (vertex_index_.count(id)) throw InvalidInput("duplicate vertex id: '" + id + "'");
    int v = static_cast<int>(vertices_.size());
    vertices_.push_back(id);
    vertex_index_.emplace(id, v);
    out_.emplace_back();
    in_.emplace_back();
    return v;
  }

  int add_bundle(const std::string& id, const std::string& src,
                 const std::string& dst, Count mult) {
    if (!valid_id(id)) throw InvalidInput("invalid edge id: '" + id + "'");
    if (bundle_index_.count(id)) throw InvalidInput("duplicate edge id: '" + id + "'");
    if (!mult.is_omega() && mult.finite() == 0)
      throw InvalidInput("edge '" + id + "' has multiplicity 0");
    auto s = find_vertex(src);
    if (!s) throw InvalidInput("edge '" + id + "' uses undeclared vertex '" + src + "'");
    auto d = find_vertex(dst);
    if (!d) throw InvalidInput("edge '" + id + "' uses undeclared vertex '" + dst + "'");
    int b = static_cast<int>(bundles_.size());
    bundles_.push_back(Bundle{id, *s, *d, mult});
    bundle_index_.emplace(id, b);
    out_[*s].push_back(b);
    in_[*d].push_back(b);
    return b;
  }

  const std::string& name() const { return name_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int bundle_count() const { return static_cast<int>(bundles_.size()); }
  const std::string& vertex_id(int v) const { return vertices_.at(v); }
  const Bundle& bundle(int b) const { return bundles_.at(b); }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  std::optional<int> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_bundle(const std::string& id) const {
    auto it = bundle_index_.find(id);
    if (it == bundle_index_.end()) return std::nullopt;
    return it->second;
  }
  /// Vertex index by id; throws InvalidInput when unknown.
  int vertex(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw InvalidInput("unknown vertex: '" + id + "'");
    return *v;
  }

  /// Bundles with source v, declaration order.
  const std::vector<int>& out_bundles(int v) const { return out_.at(v); }
  /// Bundles with target v, declaration order.
  const std::vector<int>& in_bundles(int v) const { return in_.at(v); }

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Bundle> bundles_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> bundle_index_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Structural equality: same vertex sequence and same bundle sequence
/// (ids, endpoints, multiplicities); graph names are ignored.
inline bool structural_equal(const Graph& a, const Graph& b) {
  if (a.vertex_ids() != b.vertex_ids()) return false;
  if (a.bundle_count() != b.bundle_count()) return false;
  for (int i = 0; i < a.bundle_count(); ++i) {
    const Bundle& x = a.bundle(i);
    const Bundle& y = b.bundle(i);
    if (x.id != y.id || x.src != y.src || x.dst != y.dst || x.mult != y.mult)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;  // comment to end of line
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '#')
      ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

inline Count parse_mult_token(const std::string& tok, std::size_t line,
                              std::size_t col) {
  if (tok == "xinf") return Count::omega();
  if (tok.size() < 2 || tok[0] != 'x')
    throw ParseError("expected multiplicity 'x<N>' or 'xinf', got '" + tok + "'",
                     line, col);
  std::uint64_t value = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    char c = tok[i];
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad multiplicity '" + tok + "'", line, col);
    std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - 1 - digit) / 10)
      throw ParseError("multiplicity out of range: '" + tok + "'", line, col);
    value = value * 10 + digit;
  }
  if (value == 0) throw ParseError("multiplicity 0 in '" + tok + "'", line, col);
  return Count(value);
}

}  // namespace detail

/// Parse the line-based graph file format:
///
///     graph <name>
///     vertex <id>
///     edge <id> <src> <dst> [x<N>|xinf]
///
/// `#` starts a comment; ids are [A-Za-z0-9_]+; endpoints must be declared
/// before use; the vertex set must be nonempty.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<Graph> g;
  auto fail = [&](const std::string& msg, std::size_t col) -> void {
    throw ParseError(msg, lineno, col);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    try {
      if (kw == "graph") {
        if (g) fail("duplicate 'graph' line", toks[0].column);
        if (toks.size() != 2) fail("expected 'graph <name>'", toks[0].column);
        g.emplace(toks[1].text);
      } else if (kw == "vertex") {
        if (!g) fail("'vertex' before 'graph' line", toks[0].column);
        if (toks.size() != 2) fail("expected 'vertex <id>'", toks[0].column);
        g->add_vertex(toks[1].text);
      } else if (kw == "edge") {
        if (!g) fail("'edge' before 'graph' line", toks[0].column);
        if (toks.size() != 4 && toks.size() != 5)
          fail("expected 'edge <id> <src> <dst> [x<N>|xinf]'", toks[0].column);
        Count mult{1};
        if (toks.size() == 5)
          mult = detail::parse_mult_token(toks[4].text, lineno, toks[4].column);
        g->add_bundle(toks[1].text, toks[2].text, toks[3].text, mult);
      } else {
        fail("unknown directive '" + kw + "'", toks[0].column);
      }
    } catch (const InvalidInput& e) {
      fail(e.what(), toks[0].column);
    }
  }
  lineno += 1;
  if (!g) throw ParseError("missing 'graph' line", lineno, 1);
  if (g->vertex_count() == 0) throw ParseError("empty vertex set", lineno, 1);
  return *std::move(g);
}

inline Graph parse_graph_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

/// Canonical file-format serialization; parse(serialize(g)) is structurally
/// identical to g.
inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.name() << "\n";
  for (const std::string& v : g.vertex_ids()) out << "vertex " << v << "\n";
  for (const Bundle& b : g.bundles()) {
    out << "edge " << b.id << " " << g.vertex_id(b.src) << " "
        << g.vertex_id(b.dst);
    if (b.mult.is_omega())
      out << " xinf";
    else if (b.mult.finite() != 1)
      out << " x" << b.mult.finite();
    out << "\n";
  }
  return out.str();
}

/// Graphviz output.  Omega bundles are labeled with an infinity sign;
/// `vertex_labels` overrides display labels (used for path vertices and
/// beta-sinks of constructed graphs).
inline std::string to_dot(const Graph& g,
                          const std::map<std::string, std::string>& vertex_labels = {}) {
  std::ostringstream out;
  out << "digraph " << (g.name().empty() ? std::string("g") : g.name()) << " {\n";
  out << "  rankdir=LR;\n";
  for (const std::string& v : g.vertex_ids()) {
    out << "  \"" << v << "\"";
    auto it = vertex_labels.find(v);
    if (it != vertex_labels.end()) out << " [label=\"" << it->second << "\"]";
    out << ";\n";
  }
  for (const Bundle& b : g.bundles()) {
    out << "  \"" << g.vertex_id(b.src) << "\" -> \"" << g.vertex_id(b.dst)
        << "\" [label=\"" << b.id;
    if (b.mult.is_omega())
      out << " ∞";
    else if (b.mult.finite() != 1)
      out << " x" << b.mult.finite();
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Vertex sets
// ---------------------------------------------------------------------------

/// Vertex sets are char-masks indexed by vertex index.
using VertexSet = std::vector<char>;

inline VertexSet empty_set(const Graph& g) {
  return VertexSet(static_cast<std::size_t>(g.vertex_count()), 0);
}

inline VertexSet full_set(const Graph& g) {
  return VertexSet(static_cast<std::size_t>(g.vertex_count()), 1);
}

inline VertexSet make_set(const Graph& g, const std::vector<std::string>& ids) {
  VertexSet s = empty_set(g);
  for (const std::string& id : ids) {
    int v = g.vertex(id);
    if (s[v]) throw InvalidInput("duplicate vertex in set: '" + id + "'");
    s[v] = 1;
  }
  return s;
}

/// Member ids in declaration order.
inline std::vector<std::string> set_ids(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (s[v]) out.push_back(g.vertex_id(v));
  return out;
}

inline int set_size(const VertexSet& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), char(1)));
}

inline bool set_empty(const VertexSet& s) {
  return std::find(s.begin(), s.end(), char(1)) == s.end();
}

/// Analysis cap for exponential enumerations; the CKA_MAX_VERTICES
/// environment variable overrides the default of 20.
inline int max_vertices_cap() {
  if (const char* env = std::getenv("CKA_MAX_VERTICES")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 62) return static_cast<int>(v);
  }
  return 20;
}

inline void require_vertex_cap(const Graph& g, int cap, const std::string& op) {
  if (g.vertex_count() > cap)
    throw CapExceeded(op + ": graph has " + std::to_string(g.vertex_count()) +
                      " vertices, cap is " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Degrees and reachability
// ---------------------------------------------------------------------------

struct OutProfile {
  std::string vertex;
  Count degree;
  bool is_sink = false;
  bool is_infinite_emitter = false;
};

/// Instance-counted out-degree (sum of multiplicities, omega-absorbing).
inline Count out_degree(const Graph& g, int v) {
  Count d{0};
  for (int b : g.out_bundles(v)) d += g.bundle(b).mult;
  return d;
}

inline OutProfile out_profile(const Graph& g, int v) {
  Count d = out_degree(g, v);
  return OutProfile{g.vertex_id(v), d, d.is_zero(), d.is_omega()};
}

inline OutProfile out_profile(const Graph& g, const std::string& v) {
  return out_profile(g, g.vertex(v));
}

/// True iff v is a finite non-sink emitter (the vertices constrained by
/// saturation and by the trace equality GT1).
inline bool finite_emitter(const Graph& g, int v) {
  Count d = out_degree(g, v);
  return !d.is_zero() && !d.is_omega();
}

/// Vertices reachable from v by paths of length >= 0 (reflexive).
inline VertexSet reachable_from(const Graph& g, int v) {
  VertexSet seen = empty_set(g);
  std::vector<int> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int b : g.out_bundles(u)) {
      int w = g.bundle(b).dst;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

/// All-pairs reachability (reflexive-transitive closure of the bundle
/// relation), one BFS per vertex.
class Reachability {
 public:
  explicit Reachability(const Graph& g) {
    rows_.reserve(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
      rows_.push_back(reachable_from(g, v));
  }
  bool reaches(int v, int w) const { return rows_.at(v)[w] != 0; }
  const VertexSet& from(int v) const { return rows_.at(v); }

 private:
  std::vector<VertexSet> rows_;
};

inline bool reaches(const Graph& g, const std::string& v, const std::string& w) {
  return reachable_from(g, g.vertex(v))[g.vertex(w)] != 0;
}

// ---------------------------------------------------------------------------
// Strongly connected components
// ---------------------------------------------------------------------------

struct Scc {
  std::vector<int> vertices;  // ascending vertex index
  bool has_internal_edge = false;
};

struct SccPartition {
  std::vector<Scc> components;    // sorted by smallest vertex index
  std::vector<int> component_of;  // vertex index -> component position
};

inline SccPartition strongly_connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int next_index = 0;

  // Iterative Tarjan; frame = (vertex, position in its out-bundle list).
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    std::vector<Frame> frames{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& outs = g.out_bundles(f.v);
      if (f.next < outs.size()) {
        int w = g.bundle(outs[f.next++]).dst;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back(Frame{w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> c;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            c.push_back(w);
            if (w == f.v) break;
          }
          std::sort(c.begin(), c.end());
          comps.push_back(std::move(c));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  SccPartition part;
  part.component_of.assign(n, -1);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (int v : comps[i]) part.component_of[v] = static_cast<int>(i);
    part.components.push_back(Scc{comps[i], false});
  }
  for (const Bundle& b : g.bundles()) {
    if (part.component_of[b.src] == part.component_of[b.dst])
      part.components[part.component_of[b.src]].has_internal_edge = true;
  }
  return part;
}

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

/// A vertex-simple cycle in canonical form: the rotation starting at the
/// lexicographically least vertex id on the cycle.  Parallel edge instances
/// give distinct cycles; omega bundles contribute copies #0 and #1 only and
/// mark the cycle omega_parallel.
struct Cycle {
  std::vector<EdgeInstance> edges;
  bool omega_parallel = false;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

inline std::string instance_label(const Graph& g, const EdgeInstance& e) {
  return g.bundle(e.bundle).id + "#" + std::to_string(e.copy);
}

/// Sources of the cycle's edges, in cycle order.
inline std::vector<int> cycle_vertices(const Graph& g, const Cycle& c) {
  std::vector<int> vs;
  vs.reserve(c.edges.size());
  for (const EdgeInstance& e : c.edges) vs.push_back(g.bundle(e.bundle).src);
  return vs;
}

/// "(e,f)" with "#k" appended only for bundles of multiplicity > 1.
inline std::string cycle_label(const Graph& g, const Cycle& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (i) out += ",";
    const Bundle& b = g.bundle(c.edges[i].bundle);
    out += b.id;
    if (b.mult.is_omega() || b.mult.finite() > 1)
      out += "#" + std::to_string(c.edges[i].copy);
  }
  out += ")";
  return out;
}

/// Throws InvalidInput unless c is a well-formed vertex-simple canonical
/// cycle of g.
inline void check_cycle(const Graph& g, const Cycle& c) {
  if (c.edges.empty()) throw InvalidInput("malformed cycle: empty");
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const EdgeInstance& e = c.edges[i];
    if (e.bundle < 0 || e.bundle >= g.bundle_count())
      throw InvalidInput("malformed cycle: bad bundle index");
    const Bundle& b = g.bundle(e.bundle);
    if (!b.mult.is_omega() && e.copy >= b.mult.finite())
      throw InvalidInput("malformed cycle: copy index out of range");
    const Bundle& next = g.bundle(c.edges[(i + 1) % c.edges.size()].bundle);
    if (b.dst != next.src) throw InvalidInput("malformed cycle: edges do not compose");
    if (seen[b.src]) throw InvalidInput("malformed cycle: repeated source vertex");
    seen[b.src] = 1;
  }
}

inline constexpr std::uint64_t kDefaultCycleLimit = 1'000'000;

/// All distinct vertex-simple cycles, canonical form, deterministic order.
/// Throws CapExceeded when the count would pass `limit` (refusing analysis
/// rather than truncating).
inline std::vector<Cycle> vertex_simple_cycles(const Graph& g,
                                               std::uint64_t limit = kDefaultCycleLimit) {
  const int n = g.vertex_count();
  // Lexicographic vertex order determines canonical rotations.
  std::vector<int> lex(n);
  for (int v = 0; v < n; ++v) lex[v] = v;
  std::sort(lex.begin(), lex.end(),
            [&](int a, int b) { return g.vertex_id(a) < g.vertex_id(b); });
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[lex[i]] = i;

  std::vector<Cycle> out;
  std::vector<EdgeInstance> path;
  std::vector<char> on_path(n, 0);

  for (int s : lex) {
    // Restrict to vertices of rank >= rank[s]; prune branches that cannot
    // return to s within the restriction.
    VertexSet can_return(static_cast<std::size_t>(n), 0);
    {
      std::vector<int> stack{s};
      can_return[s] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int b : g.in_bundles(u)) {
          int w = g.bundle(b).src;
          if (!can_return[w] && rank[w] >= rank[s]) {
            can_return[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }

    auto dfs = [&](auto&& self, int u) -> void {
      for (int bi : g.out_bundles(u)) {
        const Bundle& b = g.bundle(bi);
        const int w = b.dst;
        const bool is_omega = b.mult.is_omega();
        const std::uint64_t copies = is_omega ? 2 : b.mult.finite();
        if (w == s) {
          for (std::uint64_t k = 0; k < copies; ++k) {
            if (out.size() + 1 > limit)
              throw CapExceeded("cycle enumeration: more than " +
                                std::to_string(limit) + " cycles");
            Cycle c;
            c.edges = path;
            c.edges.push_back(EdgeInstance{bi, k});
            for (const EdgeInstance& e : c.edges)
              if (g.bundle(e.bundle).mult.is_omega()) c.omega_parallel = true;
            out.push_back(std::move(c));
          }
        } else if (rank[w] > rank[s] && !on_path[w] && can_return[w]) {
          for (std::uint64_t k = 0; k < copies; ++k) {
            path.push_back(EdgeInstance{bi, k});
            on_path[w] = 1;
            self(self, w);
            on_path[w] = 0;
            path.pop_back();
          }
        }
      }
    };
    on_path[s] = 1;
    dfs(dfs, s);
    on_path[s] = 0;
  }
  return out;
}

/// Exits of cycle c into the vertex set m: edge instances whose source lies
/// on c, which are not the cycle's own edge at that vertex, and whose target
/// is in m.  A parallel copy of the cycle's own bundle counts.  An omega
/// bundle stands for infinitely many exits; it contributes one representative
/// instance (the lowest copy index not used by the cycle).
inline std::vector<EdgeInstance> loop_exits(const Graph& g, const Cycle& c,
                                            const VertexSet& m) {
  check_cycle(g, c);
  std::vector<EdgeInstance> out;
  for (const EdgeInstance& a : c.edges) {
    int v = g.bundle(a.bundle).src;
    for (int bi : g.out_bundles(v)) {
      const Bundle& b = g.bundle(bi);
      if (!m[b.dst]) continue;
      if (b.mult.is_omega()) {
        std::uint64_t rep = (bi == a.bundle && a.copy == 0) ? 1 : 0;
        out.push_back(EdgeInstance{bi, rep});
      } else {
        for (std::uint64_t k = 0; k < b.mult.finite(); ++k) {
          if (bi == a.bundle && k == a.copy) continue;
          out.push_back(EdgeInstance{bi, k});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction
// ---------------------------------------------------------------------------

/// The restriction of g to the vertex set m, keeping exactly the bundles
/// with BOTH endpoints in m.  Vertex and bundle ids are preserved, so
/// results map back to g by id.
inline Graph restriction(const Graph& g, const VertexSet& m,
                         const std::string& name) {
  Graph r(name);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (m[v]) r.add_vertex(g.vertex_id(v));
  for (const Bundle& b : g.bundles())
    if (m[b.src] && m[b.dst])
      r.add_bundle(b.id, g.vertex_id(b.src), g.vertex_id(b.dst), b.mult);
  return r;
}

/// Map a cycle of a restriction (or any id-preserving subgraph) back to g.
inline Cycle map_cycle_by_id(const Graph& from, const Graph& to, const Cycle& c) {
  Cycle out;
  out.omega_parallel = c.omega_parallel;
  for (const EdgeInstance& e : c.edges) {
    auto b = to.find_bundle(from.bundle(e.bundle).id);
    internal_check(b.has_value(), "cycle bundle missing in target graph");
    out.edges.push_back(EdgeInstance{*b, e.copy});
  }
  return out;
}

}  // namespace cka
