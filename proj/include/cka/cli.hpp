#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cka/corpus.hpp"

namespace cka::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string digest_str(std::string_view data) {
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16)
     << fnv1a64(data);
  return ss.str();
}

inline std::string set_str(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const std::string& id : set_ids(g, s)) {
    if (!first) out += ",";
    out += id;
    first = false;
  }
  return out + "}";
}

inline std::string rat_str(const Rat& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline ordered_json ids_json(const Graph& g, const VertexSet& s) {
  ordered_json a = ordered_json::array();
  for (const std::string& id : set_ids(g, s)) a.push_back(id);
  return a;
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

struct Input {
  std::string path;
  std::string text;
  Graph graph;
};

inline Input load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  Input inp;
  inp.path = path;
  inp.text = ss.str();
  inp.graph = parse_graph(inp.text);
  return inp;
}

inline ordered_json envelope(const Input& in, const std::string& command) {
  ordered_json rep;
  rep["tool"] = "cka";
  rep["version"] = kVersion;
  rep["command"] = command;
  rep["input"] =
      ordered_json{{"file", in.path}, {"digest", digest_str(in.text)}};
  rep["limits"] = ordered_json{{"max_vertices", max_vertices_cap()},
                               {"cycle_limit", kDefaultCycleLimit}};
  return rep;
}

inline void emit(const Input& in, const std::string& command,
                 ordered_json result, std::ostream& out) {
  ordered_json rep = envelope(in, command);
  rep["result"] = std::move(result);
  out << rep.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Verdict renderers (shared between the single commands and `analyze`)
// ---------------------------------------------------------------------------

inline ordered_json stable_rank_result(const Graph& g,
                                       const StableRankVerdict& v) {
  ordered_json r;
  r["stable_rank"] = stable_rank_str(v.value);
  ordered_json ev;
  switch (v.value) {
    case StableRank::one:
      ev["no_exit"] = true;
      break;
    case StableRank::two:
      ev["exit_cycle"] = cycle_label(g, *v.exit_cycle);
      ev["exit_edge"] = instance_label(g, *v.exit_edge);
      break;
    case StableRank::infinity:
      ev["pi_tail"] = ids_json(g, v.pi_tail->vertices);
      break;
  }
  r["evidence"] = std::move(ev);
  return r;
}

inline void stable_rank_text(const Graph& g, const StableRankVerdict& v,
                             std::ostream& out) {
  out << "stable rank: " << stable_rank_str(v.value) << "\n";
  switch (v.value) {
    case StableRank::one:
      out << "evidence: every loop is exitless and no tail yields a purely "
             "infinite simple unital quotient\n";
      break;
    case StableRank::two:
      out << "evidence: loop " << cycle_label(g, *v.exit_cycle)
          << " has exit " << instance_label(g, *v.exit_edge) << "\n";
      break;
    case StableRank::infinity:
      out << "evidence: purely infinite simple unital quotient via tail "
          << set_str(g, v.pi_tail->vertices) << "\n";
      break;
  }
}

inline ordered_json type_i_result(const Graph& g, const TypeIReport& r) {
  ordered_json j;
  j["type_i"] = r.verdict;
  ordered_json tails = ordered_json::array();
  for (const TailRecord& rec : r.gamma_tails) {
    ordered_json t;
    t["tail"] = ids_json(g, rec.tail);
    t["clause_i"] = rec.clause_i;
    t["vertex"] = rec.clause_i_vertex
                      ? ordered_json(g.vertex_id(*rec.clause_i_vertex))
                      : ordered_json(nullptr);
    tails.push_back(std::move(t));
  }
  j["gamma_tails"] = std::move(tails);
  j["note"] = r.note;
  return j;
}

inline void type_i_text(const Graph& g, const TypeIReport& r,
                        std::ostream& out) {
  out << "type I: " << yes_no(r.verdict) << "\n";
  for (const TailRecord& rec : r.gamma_tails) {
    out << "gamma tail " << set_str(g, rec.tail) << ": clause (i) ";
    if (rec.clause_i)
      out << "holds at " << g.vertex_id(*rec.clause_i_vertex) << "\n";
    else
      out << "fails\n";
  }
  out << "note: " << r.note << "\n";
}

inline ordered_json isolated_result(const Graph& g,
                                    const IsolatedLoopsReport& r) {
  ordered_json j;
  j["isolated_loops"] = r.verdict;
  if (r.witness_vertex) {
    ordered_json w;
    w["vertex"] = g.vertex_id(*r.witness_vertex);
    w["loops"] = ordered_json::array(
        {cycle_label(g, r.witness_loops->first),
         cycle_label(g, r.witness_loops->second)});
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline void isolated_text(const Graph& g, const IsolatedLoopsReport& r,
                          std::ostream& out) {
  out << "isolated loops: " << yes_no(r.verdict) << "\n";
  if (r.witness_vertex)
    out << "witness: vertex " << g.vertex_id(*r.witness_vertex)
        << " lies on loops " << cycle_label(g, r.witness_loops->first)
        << " and " << cycle_label(g, r.witness_loops->second) << "\n";
}

inline ordered_json pi_quotient_result(const Graph& g,
                                       const std::optional<MaximalTail>& t) {
  ordered_json j;
  j["pi_quotient"] =
      t ? ordered_json{{"tail", ids_json(g, t->vertices)}} : ordered_json(nullptr);
  return j;
}

inline void pi_quotient_text(const Graph& g,
                             const std::optional<MaximalTail>& t,
                             std::ostream& out) {
  if (t)
    out << "purely infinite simple unital quotient: via tail "
        << set_str(g, t->vertices) << "\n";
  else
    out << "purely infinite simple unital quotient: none\n";
}

inline ordered_json tails_result(const Graph& g,
                                 const std::vector<MaximalTail>& ts) {
  ordered_json arr = ordered_json::array();
  for (const MaximalTail& t : ts) {
    ordered_json j;
    j["vertices"] = ids_json(g, t.vertices);
    j["class"] = t.cls == TailClass::gamma ? "gamma" : "tau";
    j["exitless_cycle"] = t.exitless_cycle
                              ? ordered_json(cycle_label(g, *t.exitless_cycle))
                              : ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return ordered_json{{"tails", std::move(arr)}};
}

inline void tails_text(const Graph& g, const std::vector<MaximalTail>& ts,
                       std::ostream& out) {
  if (ts.empty()) {
    out << "no maximal tails\n";
    return;
  }
  for (const MaximalTail& t : ts) {
    out << "tail " << set_str(g, t.vertices) << ": ";
    if (t.cls == TailClass::gamma)
      out << "gamma\n";
    else
      out << "tau (exitless cycle " << cycle_label(g, *t.exitless_cycle)
          << ")\n";
  }
}

inline ordered_json hersat_result(const Graph& g,
                                  const std::vector<VertexSet>& sets) {
  ordered_json arr = ordered_json::array();
  for (const VertexSet& s : sets) arr.push_back(ids_json(g, s));
  return ordered_json{{"sets", std::move(arr)}};
}

inline ordered_json breaking_result(const Graph& g,
                                    const std::vector<int>& vs) {
  ordered_json arr = ordered_json::array();
  for (int v : vs) arr.push_back(g.vertex_id(v));
  return ordered_json{{"breaking", std::move(arr)}};
}

inline void breaking_text(const Graph& g, const std::vector<int>& vs,
                          std::ostream& out) {
  out << "breaking vertices:";
  if (vs.empty()) out << " none";
  for (int v : vs) out << " " << g.vertex_id(v);
  out << "\n";
}

inline ordered_json trace_result(const TraceOutcome& t) {
  ordered_json j;
  j["feasible"] = t.feasible;
  if (t.feasible) {
    ordered_json w;
    for (const auto& [id, val] : t.witness) w[id] = rat_str(val);
    j["witness"] = std::move(w);
    j["certificate"] = nullptr;
  } else {
    j["witness"] = nullptr;
    ordered_json eq, le;
    for (std::size_t i = 0; i < t.eq_desc.size(); ++i)
      eq[t.eq_desc[i]] = rat_str(t.certificate.y_eq[i]);
    for (std::size_t i = 0; i < t.le_desc.size(); ++i)
      le[t.le_desc[i]] = rat_str(t.certificate.y_le[i]);
    j["certificate"] = ordered_json{{"eq", std::move(eq)}, {"le", std::move(le)}};
  }
  return j;
}

inline void trace_text(const TraceOutcome& t, std::ostream& out) {
  if (t.feasible) {
    out << "bounded graph trace: exists\n";
    for (const auto& [id, val] : t.witness)
      out << "psi(" << id << ") = " << rat_str(val) << "\n";
  } else {
    out << "bounded graph trace: none\n";
    out << "certificate:";
    for (std::size_t i = 0; i < t.eq_desc.size(); ++i)
      if (t.certificate.y_eq[i] != 0)
        out << " " << rat_str(t.certificate.y_eq[i]) << "*" << t.eq_desc[i];
    for (std::size_t i = 0; i < t.le_desc.size(); ++i)
      if (t.certificate.y_le[i] != 0)
        out << " " << rat_str(t.certificate.y_le[i]) << "*" << t.le_desc[i];
    out << "\n";
  }
}

inline ordered_json decomposition_result(const Graph& g,
                                         const Decomposition& d) {
  ordered_json j;
  j["x0"] = ids_json(g, d.x0);
  j["x"] = ids_json(g, d.x);
  j["hypothesis_ok"] = d.hypothesis_ok;
  if (d.ideal) {
    ordered_json i;
    i["vertices"] = d.ideal->graph.vertex_count();
    i["bundles"] = d.ideal->graph.bundle_count();
    i["truncated"] = d.ideal->truncated;
    StabilityReport st = verify_stable_ideal(g, d);
    i["stable"] = st.stable;
    j["ideal"] = std::move(i);
  } else {
    j["ideal"] = nullptr;
  }
  j["quotient"] =
      ordered_json{{"vertices", d.quotient.graph.vertex_count()},
                   {"bundles", d.quotient.graph.bundle_count()},
                   {"isolated_loops",
                    has_isolated_loops(d.quotient.graph).verdict}};
  return j;
}

// ---------------------------------------------------------------------------
// Self-audit (`analyze --verify`)
// ---------------------------------------------------------------------------

/// Re-validate every piece of evidence behind the analyze battery with
/// independent checks, and run the cross-theorem consistency sweep (plus the
/// brute-force oracle sweep when the graph is small enough for it).
inline std::vector<std::string> self_audit(const Graph& g) {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  StableRankVerdict v = stable_rank(g);
  switch (v.value) {
    case StableRank::one:
      for (const Cycle& c : vertex_simple_cycles(g))
        expect(loop_exits(g, c, full_set(g)).empty(),
               "rank-1 verdict but loop " + cycle_label(g, c) + " has an exit");
      break;
    case StableRank::two: {
      check_cycle(g, *v.exit_cycle);
      auto exits = loop_exits(g, *v.exit_cycle, full_set(g));
      bool found = false;
      for (const EdgeInstance& e : exits) found = found || (e == *v.exit_edge);
      expect(found, "rank-2 exit edge is not an exit of the witness cycle");
      expect(!v.pi_tail.has_value(),
             "rank-2 verdict alongside a purely infinite simple quotient");
      break;
    }
    case StableRank::infinity: {
      const MaximalTail& t = *v.pi_tail;
      expect(check_maximal_tail(g, t.vertices).ok(),
             "pi tail fails the maximal-tail axioms");
      expect(classify_tail(g, t.vertices).cls == TailClass::gamma,
             "pi tail is not gamma");
      Graph sub = restriction(g, t.vertices, "m_restr");
      expect(!vertex_simple_cycles(sub).empty(), "pi tail has no loop");
      expect(enumerate_hersat(sub).size() == 2, "pi tail is not simple");
      break;
    }
  }

  IsolatedLoopsReport iso = has_isolated_loops(g);
  if (iso.witness_vertex) {
    check_cycle(g, iso.witness_loops->first);
    check_cycle(g, iso.witness_loops->second);
    auto a = cycle_edge_at(g, iso.witness_loops->first, *iso.witness_vertex);
    auto b = cycle_edge_at(g, iso.witness_loops->second, *iso.witness_vertex);
    expect(a.has_value() && b.has_value() && !(*a == *b),
           "isolated-loops witness loops do not branch at the vertex");
  }

  TraceOutcome t = bounded_graph_trace(g);
  if (t.feasible)
    expect(validate_trace_witness(g, t.witness),
           "trace witness fails re-validation");
  else
    expect(validate_trace_certificate(g, t.certificate),
           "trace certificate fails re-validation");

  for (const std::string& f : consistency_suite(g).failures)
    failures.push_back("consistency: " + f);
  if (g.vertex_count() <= 8)
    for (const std::string& f : oracle_suite(g).failures)
      failures.push_back("oracle: " + f);
  return failures;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline void cmd_analyze(const Input& in, bool json, bool verify,
                        std::ostream& out) {
  const Graph& g = in.graph;
  StableRankVerdict rank = stable_rank(g);
  TypeIReport ti = is_type_I(g);
  IsolatedLoopsReport iso = has_isolated_loops(g);
  std::optional<MaximalTail> pi = pi_simple_unital_quotient(g);
  std::vector<MaximalTail> ts = maximal_tails(g);
  std::vector<VertexSet> hs = enumerate_hersat(g);
  std::vector<int> br = breaking_vertices(g);
  TraceOutcome tr = bounded_graph_trace(g);
  Decomposition d = stable_ideal_decomposition(g);

  std::vector<std::string> audit;
  if (verify) audit = self_audit(g);

  if (json) {
    ordered_json res;
    res["graph"] = ordered_json{{"name", g.name()},
                                {"vertices", g.vertex_count()},
                                {"bundles", g.bundle_count()}};
    ordered_json verdicts;
    verdicts["stable_rank"] = stable_rank_result(g, rank);
    verdicts["type_i"] = type_i_result(g, ti);
    verdicts["isolated_loops"] = isolated_result(g, iso);
    verdicts["pi_quotient"] = pi_quotient_result(g, pi)["pi_quotient"];
    verdicts["tails"] = tails_result(g, ts)["tails"];
    verdicts["hersat"] = hersat_result(g, hs)["sets"];
    verdicts["breaking"] = breaking_result(g, br)["breaking"];
    verdicts["trace"] = trace_result(tr);
    verdicts["decomposition"] = decomposition_result(g, d);
    res["verdicts"] = std::move(verdicts);
    if (verify) {
      res["self_audit"] = ordered_json{{"ok", audit.empty()},
                                       {"failures", audit}};
    }
    emit(in, "analyze", std::move(res), out);
  } else {
    out << "graph " << g.name() << ": " << g.vertex_count() << " vertices, "
        << g.bundle_count() << " edge bundles\n";
    stable_rank_text(g, rank, out);
    out << "type I: " << yes_no(ti.verdict) << "\n";
    isolated_text(g, iso, out);
    pi_quotient_text(g, pi, out);
    int gammas = 0;
    for (const MaximalTail& t : ts) gammas += t.cls == TailClass::gamma;
    out << "maximal tails: " << ts.size() << " (" << gammas << " gamma, "
        << ts.size() - gammas << " tau)\n";
    out << "hereditary saturated sets: " << hs.size() << "\n";
    breaking_text(g, br, out);
    out << "bounded graph trace: " << (tr.feasible ? "exists" : "none")
        << "\n";
    out << "decomposition: X0 " << set_str(g, d.x0) << ", X "
        << set_str(g, d.x) << ", quotient isolated: "
        << yes_no(has_isolated_loops(d.quotient.graph).verdict);
    if (d.ideal)
      out << ", ideal stable: " << yes_no(verify_stable_ideal(g, d).stable);
    out << "\n";
    if (!d.hypothesis_ok)
      out << "warning: the graph has a purely infinite simple unital "
             "quotient; the decomposition hypothesis fails\n";
    if (verify) {
      if (audit.empty()) {
        out << "self-audit: ok\n";
      } else {
        out << "self-audit: FAILED\n";
        for (const std::string& f : audit) out << "  " << f << "\n";
      }
    }
  }
  if (!audit.empty())
    throw InternalError("self-audit found " + std::to_string(audit.size()) +
                        " failure(s)");
}

inline void cmd_construct(const ConstructionResult& r, std::ostream& out,
                          std::optional<bool> truncated = std::nullopt) {
  out << serialize(r.graph);
  if (truncated) out << "# truncated: " << (*truncated ? "true" : "false") << "\n";
  ordered_json prov;
  for (const auto& [id, entry] : r.provenance)
    prov[id] = ordered_json{{"kind", entry.kind},
                            {"label", entry.label},
                            {"origin", entry.origin}};
  out << "# provenance: " << prov.dump() << "\n";
}

inline void cmd_decompose(const Input& in, int depth, std::ostream& out) {
  const Graph& g = in.graph;
  Decomposition d = stable_ideal_decomposition(g, depth);
  out << "X0: " << set_str(g, d.x0) << "\n";
  out << "X: " << set_str(g, d.x) << "\n";
  if (d.hypothesis_ok)
    out << "hypothesis: ok\n";
  else
    out << "hypothesis: warning, purely infinite simple unital quotient via "
           "tail "
        << set_str(g, d.pi_tail->vertices) << "\n";
  if (d.ideal) {
    out << "ideal graph: " << d.ideal->graph.vertex_count() << " vertices, "
        << d.ideal->graph.bundle_count() << " edge bundles, listing "
        << (d.ideal->truncated ? "truncated" : "complete") << "\n";
  } else {
    out << "ideal graph: none (X is empty)\n";
  }
  out << "quotient graph: " << d.quotient.graph.vertex_count()
      << " vertices, " << d.quotient.graph.bundle_count()
      << " edge bundles; isolated loops: "
      << yes_no(has_isolated_loops(d.quotient.graph).verdict) << "\n";
  if (d.ideal) {
    StabilityReport st = verify_stable_ideal(g, d);
    out << "ideal stability: " << (st.stable ? "stable" : "not stable")
        << "\n";
    for (const CycleStability& cs : st.loops) {
      out << "  loop " << cycle_label(g, cs.cycle) << ": ";
      if (cs.infinitely_many_connectors) {
        out << "infinitely many connectors";
        if (cs.omega_witness_bundle)
          out << " (omega bundle " << g.bundle(*cs.omega_witness_bundle).id
              << ")";
        else if (cs.pump_witness_vertex)
          out << " (pump at " << g.vertex_id(*cs.pump_witness_vertex) << ")";
      } else {
        out << "finitely many connectors";
      }
      out << "\n";
    }
    for (const std::string& line : st.reasoning)
      out << "  " << line << "\n";
  }
  stable_rank_text(g, stable_rank(g), out);
}

inline int cmd_check(const std::vector<std::string>& files,
                     std::ostream& out) {
  bool all_ok = true;
  for (const std::string& path : files) {
    Input in = load_input(path);
    std::vector<std::string> failures;
    for (const std::string& f : consistency_suite(in.graph).failures)
      failures.push_back("consistency: " + f);
    if (in.graph.vertex_count() <= 8) {
      for (const std::string& f : oracle_suite(in.graph).failures)
        failures.push_back("oracle: " + f);
    } else {
      out << path << ": oracle sweep skipped (more than 8 vertices)\n";
    }
    if (failures.empty()) {
      out << path << ": ok (" << in.graph.vertex_count() << " vertices, "
          << in.graph.bundle_count() << " edge bundles)\n";
    } else {
      all_ok = false;
      out << path << ": FAILED\n";
      for (const std::string& f : failures) out << "  " << f << "\n";
    }
  }
  if (!all_ok) throw InternalError("check found violated invariants");
  return 0;
}

inline std::pair<std::uint64_t, std::uint64_t> parse_prob(
    const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789/") != std::string::npos ||
      std::count(s.begin(), s.end(), '/') > 1 || s.front() == '/' ||
      s.back() == '/')
    throw InvalidInput("bad probability '" + s + "' (use num/den)");
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return {std::stoull(s), 1};
  return {std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
}

// ---------------------------------------------------------------------------
// Argument parsing and dispatch
// ---------------------------------------------------------------------------

inline int dispatch(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"structure analysis for graph C*-algebras"};
  app.require_subcommand(1);

  std::string file;
  bool json = false, verify = false;

  CLI::App* analyze = app.add_subcommand("analyze", "run the full battery");
  analyze->add_option("file", file)->required();
  analyze->add_flag("--json", json);
  analyze->add_flag("--verify", verify, "re-validate all evidence");

  // Single-verdict commands share FILE and --json.
  std::vector<std::string> simple = {"stable-rank", "type-i",   "isolated",
                                     "pi-quotient", "tails",    "hersat",
                                     "breaking",    "trace"};
  std::map<std::string, CLI::App*> simple_cmds;
  for (const std::string& name : simple) {
    CLI::App* c = app.add_subcommand(name);
    c->add_option("file", file)->required();
    c->add_flag("--json", json);
    simple_cmds[name] = c;
  }

  CLI::App* construct = app.add_subcommand("construct", "derived graphs");
  construct->require_subcommand(1);
  std::vector<std::string> g0_ids, g1_ids, x_ids, b_ids;
  int depth = 3;
  std::uint64_t omega_cap = 3;
  CLI::App* eg = construct->add_subcommand("eg", "finite approximation E_G");
  eg->add_option("file", file)->required();
  eg->add_option("--v", g0_ids, "G0 vertices")->delimiter(',');
  eg->add_option("--e", g1_ids, "G1 edge instances (id or id#k)")
      ->delimiter(',');
  CLI::App* ig = construct->add_subcommand("ideal-graph", "graph of I(X,B)");
  ig->add_option("file", file)->required();
  ig->add_option("--x", x_ids, "the hereditary saturated set X")
      ->delimiter(',')
      ->required();
  ig->add_option("--b", b_ids, "breaking subset B of X^fin_inf")
      ->delimiter(',');
  ig->add_option("--depth", depth, "family listing depth");
  ig->add_option("--omega-cap", omega_cap, "instances shown per omega position");
  CLI::App* qu = construct->add_subcommand("quotient", "graph of C*(E)/I(X,B)");
  qu->add_option("file", file)->required();
  qu->add_option("--x", x_ids, "the hereditary saturated set X")
      ->delimiter(',');
  qu->add_option("--b", b_ids, "breaking subset B of X^fin_inf")
      ->delimiter(',');

  CLI::App* dec = app.add_subcommand("decompose", "stable-ideal decomposition");
  dec->add_option("file", file)->required();
  int dec_depth = 6;
  dec->add_option("--depth", dec_depth, "ideal family listing depth");

  CLI::App* dot = app.add_subcommand("dot", "render as graphviz");
  dot->add_option("file", file)->required();

  CLI::App* rnd = app.add_subcommand("random", "deterministic random graph");
  std::uint64_t seed = 0, max_mult = 2;
  int vertices = 0;
  std::string density = "1/2", inf_prob = "1/10";
  rnd->add_option("--seed", seed)->required();
  rnd->add_option("--vertices", vertices)->required();
  rnd->add_option("--density", density, "edge probability num/den");
  rnd->add_option("--inf-prob", inf_prob, "omega probability num/den");
  rnd->add_option("--max-mult", max_mult, "maximum finite multiplicity");

  CLI::App* check = app.add_subcommand("check", "run the self-test suites");
  std::vector<std::string> files;
  check->add_option("files", files)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (analyze->parsed()) {
    cmd_analyze(load_input(file), json, verify, out);
    return 0;
  }
  for (const auto& [name, cmd] : simple_cmds) {
    if (!cmd->parsed()) continue;
    Input in = load_input(file);
    const Graph& g = in.graph;
    if (name == "stable-rank") {
      StableRankVerdict v = stable_rank(g);
      if (json) emit(in, name, stable_rank_result(g, v), out);
      else stable_rank_text(g, v, out);
    } else if (name == "type-i") {
      TypeIReport r = is_type_I(g);
      if (json) emit(in, name, type_i_result(g, r), out);
      else type_i_text(g, r, out);
    } else if (name == "isolated") {
      IsolatedLoopsReport r = has_isolated_loops(g);
      if (json) emit(in, name, isolated_result(g, r), out);
      else isolated_text(g, r, out);
    } else if (name == "pi-quotient") {
      auto t = pi_simple_unital_quotient(g);
      if (json) emit(in, name, pi_quotient_result(g, t), out);
      else pi_quotient_text(g, t, out);
    } else if (name == "tails") {
      auto ts = maximal_tails(g);
      if (json) emit(in, name, tails_result(g, ts), out);
      else tails_text(g, ts, out);
    } else if (name == "hersat") {
      auto hs = enumerate_hersat(g);
      if (json) {
        emit(in, name, hersat_result(g, hs), out);
      } else {
        for (const VertexSet& s : hs) out << set_str(g, s) << "\n";
      }
    } else if (name == "breaking") {
      auto vs = breaking_vertices(g);
      if (json) emit(in, name, breaking_result(g, vs), out);
      else breaking_text(g, vs, out);
    } else if (name == "trace") {
      TraceOutcome t = bounded_graph_trace(g);
      if (json) emit(in, name, trace_result(t), out);
      else trace_text(t, out);
    }
    return 0;
  }
  if (eg->parsed()) {
    Input in = load_input(file);
    cmd_construct(build_subgraph(in.graph, make_set(in.graph, g0_ids), g1_ids),
                  out);
    return 0;
  }
  if (ig->parsed()) {
    Input in = load_input(file);
    ConstructionResult r =
        build_ideal_graph(in.graph, make_set(in.graph, x_ids),
                          make_set(in.graph, b_ids), depth, omega_cap);
    cmd_construct(r, out, r.truncated);
    return 0;
  }
  if (qu->parsed()) {
    Input in = load_input(file);
    cmd_construct(
        build_quotient_graph(in.graph,
                             IdealSpec{make_set(in.graph, x_ids),
                                       make_set(in.graph, b_ids)}),
        out);
    return 0;
  }
  if (dec->parsed()) {
    cmd_decompose(load_input(file), dec_depth, out);
    return 0;
  }
  if (dot->parsed()) {
    out << to_dot(load_input(file).graph);
    return 0;
  }
  if (rnd->parsed()) {
    GeneratorParams p;
    p.seed = seed;
    p.vertices = vertices;
    std::tie(p.density_num, p.density_den) = parse_prob(density);
    std::tie(p.inf_num, p.inf_den) = parse_prob(inf_prob);
    p.max_mult = max_mult;
    out << serialize(random_graph(p));
    return 0;
  }
  if (check->parsed()) return cmd_check(files, out);
  return 1;  // unreachable: require_subcommand guarantees a branch
}

/// Entry point used by the binary and the tests.  Maps the library's
/// exception taxonomy onto process exit codes: 1 for bad input or usage,
/// 2 for refused-by-cap analyses, 3 for violated internal invariants.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cka::cli
