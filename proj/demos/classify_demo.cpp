// Classify the built-in example graphs and one seeded random graph, printing
// a one-line summary per graph.  Demonstrates the main library entry points:
// stable_rank, is_type_I, has_isolated_loops, maximal_tails, and
// bounded_graph_trace.

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "cka/corpus.hpp"

int main() {
  using namespace cka;

  std::vector<Graph> graphs;
  for (const std::string& name : fixture_names()) graphs.push_back(fixture(name));
  GeneratorParams p;
  p.seed = 42;
  p.vertices = 6;
  graphs.push_back(random_graph(p));

  std::cout << std::left << std::setw(8) << "graph" << std::right
            << std::setw(4) << "|V|" << std::setw(4) << "|E|" << std::setw(10)
            << "rank" << std::setw(8) << "type I" << std::setw(10)
            << "isolated" << std::setw(7) << "tails" << std::setw(7)
            << "trace" << "\n";
  std::cout << std::string(58, '-') << "\n";

  for (const Graph& g : graphs) {
    StableRankVerdict rank = stable_rank(g);
    std::cout << std::left << std::setw(8) << g.name() << std::right
              << std::setw(4) << g.vertex_count() << std::setw(4)
              << g.bundle_count() << std::setw(10)
              << stable_rank_str(rank.value) << std::setw(8)
              << (is_type_I(g).verdict ? "yes" : "no") << std::setw(10)
              << (has_isolated_loops(g).verdict ? "yes" : "no")
              << std::setw(7) << maximal_tails(g).size() << std::setw(7)
              << (bounded_graph_trace(g).feasible ? "yes" : "no") << "\n";
  }

  std::cout << "\n";
  for (const Graph& g : graphs) {
    StableRankVerdict rank = stable_rank(g);
    std::cout << g.name() << ": stable rank " << stable_rank_str(rank.value);
    switch (rank.value) {
      case StableRank::one:
        std::cout << " (no loop has an exit)";
        break;
      case StableRank::two:
        std::cout << " (loop " << cycle_label(g, *rank.exit_cycle)
                  << " exits via " << instance_label(g, *rank.exit_edge)
                  << ")";
        break;
      case StableRank::infinity: {
        std::size_t n = set_ids(g, rank.pi_tail->vertices).size();
        std::cout << " (purely infinite simple unital quotient on " << n
                  << (n == 1 ? " vertex)" : " vertices)");
        break;
      }
    }
    std::cout << "\n";
  }
  return 0;
}
