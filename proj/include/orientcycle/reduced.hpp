#pragma once

#include <optional>
#include <vector>

#include "orientcycle/graph.hpp"
#include "orientcycle/rng.hpp"

namespace oc {

// A reduced oriented graph R together with a directed Hamilton cycle F on it.
// All traverse/walk machinery works in F-position space: cluster i is the
// i-th vertex along F, succ/pred follow F.
struct ReducedGraph {
    OrientedGraph R;
    std::vector<int> F;  // Hamilton cycle as a vertex sequence of R
    double alpha = 0.0;
    std::vector<int> pos_of;  // vertex id -> position in F

    ReducedGraph() = default;
    ReducedGraph(OrientedGraph r, std::vector<int> f, double a);

    int size() const { return R.order(); }
    int succ(int i) const { return (i + 1) % size(); }
    int pred(int i) const { return (i + size() - 1) % size(); }
    bool edge(int i, int j) const { return R.has_edge(F[i], F[j]); }
};

// Edges (V, V_{i1}), (V_{i1-1}, V_{i2}), ..., (V_{it-1}, V'); the length is
// the number of edges minus one (a single edge V->V' has length 0).
struct SkewedTraverse {
    int from = -1, to = -1;                 // positions
    std::vector<std::pair<int, int>> edges;  // position pairs
    int length() const { return int(edges.size()) - 1; }
};

// Minimal traverse via BFS over shifted layers; nullopt when none exists.
std::optional<SkewedTraverse> skewed_traverse(const ReducedGraph& rg, int from, int to);

// Same search but only expands through hop-base clusters with supply[base]>0
// (including `from` itself); used by the balancing engine.
std::optional<SkewedTraverse> skewed_traverse_gated(const ReducedGraph& rg, int from, int to,
                                                    const std::vector<int>& supply);

// Independent layered recomputation of traverse distances per the set
// recurrence A_{i+1} = A_i ∪ N+(A_i^-); dist[v] = -1 when unreachable.
std::vector<int> traverse_distance_layers(const ReducedGraph& rg, int from);

bool validate_traverse(const ReducedGraph& rg, const SkewedTraverse& t);

struct ShiftedWalk {
    int from = -1, to = -1;
    std::vector<int> walk;  // positions, from == walk.front(), to == walk.back()
    int cycles_traversed = 0;
};

ShiftedWalk expand_traverse(const ReducedGraph& rg, const SkewedTraverse& t);
// Convenience: minimal traverse then expansion. Throws if no traverse exists.
ShiftedWalk shifted_walk(const ReducedGraph& rg, int from, int to);

bool validate_shifted_walk(const ReducedGraph& rg, const ShiftedWalk& w);

enum class ExpansionMode { exact, sampled };

struct ExpansionReport {
    enum class Status { certified, no_counterexample_found, counterexample };
    Status status = Status::no_counterexample_found;
    std::optional<Bitset> witness;  // violating X
    uint64_t subsets_checked = 0;
};

// Checks |N+(X)| >= |X| + alpha*|R|/2 for all X with 0 < |X| <= (1-alpha)|R|.
// Exact mode (|R| <= 20) enumerates subsets in Gray-code order; sampled mode
// is a falsifier only and never certifies.
ExpansionReport check_expansion(const OrientedGraph& r, double alpha, ExpansionMode mode,
                                Rng* rng = nullptr, int samples = 2000);

// Independent lexicographic enumeration (from-scratch neighbourhoods),
// optionally parallelised over high-bit blocks. Exact mode only.
ExpansionReport check_expansion_exact_lex(const OrientedGraph& r, double alpha, int threads = 1);

struct SparsifyResult {
    OrientedGraph graph;
    int delta_plus = 0, delta_minus = 0, delta0 = 0;
    int trials = 0;
    // Per Lemma-5-style accounting: best min over vertices of
    // min(out,in)-retained fraction relative to the digraph's degrees.
    double retained_fraction = 0.0;
};

// Keep one direction of every 2-cycle uniformly at random; return the best of
// `trials` samples by the retained min-semi-degree.
SparsifyResult sparsify_to_oriented(const OrientedGraph& digraph, Rng& rng, int trials);

}  // namespace oc
