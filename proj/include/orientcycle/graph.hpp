#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orientcycle/bitset.hpp"
#include "orientcycle/rng.hpp"

namespace oc {

enum class GraphKind { oriented, digraph };

// Loop-free digraph with dense bitmask adjacency. kind=oriented additionally
// forbids 2-cycles (at most one edge per vertex pair). Graphs are immutable
// after construction; edits return new graphs.
class OrientedGraph {
public:
    OrientedGraph() : OrientedGraph(0, GraphKind::oriented) {}
    OrientedGraph(int n, GraphKind kind);

    static OrientedGraph from_edges(int n, GraphKind kind,
                                    const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    GraphKind kind() const { return kind_; }

    bool has_edge(int u, int v) const { return out_[u].test(v); }
    const Bitset& out(int v) const { return out_[v]; }
    const Bitset& in(int v) const { return in_[v]; }
    int out_degree(int v) const { return out_[v].count(); }
    int in_degree(int v) const { return in_[v].count(); }

    long long edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // sorted (u, v)

    OrientedGraph with_edge(int u, int v) const;
    OrientedGraph with_edge_reversed(int u, int v) const;
    OrientedGraph without_edge(int u, int v) const;

private:
    void add_edge_checked(int u, int v);

    int n_;
    GraphKind kind_;
    std::vector<Bitset> out_, in_;
};

int min_semi_degree(const OrientedGraph& g);

Bitset out_neighborhood(const OrientedGraph& g, const Bitset& x);
Bitset in_neighborhood(const OrientedGraph& g, const Bitset& x);

// Number of A-B edges (a in A, b in B, edge a->b).
long long edges_between(const OrientedGraph& g, const Bitset& a, const Bitset& b);

struct InducedSubgraph {
    OrientedGraph graph;
    std::vector<int> to_original;    // new id -> old id
    std::vector<int> from_original;  // old id -> new id, -1 if dropped
};

InducedSubgraph induced_subgraph(const OrientedGraph& g, const Bitset& keep);
InducedSubgraph remove_vertices(const OrientedGraph& g, const Bitset& drop);

struct SplitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Random near-halving (A, B) such that for every vertex both the in- and
// out-degree proportion into each part is within `slack` of the global
// proportion. Retries up to max_retries, then throws SplitError.
std::pair<Bitset, Bitset> degree_proportional_split(const OrientedGraph& g, Rng& rng,
                                                    double slack, int max_retries = 1000);

}  // namespace oc
