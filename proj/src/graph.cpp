#include "orientcycle/graph.hpp"

#include <algorithm>

namespace oc {

OrientedGraph::OrientedGraph(int n, GraphKind kind) : n_(n), kind_(kind) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    out_.assign(n, Bitset(n));
    in_.assign(n, Bitset(n));
}

void OrientedGraph::add_edge_checked(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (kind_ == GraphKind::oriented && out_[v].test(u))
        throw std::invalid_argument("2-cycle not allowed in an oriented graph");
    out_[u].set(v);
    in_[v].set(u);
}

OrientedGraph OrientedGraph::from_edges(int n, GraphKind kind,
                                        const std::vector<std::pair<int, int>>& edges) {
    OrientedGraph g(n, kind);
    for (auto [u, v] : edges) g.add_edge_checked(u, v);
    return g;
}

long long OrientedGraph::edge_count() const {
    long long e = 0;
    for (int v = 0; v < n_; ++v) e += out_degree(v);
    return e;
}

std::vector<std::pair<int, int>> OrientedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(size_t(edge_count()));
    for (int u = 0; u < n_; ++u) out_[u].for_each([&](int v) { out.emplace_back(u, v); });
    return out;
}

OrientedGraph OrientedGraph::with_edge(int u, int v) const {
    OrientedGraph g = *this;
    g.add_edge_checked(u, v);
    return g;
}

OrientedGraph OrientedGraph::without_edge(int u, int v) const {
    OrientedGraph g = *this;
    if (g.has_edge(u, v)) {
        g.out_[u].reset(v);
        g.in_[v].reset(u);
    }
    return g;
}

OrientedGraph OrientedGraph::with_edge_reversed(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("edge to reverse is absent");
    OrientedGraph g = without_edge(u, v);
    g.add_edge_checked(v, u);
    return g;
}

int min_semi_degree(const OrientedGraph& g) {
    if (g.order() == 0) throw std::invalid_argument("min_semi_degree of the empty graph");
    int best = g.order();
    for (int v = 0; v < g.order(); ++v)
        best = std::min(best, std::min(g.out_degree(v), g.in_degree(v)));
    return best;
}

Bitset out_neighborhood(const OrientedGraph& g, const Bitset& x) {
    Bitset nb(g.order());
    x.for_each([&](int v) { nb |= g.out(v); });
    return nb;
}

Bitset in_neighborhood(const OrientedGraph& g, const Bitset& x) {
    Bitset nb(g.order());
    x.for_each([&](int v) { nb |= g.in(v); });
    return nb;
}

long long edges_between(const OrientedGraph& g, const Bitset& a, const Bitset& b) {
    long long e = 0;
    a.for_each([&](int v) { e += g.out(v).count_and(b); });
    return e;
}

InducedSubgraph induced_subgraph(const OrientedGraph& g, const Bitset& keep) {
    std::vector<int> to_original = keep.to_vector();
    std::vector<int> from_original(g.order(), -1);
    for (size_t i = 0; i < to_original.size(); ++i) from_original[to_original[i]] = int(i);

    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < to_original.size(); ++i) {
        Bitset row = g.out(to_original[i]) & keep;
        row.for_each([&](int v) { edges.emplace_back(int(i), from_original[v]); });
    }
    return {OrientedGraph::from_edges(int(to_original.size()), g.kind(), edges),
            std::move(to_original), std::move(from_original)};
}

InducedSubgraph remove_vertices(const OrientedGraph& g, const Bitset& drop) {
    Bitset keep = Bitset::full(g.order());
    keep -= drop;
    return induced_subgraph(g, keep);
}

std::pair<Bitset, Bitset> degree_proportional_split(const OrientedGraph& g, Rng& rng,
                                                    double slack, int max_retries) {
    int n = g.order();
    if (n < 50)
        throw SplitError("degree_proportional_split: n < 50, too few vertices for a "
                         "proportional split");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    int na = n / 2;

    auto part_ok = [&](const Bitset& part) {
        int sz = part.count();
        for (int v = 0; v < n; ++v) {
            double want_out = double(g.out_degree(v)) / n;
            double want_in = double(g.in_degree(v)) / n;
            double got_out = double(g.out(v).count_and(part)) / sz;
            double got_in = double(g.in(v).count_and(part)) / sz;
            if (std::abs(got_out - want_out) > slack) return false;
            if (std::abs(got_in - want_in) > slack) return false;
        }
        return true;
    };

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::shuffle(order.begin(), order.end(), rng);
        Bitset a(n), b(n);
        for (int i = 0; i < n; ++i) (i < na ? a : b).set(order[i]);
        if (part_ok(a) && part_ok(b)) return {a, b};
    }
    throw SplitError("degree_proportional_split: retries exhausted (n too small or slack "
                     "too tight)");
}

}  // namespace oc
