#include "orientcycle/extremal.hpp"

#include <array>
#include <sstream>

#include "orientcycle/solver.hpp"

namespace oc {

OrientedGraph rotational_tournament(int q) {
    if (q < 1 || q % 2 == 0) throw std::invalid_argument("rotational tournament needs odd q >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < q; ++i)
        for (int j = 1; j <= (q - 1) / 2; ++j) edges.emplace_back(i, (i + j) % q);
    return OrientedGraph::from_edges(q, GraphKind::oriented, edges);
}

ExtremalWitness haggkvist_graph(int m) {
    if (m < 1) throw std::invalid_argument("haggkvist_graph needs m >= 1");
    int p = 2 * m + 1;
    int n = 8 * m + 4;
    auto a0 = 0, b0 = p, c0 = 2 * p, d0 = 3 * p;

    std::vector<std::pair<int, int>> edges;
    // A and C are rotational tournaments.
    for (int base : {a0, c0})
        for (int i = 0; i < p; ++i)
            for (int j = 1; j <= m; ++j) edges.emplace_back(base + i, base + (i + j) % p);
    // Complete A->B, B->C, C->D, D->A.
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            edges.emplace_back(a0 + i, b0 + j);
            edges.emplace_back(b0 + i, c0 + j);
            edges.emplace_back(c0 + i, d0 + j);
            edges.emplace_back(d0 + i, a0 + j);
        }
    // B<->D near-regular bipartite tournament: B_i -> D_j iff (j-i) mod p < m.
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            if (((j - i) % p + p) % p < m)
                edges.emplace_back(b0 + i, d0 + j);
            else
                edges.emplace_back(d0 + j, b0 + i);
        }

    ExtremalWitness w;
    w.graph = OrientedGraph::from_edges(n, GraphKind::oriented, edges);
    w.m = m;
    w.part_a = Bitset(n);
    w.part_b = Bitset(n);
    w.part_c = Bitset(n);
    w.part_d = Bitset(n);
    for (int i = 0; i < p; ++i) {
        w.part_a.set(a0 + i);
        w.part_b.set(b0 + i);
        w.part_c.set(c0 + i);
        w.part_d.set(d0 + i);
    }
    return w;
}

std::vector<std::string> audit_witness(const ExtremalWitness& w) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& msg) { bad.push_back(msg); };
    const OrientedGraph& g = w.graph;
    int m = w.m;
    int p = 2 * m + 1;

    if (g.order() != 8 * m + 4) fail("order != 8m+4");
    for (auto* part : {&w.part_a, &w.part_b, &w.part_c, &w.part_d})
        if (part->count() != p) fail("part size != 2m+1");

    auto tournament_regular = [&](const Bitset& part) {
        bool ok = true;
        part.for_each([&](int u) {
            if (g.out(u).count_and(part) != m || g.in(u).count_and(part) != m) ok = false;
            part.for_each([&](int v) {
                if (u < v && !g.has_edge(u, v) && !g.has_edge(v, u)) ok = false;
            });
        });
        return ok;
    };
    if (!tournament_regular(w.part_a)) fail("A is not a regular tournament");
    if (!tournament_regular(w.part_c)) fail("C is not a regular tournament");
    if (edges_between(g, w.part_b, w.part_b) != 0) fail("B is not independent");
    if (edges_between(g, w.part_d, w.part_d) != 0) fail("D is not independent");

    auto complete_to = [&](const Bitset& x, const Bitset& y) {
        return edges_between(g, x, y) == (long long)p * p;
    };
    if (!complete_to(w.part_a, w.part_b)) fail("A->B incomplete");
    if (!complete_to(w.part_b, w.part_c)) fail("B->C incomplete");
    if (!complete_to(w.part_c, w.part_d)) fail("C->D incomplete");
    if (!complete_to(w.part_d, w.part_a)) fail("D->A incomplete");

    // B<->D bipartite tournament, per-vertex in/out difference <= 1.
    bool bd_ok = true;
    w.part_b.for_each([&](int u) {
        int out = g.out(u).count_and(w.part_d);
        int in = g.in(u).count_and(w.part_d);
        if (out + in != p || std::abs(out - in) > 1) bd_ok = false;
        if (out < m) bad.push_back("a B vertex sends fewer than m edges to D");
    });
    w.part_d.for_each([&](int u) {
        int out = g.out(u).count_and(w.part_b);
        int in = g.in(u).count_and(w.part_b);
        if (out + in != p || std::abs(out - in) > 1) bd_ok = false;
    });
    if (!bd_ok) fail("B<->D is not a near-regular bipartite tournament");

    long long want_edges = 2LL * p * m + 4LL * p * p + (long long)p * p;
    if (g.edge_count() != want_edges) {
        std::ostringstream os;
        os << "edge count " << g.edge_count() << " != " << want_edges;
        fail(os.str());
    }
    return bad;
}

bool quotient_alternating_reaches_A(const ExtremalWitness& w) {
    const std::array<const Bitset*, 4> parts = {&w.part_a, &w.part_b, &w.part_c, &w.part_d};
    bool quot[4][4] = {};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) quot[x][y] = edges_between(w.graph, *parts[x], *parts[y]) > 0;

    // States (part, next edge orientation); 0 = forward, 1 = backward.
    bool seen[4][2] = {};
    std::vector<std::pair<int, int>> stack = {{1, 0}, {1, 1}};  // start in B either way
    seen[1][0] = seen[1][1] = true;
    bool reached_a = false;
    while (!stack.empty()) {
        auto [x, dir] = stack.back();
        stack.pop_back();
        for (int y = 0; y < 4; ++y) {
            bool edge = (dir == 0) ? quot[x][y] : quot[y][x];
            if (!edge) continue;
            if (y == 0) reached_a = true;
            if (!seen[y][1 - dir]) {
                seen[y][1 - dir] = true;
                stack.emplace_back(y, 1 - dir);
            }
        }
    }
    return reached_a;
}

ExtremalReport verify_extremal(const ExtremalWitness& w, bool run_solver, uint64_t node_budget,
                               int threads) {
    ExtremalReport rep;
    rep.n = w.graph.order();
    rep.delta0 = min_semi_degree(w.graph);
    rep.delta0_expected = 3 * w.m + 1;
    rep.delta0_ok = rep.delta0 == rep.delta0_expected && 8 * rep.delta0 == 3 * rep.n - 4;
    if (!run_solver) return rep;

    SearchOptions opt;
    opt.node_budget = node_budget == 0 ? ~uint64_t(0) : node_budget;
    opt.threads = threads;
    opt.rotate_pattern = true;

    EmbeddingProblem anti;
    anti.host = &w.graph;
    anti.pattern = Pattern::antidirected(rep.n);
    anti.mode = SearchMode::cycle;
    SearchResult anti_res = find_pattern_cycle(anti, opt);
    rep.solver_ran = true;
    rep.anti_hamilton_exists = anti_res.verdict == Verdict::found;
    rep.nodes += anti_res.nodes;
    rep.exhaustive = anti_res.verdict != Verdict::unknown;

    LongestResult longest = longest_anti_directed_cycle(w.graph, opt);
    rep.longest_anti_directed = longest.length;
    rep.nodes += longest.nodes;
    rep.exhaustive = rep.exhaustive && longest.exact;

    EmbeddingProblem std_cycle;
    std_cycle.host = &w.graph;
    std_cycle.pattern = Pattern::standard(rep.n);
    std_cycle.mode = SearchMode::cycle;
    SearchResult std_res = find_pattern_cycle(std_cycle, opt);
    rep.standard_hamilton_exists = std_res.verdict == Verdict::found;
    rep.nodes += std_res.nodes;
    rep.exhaustive = rep.exhaustive && std_res.verdict != Verdict::unknown;
    return rep;
}

}  // namespace oc
