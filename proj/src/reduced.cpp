#include "orientcycle/reduced.hpp"

#include <algorithm>
#include <deque>
#include <thread>

namespace oc {

ReducedGraph::ReducedGraph(OrientedGraph r, std::vector<int> f, double a)
    : R(std::move(r)), F(std::move(f)), alpha(a) {
    int m = R.order();
    if (int(F.size()) != m) throw std::invalid_argument("F must list every cluster once");
    pos_of.assign(size_t(m), -1);
    for (int i = 0; i < m; ++i) {
        int v = F[i];
        if (v < 0 || v >= m || pos_of[v] != -1)
            throw std::invalid_argument("F is not a permutation of the clusters");
        pos_of[v] = i;
    }
    for (int i = 0; i < m; ++i)
        if (!R.has_edge(F[i], F[(i + 1) % m]))
            throw std::invalid_argument("F is not a directed Hamilton cycle of R");
}

namespace {

// Out-neighbourhoods in F-position space.
std::vector<Bitset> position_out(const ReducedGraph& rg) {
    int m = rg.size();
    std::vector<Bitset> out(size_t(m), Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && rg.edge(i, j)) out[i].set(j);
    return out;
}

std::optional<SkewedTraverse> traverse_bfs(const ReducedGraph& rg, int from, int to,
                                           const std::vector<int>* supply) {
    int m = rg.size();
    if (from == to) throw std::invalid_argument("skewed traverse endpoints must differ");
    if (from < 0 || from >= m || to < 0 || to >= m)
        throw std::invalid_argument("traverse endpoint out of range");
    if (supply && (*supply)[from] < 1) return std::nullopt;

    std::vector<Bitset> out = position_out(rg);
    std::vector<int> dist(size_t(m), -1), parent(size_t(m), -1);
    std::deque<int> queue;
    out[from].for_each([&](int x) {
        dist[x] = 0;
        queue.push_back(x);
    });
    while (dist[to] == -1 && !queue.empty()) {
        int y = queue.front();
        queue.pop_front();
        int base = rg.pred(y);
        if (supply && (*supply)[base] < 1) continue;
        out[base].for_each([&](int x) {
            if (dist[x] != -1) return;
            dist[x] = dist[y] + 1;
            parent[x] = y;
            queue.push_back(x);
        });
    }
    if (dist[to] == -1) return std::nullopt;

    std::vector<int> chain;  // intermediates y_0 .. y_{t-1}, then `to`
    for (int x = to; x != -1; x = parent[x]) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());

    SkewedTraverse t;
    t.from = from;
    t.to = to;
    t.edges.emplace_back(from, chain.front());
    for (size_t k = 1; k < chain.size(); ++k)
        t.edges.emplace_back(rg.pred(chain[k - 1]), chain[k]);
    return t;
}

}  // namespace

std::optional<SkewedTraverse> skewed_traverse(const ReducedGraph& rg, int from, int to) {
    return traverse_bfs(rg, from, to, nullptr);
}

std::optional<SkewedTraverse> skewed_traverse_gated(const ReducedGraph& rg, int from, int to,
                                                    const std::vector<int>& supply) {
    return traverse_bfs(rg, from, to, &supply);
}

std::vector<int> traverse_distance_layers(const ReducedGraph& rg, int from) {
    int m = rg.size();
    std::vector<Bitset> out = position_out(rg);
    std::vector<int> dist(size_t(m), -1);
    Bitset reach = out[from];
    reach.for_each([&](int x) { dist[x] = 0; });
    for (int level = 1; level <= m; ++level) {
        Bitset shifted(m);  // A^-: positions whose F-successor is reachable
        reach.for_each([&](int y) { shifted.set(rg.pred(y)); });
        Bitset next = reach;
        shifted.for_each([&](int b) { next |= out[b]; });
        if (next == reach) break;
        next.for_each([&](int x) {
            if (dist[x] == -1) dist[x] = level;
        });
        reach = next;
    }
    return dist;
}

bool validate_traverse(const ReducedGraph& rg, const SkewedTraverse& t) {
    if (t.edges.empty()) return false;
    if (t.edges.front().first != t.from || t.edges.back().second != t.to) return false;
    std::vector<char> seen_first(size_t(rg.size()), 0);
    for (size_t k = 0; k < t.edges.size(); ++k) {
        auto [x, y] = t.edges[k];
        if (!rg.edge(x, y)) return false;
        if (seen_first[x]++) return false;  // each cluster heads at most one edge
        if (k + 1 < t.edges.size() && t.edges[k + 1].first != rg.pred(y)) return false;
    }
    std::vector<int> dist = traverse_distance_layers(rg, t.from);
    return dist[t.to] == t.length();
}

ShiftedWalk expand_traverse(const ReducedGraph& rg, const SkewedTraverse& t) {
    int m = rg.size();
    ShiftedWalk w;
    w.from = t.from;
    w.to = t.to;
    w.cycles_traversed = t.length();
    w.walk.push_back(t.from);
    for (size_t k = 0; k < t.edges.size(); ++k) {
        int y = t.edges[k].second;
        w.walk.push_back(y);
        if (k + 1 < t.edges.size()) {
            // wind all the way around F from y to pred(y)
            for (int step = 1; step < m; ++step) w.walk.push_back((y + step) % m);
        }
    }
    return w;
}

ShiftedWalk shifted_walk(const ReducedGraph& rg, int from, int to) {
    auto t = skewed_traverse(rg, from, to);
    if (!t) throw std::runtime_error("no skewed traverse exists between the given clusters");
    return expand_traverse(rg, *t);
}

bool validate_shifted_walk(const ReducedGraph& rg, const ShiftedWalk& w) {
    if (w.walk.size() < 2) return false;
    if (w.walk.front() != w.from || w.walk.back() != w.to) return false;
    for (size_t i = 0; i + 1 < w.walk.size(); ++i)
        if (!rg.edge(w.walk[i], w.walk[i + 1])) return false;
    if (int(w.walk.size()) - 1 != w.cycles_traversed * rg.size() + 1) return false;
    std::vector<int> visits(size_t(rg.size()), 0);
    for (size_t i = 1; i + 1 < w.walk.size(); ++i) visits[size_t(w.walk[i])]++;
    for (int c : visits)
        if (c != w.cycles_traversed) return false;
    return true;
}

namespace {

bool violates(int nplus, int size, double alpha, int m) {
    return double(nplus) < double(size) + alpha * m / 2.0 - 1e-9;
}

bool qualifies(int size, double alpha, int m) {
    return size > 0 && double(size) <= (1.0 - alpha) * m + 1e-9;
}

}  // namespace

ExpansionReport check_expansion(const OrientedGraph& r, double alpha, ExpansionMode mode,
                                Rng* rng, int samples) {
    int m = r.order();
    ExpansionReport rep;

    if (mode == ExpansionMode::exact) {
        if (m > 20)
            throw std::invalid_argument("exact expansion check is limited to |R| <= 20");
        std::vector<std::vector<int>> out(size_t(m));
        for (int v = 0; v < m; ++v) out[v] = r.out(v).to_vector();

        std::vector<int> cover(size_t(m), 0);
        std::vector<char> member(size_t(m), 0);
        int size = 0, nnz = 0;
        uint64_t total = uint64_t(1) << m;
        for (uint64_t i = 1; i < total; ++i) {
            int bit = __builtin_ctzll(i);
            if (!member[bit]) {
                member[bit] = 1;
                ++size;
                for (int v : out[bit])
                    if (cover[v]++ == 0) ++nnz;
            } else {
                member[bit] = 0;
                --size;
                for (int v : out[bit])
                    if (--cover[v] == 0) --nnz;
            }
            if (!qualifies(size, alpha, m)) continue;
            ++rep.subsets_checked;
            if (violates(nnz, size, alpha, m)) {
                Bitset x(m);
                for (int v = 0; v < m; ++v)
                    if (member[v]) x.set(v);
                rep.status = ExpansionReport::Status::counterexample;
                rep.witness = x;
                return rep;
            }
        }
        rep.status = ExpansionReport::Status::certified;
        return rep;
    }

    // Sampled falsifier: random subsets plus greedily grown low-expansion
    // candidates seeded at every vertex.
    Rng local = rng ? Rng(*rng) : make_rng(0);
    Rng& gen = rng ? *rng : local;
    auto try_set = [&](const Bitset& x) -> bool {
        int size = x.count();
        if (!qualifies(size, alpha, m)) return false;
        ++rep.subsets_checked;
        int nplus = out_neighborhood(r, x).count();
        if (violates(nplus, size, alpha, m)) {
            rep.status = ExpansionReport::Status::counterexample;
            rep.witness = x;
            return true;
        }
        return false;
    };

    for (int seed = 0; seed < m; ++seed) {
        Bitset x(m);
        x.set(seed);
        if (try_set(x)) return rep;
        for (int grow = 1; grow < m - 1; ++grow) {
            int best = -1, best_n = m + 1;
            for (int u = 0; u < m; ++u) {
                if (x.test(u)) continue;
                Bitset trial = x;
                trial.set(u);
                int nplus = out_neighborhood(r, trial).count();
                if (nplus < best_n) {
                    best_n = nplus;
                    best = u;
                }
            }
            if (best < 0) break;
            x.set(best);
            if (try_set(x)) return rep;
        }
    }
    for (int i = 0; i < samples; ++i) {
        int size = uniform_int(gen, 1, std::max(1, int((1.0 - alpha) * m)));
        Bitset x(m);
        while (x.count() < size) x.set(uniform_int(gen, 0, m - 1));
        if (try_set(x)) return rep;
    }
    rep.status = ExpansionReport::Status::no_counterexample_found;
    return rep;
}

ExpansionReport check_expansion_exact_lex(const OrientedGraph& r, double alpha, int threads) {
    int m = r.order();
    if (m > 20) throw std::invalid_argument("exact expansion check is limited to |R| <= 20");
    uint64_t total = uint64_t(1) << m;
    int nthreads = std::max(1, threads);

    std::vector<ExpansionReport> reps(size_t(nthreads));
    std::vector<std::thread> pool;
    auto run_block = [&](int ti, uint64_t lo, uint64_t hi) {
        ExpansionReport& rep = reps[size_t(ti)];
        for (uint64_t mask = lo; mask < hi; ++mask) {
            int size = __builtin_popcountll(mask);
            if (!qualifies(size, alpha, m)) continue;
            ++rep.subsets_checked;
            Bitset x(m);
            for (int v = 0; v < m; ++v)
                if (mask >> v & 1) x.set(v);
            int nplus = out_neighborhood(r, x).count();
            if (violates(nplus, size, alpha, m)) {
                rep.status = ExpansionReport::Status::counterexample;
                rep.witness = x;
                return;
            }
        }
        rep.status = ExpansionReport::Status::certified;
    };

    if (nthreads == 1) {
        run_block(0, 1, total);
    } else {
        uint64_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            uint64_t lo = std::max<uint64_t>(1, uint64_t(t) * chunk);
            uint64_t hi = std::min(total, uint64_t(t + 1) * chunk);
            pool.emplace_back(run_block, t, lo, std::max(lo, hi));
        }
        for (auto& th : pool) th.join();
    }

    ExpansionReport merged;
    merged.status = ExpansionReport::Status::certified;
    for (auto& rep : reps) {
        merged.subsets_checked += rep.subsets_checked;
        if (rep.status == ExpansionReport::Status::counterexample &&
            merged.status != ExpansionReport::Status::counterexample) {
            merged.status = rep.status;
            merged.witness = rep.witness;
        }
    }
    return merged;
}

SparsifyResult sparsify_to_oriented(const OrientedGraph& digraph, Rng& rng, int trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    int n = digraph.order();

    auto min_deg = [&](const OrientedGraph& g, int v) {
        return std::min(g.out_degree(v), g.in_degree(v));
    };

    SparsifyResult best;
    best.retained_fraction = -1.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                bool uv = digraph.has_edge(u, v), vu = digraph.has_edge(v, u);
                if (uv && vu) {
                    if (rng() & 1)
                        edges.emplace_back(u, v);
                    else
                        edges.emplace_back(v, u);
                } else if (uv) {
                    edges.emplace_back(u, v);
                } else if (vu) {
                    edges.emplace_back(v, u);
                }
            }
        OrientedGraph g = OrientedGraph::from_edges(n, GraphKind::oriented, edges);
        double frac = 1.0;
        for (int v = 0; v < n; ++v) {
            int denom = std::max(1, min_deg(digraph, v));
            frac = std::min(frac, double(min_deg(g, v)) / denom);
        }
        int d0 = n > 0 ? min_semi_degree(g) : 0;
        if (frac > best.retained_fraction ||
            (frac == best.retained_fraction && d0 > best.delta0)) {
            best.graph = g;
            best.retained_fraction = frac;
            best.delta0 = d0;
        }
    }
    best.trials = trials;
    int dp = best.graph.order(), dm = best.graph.order();
    for (int v = 0; v < n; ++v) {
        dp = std::min(dp, best.graph.out_degree(v));
        dm = std::min(dm, best.graph.in_degree(v));
    }
    best.delta_plus = n > 0 ? dp : 0;
    best.delta_minus = n > 0 ? dm : 0;
    return best;
}

}  // namespace oc
