#include "orientcycle/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oc {

namespace {

int mod_pos(int i, int n) { return ((i % n) + n) % n; }

// Directed edge of R* between two slots (clusters >= 0, exceptional < 0).
bool star_edge(const Walk& w, int x, int y) {
    if (x >= 0 && y >= 0) return w.rg->edge(x, y);
    if (x >= 0 && y < 0) {
        if (!w.rstar) return false;
        return w.rstar->in_links[size_t(-y - 1)].test(x);
    }
    if (x < 0 && y >= 0) {
        if (!w.rstar) return false;
        return w.rstar->out_links[size_t(-x - 1)].test(y);
    }
    return false;
}

bool walk_edge_ok(const Walk& w, int pos) {
    int x = w.slot(pos), y = w.slot(pos + 1);
    return w.pattern.forward(pos) ? star_edge(w, x, y) : star_edge(w, y, x);
}

// True when the walk edge at `pos` lies on an F-edge of the reduced graph.
bool edge_on_f(const Walk& w, int pos) {
    int x = w.slot(pos), y = w.slot(pos + 1);
    if (x < 0 || y < 0) return false;
    const ReducedGraph& rg = *w.rg;
    return w.pattern.forward(pos) ? y == rg.succ(x) : x == rg.succ(y);
}

void check_no_registry_overlap(const Walk& w, int site, int zone_len, int consumed_site) {
    int n = w.size();
    auto touches = [&](int p, int item_len) {
        // Rewrite changes offsets [1, zone_len-1] from `site`; the item needs
        // slots [p, p+item_len].
        int off = mod_pos(p - site, n);
        if (off == 0) return item_len >= 1 && zone_len >= 2 && item_len >= 1 && p != consumed_site;
        if (off <= zone_len - 1) return true;
        return off + item_len >= n + 1;
    };
    for (int c = 0; c < w.rg->size(); ++c) {
        for (int p : w.neutral_sites[size_t(c)])
            if (p != consumed_site && touches(p, 2))
                throw std::logic_error("run rewrite would clobber a registered neutral pair");
        for (int p : w.run_sites[size_t(c)])
            if (p != consumed_site && touches(p, w.run_len))
                throw std::logic_error("run rewrite would clobber a registered long run");
    }
}

// Replace slots at positions site+1 .. site+len-1 by section[1..len-1];
// endpoints must agree. Updates the per-cluster counts.
void write_section(Walk& w, int site, const std::vector<int>& section) {
    int n = w.size();
    int len = int(section.size()) - 1;
    if (w.slot(site) != section.front() || w.slot(site + len) != section.back())
        throw std::logic_error("section endpoints do not match the walk");
    for (int off = 1; off < len; ++off) {
        int pos = mod_pos(site + off, n);
        int old = w.slots[size_t(pos)];
        if (old >= 0)
            w.a[size_t(old)]--;
        else
            w.exceptional_uses[size_t(-old - 1)]--;
        int nu = section[size_t(off)];
        w.slots[size_t(pos)] = nu;
        if (nu >= 0)
            w.a[size_t(nu)]++;
        else
            w.exceptional_uses[size_t(-nu - 1)]++;
    }
}

void erase_value(std::vector<int>& v, int value) {
    v.erase(std::remove(v.begin(), v.end(), value), v.end());
}

}  // namespace

RStar build_r_star(const ReducedGraph& rg, const OrientedGraph& g,
                   const std::vector<Bitset>& clusters, const std::vector<int>& exceptional,
                   double c) {
    if (c <= 0) throw std::invalid_argument("link threshold c must be positive");
    if (int(clusters.size()) != rg.size())
        throw std::invalid_argument("one cluster per reduced vertex required");

    Bitset covered(g.order());
    int m = clusters.empty() ? 0 : clusters[0].count();
    for (const Bitset& cl : clusters) {
        if (cl.count() != m) throw std::invalid_argument("clusters must be equal-sized");
        if (covered.intersects(cl)) throw std::invalid_argument("clusters must be disjoint");
        covered |= cl;
    }
    for (int v : exceptional) {
        if (v < 0 || v >= g.order()) throw std::invalid_argument("exceptional vertex out of range");
        if (covered.test(v))
            throw std::invalid_argument("exceptional vertices must be outside the clusters");
    }

    RStar star;
    star.rg = &rg;
    star.cluster_size = m;
    star.c = c;
    star.exceptional = exceptional;
    double thresh = c * m;
    for (int v : exceptional) {
        Bitset in_l(rg.size()), out_l(rg.size());
        for (int i = 0; i < rg.size(); ++i) {
            if (double(g.out(v).count_and(clusters[size_t(i)])) >= thresh - 1e-9) out_l.set(i);
            if (double(g.in(v).count_and(clusters[size_t(i)])) >= thresh - 1e-9) in_l.set(i);
        }
        star.out_links.push_back(out_l);
        star.in_links.push_back(in_l);
    }
    return star;
}

Walk make_walk(const ReducedGraph& rg, Pattern pattern, std::vector<int> slots, int target_m,
               const RStar* rstar) {
    if (!pattern.closed()) throw std::invalid_argument("cluster walks are closed");
    if (int(slots.size()) != pattern.length())
        throw std::invalid_argument("slot count must equal the pattern length");

    Walk w;
    w.rg = &rg;
    w.rstar = rstar;
    w.pattern = std::move(pattern);
    w.slots = std::move(slots);
    w.target_m = target_m;
    w.neutral_sites.assign(size_t(rg.size()), {});
    w.run_sites.assign(size_t(rg.size()), {});
    w.a.assign(size_t(rg.size()), 0);
    w.exceptional_uses.assign(rstar ? rstar->exceptional.size() : 0, 0);

    for (int s : w.slots) {
        if (s >= 0) {
            if (s >= rg.size()) throw std::invalid_argument("slot cluster out of range");
            w.a[size_t(s)]++;
        } else {
            size_t e = size_t(-s - 1);
            if (e >= w.exceptional_uses.size())
                throw std::invalid_argument("slot names an unknown exceptional vertex");
            w.exceptional_uses[e]++;
        }
    }
    if (!validate_walk(w)) throw std::invalid_argument("slots are not a homomorphism into R*");
    return w;
}

void register_neutral_site(Walk& w, int position) {
    int x = w.slot(position);
    if (x < 0 || w.slot(position + 1) != w.rg->succ(x) || w.slot(position + 2) != x ||
        !w.pattern.forward(position) || w.pattern.forward(position + 1))
        throw std::invalid_argument("position is not a neutral pair mapped to (V_i, V_{i+1}, V_i)");
    w.neutral_sites[size_t(x)].push_back(mod_pos(position, w.size()));
    std::sort(w.neutral_sites[size_t(x)].begin(), w.neutral_sites[size_t(x)].end());
}

void register_run_site(Walk& w, int position, int run_len) {
    int m = w.rg->size();
    if (run_len <= 0 || run_len % m != 0)
        throw std::invalid_argument("run length must be a positive multiple of |R|");
    if (w.run_len != 0 && w.run_len != run_len)
        throw std::invalid_argument("all registered runs must share one length");
    int x = w.slot(position);
    if (x < 0) throw std::invalid_argument("run must start at a cluster");
    for (int off = 0; off < run_len; ++off) {
        if (!w.pattern.forward(position + off) ||
            w.slot(position + off) != mod_pos(x + off, m))
            throw std::invalid_argument("position does not start a forward long run");
    }
    w.run_len = run_len;
    w.run_sites[size_t(x)].push_back(mod_pos(position, w.size()));
    std::sort(w.run_sites[size_t(x)].begin(), w.run_sites[size_t(x)].end());
}

WalkStats stats_of(const Walk& w) {
    WalkStats st;
    st.a = w.a;
    for (auto& sites : w.neutral_sites) st.n_q.push_back(int(sites.size()));
    for (auto& sites : w.run_sites) st.m_runs.push_back(int(sites.size()));
    return st;
}

bool validate_walk(const Walk& w) {
    for (int i = 0; i < w.size(); ++i)
        if (!walk_edge_ok(w, i)) return false;
    for (int uses : w.exceptional_uses)
        if (uses > 1) return false;
    return true;
}

std::vector<long long> recount_assignments(const Walk& w) {
    std::vector<long long> a(size_t(w.rg->size()), 0);
    for (int s : w.slots)
        if (s >= 0) a[size_t(s)]++;
    return a;
}

std::vector<long long> off_f_incident_by_cluster(const Walk& w) {
    std::vector<long long> off(size_t(w.rg->size()), 0);
    for (int i = 0; i < w.size(); ++i) {
        if (edge_on_f(w, i)) continue;
        if (w.slot(i) >= 0) off[size_t(w.slot(i))]++;
        if (w.slot(i + 1) >= 0) off[size_t(w.slot(i + 1))]++;
    }
    return off;
}

std::vector<long long> good_neighbour_counts(const Walk& w) {
    const ReducedGraph& rg = *w.rg;
    std::vector<long long> good(size_t(rg.size()), 0);
    for (int i = 0; i < w.size(); ++i) {
        int s = w.slot(i);
        if (s < 0) continue;
        int prev = w.slot(i - 1), next = w.slot(i + 1);
        bool prev_ok = prev >= 0 && (prev == rg.succ(s) || prev == rg.pred(s));
        bool next_ok = next >= 0 && (next == rg.succ(s) || next == rg.pred(s));
        if (prev_ok && next_ok) good[size_t(s)]++;
    }
    return good;
}

std::vector<int> greedy_embed(const ReducedGraph& rg, const Pattern& linear, int start_cluster) {
    if (linear.closed()) throw std::invalid_argument("greedy_embed takes a linear pattern");
    if (start_cluster < 0 || start_cluster >= rg.size())
        throw std::invalid_argument("start cluster out of range");
    std::vector<int> slots;
    slots.reserve(size_t(linear.length()) + 1);
    slots.push_back(start_cluster);
    for (int i = 0; i < linear.length(); ++i)
        slots.push_back(linear.forward(i) ? rg.succ(slots.back()) : rg.pred(slots.back()));
    return slots;
}

std::optional<std::vector<int>> pattern_walk(const ReducedGraph& rg, const Pattern& linear,
                                             int from, int to,
                                             const std::vector<long long>* load) {
    int m = rg.size();
    int len = linear.length();
    std::vector<std::vector<char>> feas(size_t(len) + 1, std::vector<char>(size_t(m), 0));
    feas[0][size_t(from)] = 1;
    for (int i = 0; i < len; ++i)
        for (int c = 0; c < m; ++c) {
            if (!feas[size_t(i)][size_t(c)]) continue;
            for (int d = 0; d < m; ++d)
                if (linear.forward(i) ? rg.edge(c, d) : rg.edge(d, c)) feas[size_t(i) + 1][size_t(d)] = 1;
        }
    if (!feas[size_t(len)][size_t(to)]) return std::nullopt;

    std::vector<long long> bias(size_t(m), 0);
    if (load) bias = *load;
    std::vector<int> walk(size_t(len) + 1);
    walk[size_t(len)] = to;
    for (int i = len - 1; i >= 0; --i) {
        int next = walk[size_t(i) + 1];
        int best = -1;
        for (int c = 0; c < m; ++c) {
            if (!feas[size_t(i)][size_t(c)]) continue;
            if (linear.forward(i) ? !rg.edge(c, next) : !rg.edge(next, c)) continue;
            if (best < 0 || bias[size_t(c)] < bias[size_t(best)]) best = c;
        }
        if (best < 0) return std::nullopt;  // unreachable given feasibility
        walk[size_t(i)] = best;
        bias[size_t(best)]++;
    }
    if (walk.front() != from) return std::nullopt;
    return walk;
}

AssignmentOutcome random_assign_once(const ReducedGraph& rg, const std::vector<Pattern>& paths,
                                     const std::vector<SubpathRef>& q, double gamma, Rng& rng) {
    if (paths.empty()) throw std::invalid_argument("no paths to assign");
    int t = paths[0].vertex_count();
    for (const Pattern& p : paths) {
        if (p.closed()) throw std::invalid_argument("assignment paths must be linear");
        if (p.vertex_count() != t)
            throw std::invalid_argument("assignment paths must have a common vertex count");
    }
    for (const SubpathRef& ref : q) {
        if (ref.path < 0 || ref.path >= int(paths.size()))
            throw std::invalid_argument("subpath reference out of range");
        if (ref.offset < 0 || ref.offset >= t)
            throw std::invalid_argument("subpath offset out of range");
    }

    int k = rg.size();
    long long s = (long long)paths.size();

    AssignmentOutcome out;
    out.phi.resize(paths.size());
    out.fragments.resize(paths.size());
    out.a.assign(size_t(k), 0);
    out.n_q.assign(size_t(k), 0);
    for (size_t i = 0; i < paths.size(); ++i) {
        out.phi[i] = uniform_int(rng, 0, k - 1);
        out.fragments[i] = greedy_embed(rg, paths[i], out.phi[i]);
        for (int c : out.fragments[i]) out.a[size_t(c)]++;
    }
    for (const SubpathRef& ref : q) out.n_q[size_t(out.fragments[size_t(ref.path)][size_t(ref.offset)])]++;

    double st = double(s) * t;
    double tol = gamma * st + 1e-9;
    out.accepted = true;
    for (int c = 0; c < k && out.accepted; ++c) {
        if (std::abs(double(out.a[size_t(c)]) - st / k) > tol) out.accepted = false;
        if (std::abs(double(out.n_q[size_t(c)]) - double(q.size()) / k) > tol) out.accepted = false;
    }
    return out;
}

AssignmentOutcome random_assign(const ReducedGraph& rg, const std::vector<Pattern>& paths,
                                const std::vector<SubpathRef>& q, double gamma, Rng& rng,
                                int max_attempts, bool enforce_regime) {
    int k = rg.size();
    if (enforce_regime) {
        double s_min = 8.0 * k / (gamma * gamma) * std::log(4.0 * k);
        if (double(paths.size()) < s_min)
            throw std::invalid_argument(
                "random_assign: s is below the concentration regime (need s >= 8k/gamma^2 "
                "ln(4k)); pass enforce_regime=false to override");
    }
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        AssignmentOutcome out = random_assign_once(rg, paths, q, gamma, rng);
        out.attempts = attempt;
        if (out.accepted) return out;
    }
    throw std::runtime_error("random_assign: retry budget exhausted; parameters sit outside "
                             "the acceptance regime");
}

AzumaReport azuma_tail_probe(double c, int s, double lambda, int trials,
                             const std::function<double(const std::vector<double>&)>& statistic,
                             Rng& rng) {
    if (c <= 0) throw std::invalid_argument("influence bound c must be positive");
    if (s < 1 || trials < 1) throw std::invalid_argument("s and trials must be positive");

    std::vector<double> xs(size_t(trials));
    std::vector<double> draws(size_t(s));
    for (int i = 0; i < trials; ++i) {
        for (int j = 0; j < s; ++j) draws[size_t(j)] = uniform_real(rng);
        xs[size_t(i)] = statistic(draws);
    }
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / trials;

    AzumaReport rep;
    rep.trials = trials;
    for (double x : xs)
        if (std::abs(x - mean) > lambda) rep.exceed++;
    rep.empirical = double(rep.exceed) / trials;
    rep.bound = std::min(1.0, 2.0 * std::exp(-(lambda * lambda) / (2.0 * c * c * s)));
    rep.slack = 3.0 * std::sqrt(std::max(rep.bound * (1 - rep.bound), 1e-12) / trials);
    rep.ok = rep.empirical <= rep.bound + rep.slack + 1e-12;
    return rep;
}

Walk incorporate_exceptional_far(const Walk& w0, int exceptional_index) {
    if (!w0.rstar) throw std::invalid_argument("walk has no R* attached");
    const RStar& star = *w0.rstar;
    size_t e = size_t(exceptional_index);
    if (e >= star.exceptional.size()) throw std::invalid_argument("exceptional index out of range");
    if (w0.exceptional_uses[e] > 0)
        throw std::invalid_argument("exceptional vertex already incorporated");

    Walk w = w0;
    const ReducedGraph& rg = *w.rg;
    for (int i = 0; i < rg.size(); ++i) {
        if (!star.in_links[e].test(i)) continue;
        auto& sites = w.neutral_sites[size_t(i)];
        if (sites.empty()) continue;
        int site = sites.front();
        sites.erase(sites.begin());
        int mid = mod_pos(site + 1, w.size());
        w.a[size_t(w.slots[size_t(mid)])]--;
        w.slots[size_t(mid)] = -exceptional_index - 1;
        w.exceptional_uses[e]++;
        return w;
    }
    throw SupplyError("no available neutral pair at any in-linked cluster");
}

namespace {

struct ClosePair {
    int over, j;
};

// Direct (surplus, target) pair for a close-case correction; excludes the
// two clusters a correction from `over` cannot reach.
std::optional<ClosePair> choose_close_pair(const Walk& w) {
    const ReducedGraph& rg = *w.rg;
    int m = rg.size();
    std::vector<int> surplus, deficit;
    for (int i = 0; i < m; ++i) {
        if (w.a[size_t(i)] > w.target_m) surplus.push_back(i);
        if (w.a[size_t(i)] < w.target_m) deficit.push_back(i);
    }
    auto by_surplus = [&](int x, int y) { return w.a[size_t(x)] > w.a[size_t(y)]; };
    auto by_deficit = [&](int x, int y) { return w.a[size_t(x)] < w.a[size_t(y)]; };
    std::stable_sort(surplus.begin(), surplus.end(), by_surplus);
    std::stable_sort(deficit.begin(), deficit.end(), by_deficit);
    for (int over : surplus)
        for (int j : deficit)
            if (j != rg.pred(over) && j != rg.succ(over)) return ClosePair{over, j};
    if (surplus.empty()) return std::nullopt;
    // Every deficit hugs every surplus; hop through an intermediate cluster
    // from which the most deficient target stays reachable.
    int over = surplus.front();
    int d = deficit.front();
    for (int x = 0; x < m; ++x) {
        if (x == over || x == rg.pred(over) || x == rg.succ(over)) continue;
        if (x == rg.pred(d) || x == rg.succ(d) || x == d) continue;
        return ClosePair{over, x};
    }
    return std::nullopt;
}

void apply_close_correction(Walk& w, int over, int j) {
    const ReducedGraph& rg = *w.rg;
    int m = rg.size();
    int base = rg.pred(over), succ_over = rg.succ(over);
    auto& sites = w.run_sites[size_t(base)];
    if (sites.empty()) throw SupplyError("balance_close: no long run starting at V_{i-1}");

    auto t1 = skewed_traverse(rg, base, j);
    if (!t1) throw NoTraverseError("balance_close: no skewed traverse to the target cluster");
    auto t2 = skewed_traverse(rg, j, succ_over);
    if (!t2) throw NoTraverseError("balance_close: no skewed traverse back past the surplus");
    int winds = w.run_len / m - 1 - t1->length() - t2->length();
    if (winds < 0)
        throw NoTraverseError("balance_close: shifted walks do not fit inside the long run");

    std::vector<int> section = expand_traverse(rg, *t1).walk;
    ShiftedWalk s2 = expand_traverse(rg, *t2);
    section.insert(section.end(), s2.walk.begin() + 1, s2.walk.end());
    int steps = winds * m + m - 2;
    for (int st = 1; st <= steps; ++st) section.push_back(mod_pos(succ_over + st, m));

    int site = sites.front();
    check_no_registry_overlap(w, site, w.run_len, site);
    write_section(w, site, section);
    erase_value(sites, site);
    w.corrections++;
}

}  // namespace

Walk incorporate_exceptional_close(const Walk& w0, int exceptional_index) {
    if (!w0.rstar) throw std::invalid_argument("walk has no R* attached");
    const RStar& star = *w0.rstar;
    size_t e = size_t(exceptional_index);
    if (e >= star.exceptional.size()) throw std::invalid_argument("exceptional index out of range");
    if (w0.exceptional_uses[e] > 0)
        throw std::invalid_argument("exceptional vertex already incorporated");
    const ReducedGraph& rg = *w0.rg;
    int m = rg.size();
    if (m < 4) throw std::invalid_argument("close-case incorporation needs |R| >= 4");
    if (star.in_links[e].empty() || star.out_links[e].empty())
        throw SupplyError("exceptional vertex lacks an in-link or an out-link");

    Walk w = w0;
    for (int i = 0; i < m; ++i) {
        if (!star.in_links[e].test(i)) continue;
        auto& sites = w.run_sites[size_t(i)];
        if (sites.empty()) continue;
        int i3 = mod_pos(i + 3, m);
        for (int j = 0; j < m; ++j) {
            if (!star.out_links[e].test(j) || j == i3) continue;
            auto t = skewed_traverse(rg, j, i3);
            if (!t) continue;
            int winds = w.run_len / m - 1 - t->length();
            if (winds < 0) continue;

            std::vector<int> section = {i, -exceptional_index - 1, j};
            ShiftedWalk s = expand_traverse(rg, *t);
            section.insert(section.end(), s.walk.begin() + 1, s.walk.end());
            int steps = winds * m + m - 3;
            for (int st = 1; st <= steps; ++st) section.push_back(mod_pos(i3 + st, m));

            int site = sites.front();
            check_no_registry_overlap(w, site, w.run_len, site);
            write_section(w, site, section);
            erase_value(sites, site);
            return w;
        }
    }
    throw SupplyError("no long run at any linked cluster admits the rewrite");
}

Walk balance_far(const Walk& w0) {
    Walk w = w0;
    const ReducedGraph& rg = *w.rg;
    int m = rg.size();
    long long total_imbalance = 0;
    for (int i = 0; i < m; ++i) total_imbalance += std::llabs(w.a[size_t(i)] - w.target_m);
    long long guard = 2 * total_imbalance * m + 8;

    while (guard-- > 0) {
        std::vector<int> surplus, deficit;
        for (int i = 0; i < m; ++i) {
            if (w.a[size_t(i)] > w.target_m) surplus.push_back(i);
            if (w.a[size_t(i)] < w.target_m) deficit.push_back(i);
        }
        if (surplus.empty()) return w;
        std::stable_sort(surplus.begin(), surplus.end(),
                         [&](int x, int y) { return w.a[size_t(x)] > w.a[size_t(y)]; });
        std::stable_sort(deficit.begin(), deficit.end(),
                         [&](int x, int y) { return w.a[size_t(x)] < w.a[size_t(y)]; });

        int over = -1, j = -1;
        for (int o : surplus) {
            for (int d : deficit)
                if (d != rg.pred(o)) {
                    over = o;
                    j = d;
                    break;
                }
            if (over >= 0) break;
        }
        if (over < 0) {
            // Sole deficit is pred(over); hop through an intermediate.
            over = surplus.front();
            int d = deficit.front();
            for (int x = 0; x < m; ++x) {
                if (x == over || x == rg.pred(over) || x == d || x == rg.succ(d)) continue;
                j = x;
                break;
            }
            if (j < 0) throw NoTraverseError("balance_far: no admissible target cluster");
        }

        int from = rg.pred(over);
        std::vector<int> supply(size_t(m), 0);
        for (int i = 0; i < m; ++i) supply[size_t(i)] = int(w.neutral_sites[size_t(i)].size());
        auto tr = skewed_traverse_gated(rg, from, j, supply);
        if (!tr) {
            if (skewed_traverse(rg, from, j))
                throw SupplyError("balance_far: neutral-pair supply exhausted along every "
                                  "traverse");
            throw NoTraverseError("balance_far: no skewed traverse between the clusters");
        }
        for (auto [x, y] : tr->edges) {
            auto& sites = w.neutral_sites[size_t(x)];
            if (sites.empty())
                throw SupplyError("balance_far: neutral-pair supply exhausted");
            int site = sites.front();
            sites.erase(sites.begin());
            int mid = mod_pos(site + 1, w.size());
            w.a[size_t(w.slots[size_t(mid)])]--;
            w.slots[size_t(mid)] = y;
            w.a[size_t(y)]++;
        }
        w.corrections++;
    }
    throw NoTraverseError("balance_far: no progress; imbalance unreachable by far-case moves");
}

Walk balance_close(const Walk& w0) {
    Walk w = w0;
    const ReducedGraph& rg = *w.rg;
    int m = rg.size();
    if (m < 4) throw std::invalid_argument("balance_close needs |R| >= 4");
    long long total_imbalance = 0;
    for (int i = 0; i < m; ++i) total_imbalance += std::llabs(w.a[size_t(i)] - w.target_m);
    if (total_imbalance > 0 && (w.run_len <= 0 || w.run_len % m != 0))
        throw std::invalid_argument("walk has no long-run registry");
    long long guard = 2 * total_imbalance * m + 8;

    while (guard-- > 0) {
        auto pair = choose_close_pair(w);
        if (!pair) {
            bool balanced = true;
            for (int i = 0; i < m; ++i)
                if (w.a[size_t(i)] != w.target_m) balanced = false;
            if (balanced) return w;
            throw NoTraverseError("balance_close: no admissible correction pair");
        }
        apply_close_correction(w, pair->over, pair->j);
    }
    throw NoTraverseError("balance_close: no progress; imbalance unreachable by close-case moves");
}

bool verify_correspondence(const Walk& w, double gamma, double mu, int m) {
    int n = w.size();
    for (long long ai : w.a)
        if (std::abs(double(ai - m)) > gamma * n + 1e-9) return false;
    if (w.rstar) {
        for (int uses : w.exceptional_uses)
            if (uses != 1) return false;
    } else {
        for (int s : w.slots)
            if (s < 0) return false;
    }
    std::vector<long long> good = good_neighbour_counts(w);
    for (long long g : good)
        if (double(g) < double(m) - mu * n - 1e-9) return false;
    return true;
}

double mu_of(const Walk& w, int m) {
    std::vector<long long> good = good_neighbour_counts(w);
    long long worst = 0;
    for (long long g : good) worst = std::max(worst, (long long)m - g);
    return double(std::max<long long>(worst, 0)) / double(w.size());
}

CaseKind classify_case(const Pattern& p, const CaseThresholds& thr) {
    if (!(thr.far_min <= thr.close_max + 1e-12))
        throw std::invalid_argument("thresholds leave unclassified patterns");
    double lambda = double(neutral_pair_count(p)) / p.length();
    if (lambda >= thr.far_min) return CaseKind::far;  // ties break to far
    return CaseKind::close;
}

namespace {

void record_phase(EmbedResult& res, const Walk& w, const std::string& name) {
    res.phases.push_back({name, stats_of(w)});
}

}  // namespace

EmbedResult embed_cycle(const ReducedGraph& rg, const Pattern& pattern, const EmbedConfig& cfg) {
    EmbedResult res;
    try {
        int m_clusters = rg.size();
        int n = pattern.length();
        if (n % m_clusters != 0)
            throw std::invalid_argument("pattern length must be a multiple of |R| for a "
                                        "balanced assignment");
        int m = n / m_clusters;
        res.kind = cfg.forced_case ? *cfg.forced_case : classify_case(pattern, cfg.thresholds);

        ChopPlan plan = chop_cycle(pattern, cfg.alpha);
        res.s = plan.s;
        res.t = plan.t;
        res.r = plan.r;

        std::vector<Segment> p_segs, q_segs;
        Segment q_star{}, p_star{};
        for (const Segment& seg : plan.segments) {
            switch (seg.role) {
                case Segment::Role::P: p_segs.push_back(seg); break;
                case Segment::Role::Q: q_segs.push_back(seg); break;
                case Segment::Role::QStar: q_star = seg; break;
                case Segment::Role::PStar: p_star = seg; break;
            }
        }

        std::vector<Pattern> paths;
        paths.reserve(p_segs.size());
        for (const Segment& seg : p_segs) paths.push_back(pattern.subword(seg.start, seg.len));

        // Supply references inside the P_i, away from their ends.
        std::vector<SubpathRef> refs;
        int run_len = 0;
        if (res.kind == CaseKind::far) {
            NeutralPairSet q = spread_neutral_pairs(pattern);
            for (int posn : q.selected) {
                for (size_t i = 0; i < p_segs.size(); ++i) {
                    int off = mod_pos(posn - p_segs[i].start, n);
                    if (off >= 3 && off <= p_segs[i].len - 5) {
                        refs.push_back({int(i), off});
                        break;
                    }
                }
            }
        } else {
            int ell = int(std::ceil(4.0 / cfg.alpha)) * m_clusters;
            run_len = 3 * ell;
            if (run_len > plan.t - 8)
                throw std::invalid_argument("close-case long runs do not fit inside the P_i; "
                                            "the pattern is too short for this alpha");
            for (size_t i = 0; i < paths.size(); ++i)
                for (int start : find_long_runs(paths[i], run_len, 'F'))
                    if (start >= 4 && start + run_len <= p_segs[i].len - 4)
                        refs.push_back({int(i), start});
        }
        if (refs.empty())
            throw std::runtime_error("no usable neutral-pair / long-run supply in the chopped "
                                     "paths");

        Rng rng = make_rng(cfg.seed);
        AssignmentOutcome assign =
            random_assign(rg, paths, refs, cfg.gamma, rng, cfg.max_attempts, false);
        res.attempts = assign.attempts;
        res.phi = assign.phi;

        // Assemble the closed walk: fragments own their full vertex ranges,
        // joins own their interiors.
        std::vector<int> slots(size_t(n), -1000000);
        auto put = [&](int pos, int cluster) { slots[size_t(mod_pos(pos, n))] = cluster; };
        for (size_t i = 0; i < p_segs.size(); ++i)
            for (int off = 0; off <= p_segs[i].len; ++off)
                put(p_segs[i].start + off, assign.fragments[i][size_t(off)]);

        std::vector<long long> load = assign.a;
        auto join = [&](const Segment& seg, int from, int to) {
            Pattern word = pattern.subword(seg.start, seg.len);
            auto walk = pattern_walk(rg, word, from, to, &load);
            if (!walk)
                throw std::runtime_error("no orientation-walk join exists in R for a Q segment");
            for (int off = 1; off < seg.len; ++off) {
                put(seg.start + off, (*walk)[size_t(off)]);
                load[size_t((*walk)[size_t(off)])]++;
            }
        };
        for (size_t i = 1; i < p_segs.size(); ++i)
            join(q_segs[i], assign.fragments[i - 1].back(), assign.phi[i]);

        // Q* connects the last P to the greedy P*, and Q_1 closes the cycle
        // back to phi(1); choose the P* start cluster so both joins exist.
        Pattern p_star_word = pattern.subword(p_star.start, p_star.len);
        int disp = 0;
        for (int i = 0; i < p_star_word.length(); ++i) disp += p_star_word.forward(i) ? 1 : -1;
        Pattern q_star_word = pattern.subword(q_star.start, q_star.len);
        Pattern q1_word = pattern.subword(q_segs[0].start, q_segs[0].len);

        std::vector<int> order(size_t(m_clusters));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return load[size_t(x)] < load[size_t(y)]; });
        bool placed = false;
        for (int x : order) {
            int end = mod_pos(x + disp, m_clusters);
            if (!pattern_walk(rg, q_star_word, assign.fragments.back().back(), x) ||
                !pattern_walk(rg, q1_word, end, assign.phi[0]))
                continue;
            join(q_star, assign.fragments.back().back(), x);
            std::vector<int> frag = greedy_embed(rg, p_star_word, x);
            for (int off = 0; off <= p_star.len; ++off) put(p_star.start + off, frag[size_t(off)]);
            join(q_segs[0], end, assign.phi[0]);
            placed = true;
            break;
        }
        if (!placed)
            throw std::runtime_error("no P* start cluster admits both closing joins");

        for (int s : slots)
            if (s == -1000000) throw std::logic_error("walk assembly left unassigned slots");

        Walk walk = make_walk(rg, pattern, slots, m);
        for (const SubpathRef& ref : refs)
            if (res.kind == CaseKind::far)
                register_neutral_site(walk, p_segs[size_t(ref.path)].start + ref.offset);
            else
                register_run_site(walk, p_segs[size_t(ref.path)].start + ref.offset, run_len);
        record_phase(res, walk, "assembled");

        Walk balanced = res.kind == CaseKind::far ? balance_far(walk) : balance_close(walk);
        record_phase(res, balanced, "balanced");

        res.balanced = true;
        for (long long ai : balanced.a)
            if (ai != m) res.balanced = false;
        res.mu = mu_of(balanced, m);
        res.correspondence_ok =
            validate_walk(balanced) && verify_correspondence(balanced, 0.0, res.mu, m);
        res.walk = std::move(balanced);
        res.ok = res.balanced && res.correspondence_ok;
        if (!res.ok) res.error = "walk balanced or correspondence check failed";
    } catch (const std::exception& ex) {
        res.ok = false;
        res.error = ex.what();
    }
    return res;
}

}  // namespace oc
