#include "orientcycle/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

namespace oc {

namespace {

struct BudgetHit {};

// One root job: a pattern alignment with position 0 pre-assigned. rotation
// records how far the pattern was rotated so the result can be mapped back;
// min_vertex < 0 disables the canonical-minimum restriction.
struct RootJob {
    int pat_idx = 0;
    int v0 = -1;
    int min_vertex = -1;
};

class Searcher {
public:
    Searcher(const OrientedGraph& g, const Pattern& pat, bool cycle,
             std::optional<int> right_anchor, const Bitset& forbidden, bool degree_prune,
             uint64_t budget, std::atomic<uint64_t>& shared_nodes, std::atomic<bool>& stop)
        : g_(g),
          cycle_(cycle),
          right_anchor_(right_anchor),
          forbidden_(forbidden),
          degree_prune_(degree_prune),
          budget_(budget),
          shared_nodes_(shared_nodes),
          stop_(stop) {
        L_ = pat.length();
        P_ = cycle ? L_ : L_ + 1;
        fwd_.resize(L_);
        for (int i = 0; i < L_; ++i) fwd_[i] = pat.forward(i) ? 1 : 0;
        slots_.assign(P_, -1);

        // Position classes for the spanning degree prune: FF=0 FB=1 BF=2 BB=3
        // plus one-edge classes HF=4 / HB=5 at the free right end of a path.
        std::vector<int> class_of(P_, 0);
        for (int q = 1; q < P_; ++q) {
            bool has_succ = cycle_ || q < P_ - 1;
            if (has_succ)
                class_of[q] = (fwd_[q - 1] ? 0 : 2) + (fwd_[q % L_] ? 0 : 1);
            else
                class_of[q] = fwd_[q - 1] ? 4 : 5;
        }
        for (int c = 0; c < 6; ++c) {
            class_prefix_[c].assign(P_ + 1, 0);
            for (int q = 0; q < P_; ++q)
                class_prefix_[c][q + 1] = class_prefix_[c][q] + (q >= 1 && class_of[q] == c);
        }
        spanning_ = (cycle_ ? L_ : L_ + 1) == g.order() - forbidden.count();
    }

    bool run(const RootJob& job) {
        used_ = Bitset(g_.order());
        free_ = Bitset::full(g_.order());
        free_ -= forbidden_;
        if (job.min_vertex >= 0)
            for (int v = 0; v < job.min_vertex; ++v)
                if (free_.test(v)) free_.reset(v);
        for (int q = 0; q < P_; ++q) slots_[q] = -1;

        if (!free_.test(job.v0)) return false;
        place(0, job.v0);
        int b = P_;
        if (!cycle_ && right_anchor_) {
            if (*right_anchor_ == job.v0) return false;
            place(P_ - 1, *right_anchor_);
            b = P_ - 1;
        }
        return dfs(0, b);
    }

    void flush_nodes() {
        shared_nodes_.fetch_add(local_nodes_);
        local_nodes_ = 0;
    }

    std::vector<int> result_vertices;
    bool hit_budget = false;

private:
    void place(int q, int v) {
        slots_[q] = v;
        used_.set(v);
        free_.reset(v);
    }
    void unplace(int q) {
        int v = slots_[q];
        slots_[q] = -1;
        used_.reset(v);
        free_.set(v);
    }

    int vertex_at(int q) const { return q == P_ ? slots_[0] : slots_[q]; }
    bool has_right() const { return cycle_ || right_anchor_.has_value(); }

    Bitset forward_candidates(int a, int b) const {
        int va = slots_[a];
        Bitset cand = (fwd_[a] ? g_.out(va) : g_.in(va)) & free_;
        if (a + 1 == b - 1 && (b < P_ || cycle_)) {
            int vb = vertex_at(b);
            cand &= fwd_[(a + 1) % L_] ? g_.in(vb) : g_.out(vb);
        }
        return cand;
    }

    Bitset backward_candidates(int a, int b) const {
        int vb = vertex_at(b);
        Bitset cand = (fwd_[(b - 1) % L_] ? g_.in(vb) : g_.out(vb)) & free_;
        if (b - 1 == a + 1) {
            int va = slots_[a];
            cand &= fwd_[a] ? g_.out(va) : g_.in(va);
        }
        return cand;
    }

    bool degree_prune_fails(int a, int b) const {
        Bitset frontier = free_;
        frontier.set(slots_[a]);
        if (b < P_ || cycle_) frontier.set(vertex_at(b));
        int lo = a + 1, hi = b - 1;
        auto cnt = [&](int c) { return class_prefix_[c][hi + 1] - class_prefix_[c][lo]; };
        int both = cnt(0) + cnt(3);
        int fb = cnt(1), bf = cnt(2), hf = cnt(4), hb = cnt(5);

        bool bad = false;
        free_.for_each([&](int v) {
            if (bad) return;
            int cin = g_.in(v).count_and(frontier);
            int cout = g_.out(v).count_and(frontier);
            bool fits = (both > 0 && cin >= 1 && cout >= 1) || (fb > 0 && cin >= 2) ||
                        (bf > 0 && cout >= 2) || (hf > 0 && cin >= 1) || (hb > 0 && cout >= 1);
            if (!fits) bad = true;
        });
        return bad;
    }

    bool dfs(int a, int b) {
        if (++local_nodes_ >= 1024) {
            flush_nodes();
            if (shared_nodes_.load(std::memory_order_relaxed) > budget_) {
                hit_budget = true;
                throw BudgetHit{};
            }
            if (stop_.load(std::memory_order_relaxed)) throw BudgetHit{};
        }
        if (b - a == 1) {
            result_vertices.assign(slots_.begin(), slots_.end());
            return true;
        }
        if (spanning_ && degree_prune_ && degree_prune_fails(a, b)) return false;

        bool can_fwd = a + 1 < b;
        bool can_bwd = has_right() && b - 1 > a;
        Bitset fc, bc;
        int fn = -1, bn = -1;
        if (can_fwd) {
            fc = forward_candidates(a, b);
            fn = fc.count();
        }
        if (can_bwd) {
            bc = backward_candidates(a, b);
            bn = bc.count();
        }
        bool use_fwd = can_fwd && (!can_bwd || fn <= bn);

        const Bitset& cand = use_fwd ? fc : bc;
        int q = use_fwd ? a + 1 : b - 1;
        bool found = false;
        cand.for_each([&](int v) {
            if (found) return;
            place(q, v);
            if (use_fwd ? dfs(a + 1, b) : dfs(a, b - 1)) {
                found = true;
                return;
            }
            unplace(q);
        });
        return found;
    }

    const OrientedGraph& g_;
    bool cycle_;
    std::optional<int> right_anchor_;
    Bitset forbidden_;
    bool degree_prune_;
    uint64_t budget_;
    std::atomic<uint64_t>& shared_nodes_;
    std::atomic<bool>& stop_;

    int L_ = 0, P_ = 0;
    std::vector<char> fwd_;
    std::vector<int> slots_;
    std::vector<int> class_prefix_[6];
    Bitset used_, free_;
    bool spanning_ = false;
    uint64_t local_nodes_ = 0;
};

Bitset forbidden_of(const EmbeddingProblem& p) {
    if (p.forbidden) {
        if (p.forbidden->universe() != p.host->order())
            throw std::invalid_argument("forbidden set universe does not match host");
        return *p.forbidden;
    }
    return Bitset(p.host->order());
}

struct RotatedPattern {
    Pattern pattern;
    int rotation;  // pattern == original.rotated(rotation)
};

std::vector<RotatedPattern> distinct_rotations(const Pattern& p) {
    std::vector<RotatedPattern> rots;
    std::set<std::string> seen;
    for (int k = 0; k < p.length(); ++k) {
        Pattern r = p.rotated(k);
        if (seen.insert(r.word()).second) rots.push_back({r, k});
    }
    return rots;
}

// Map an embedding of original.rotated(k) back to an embedding of original.
std::vector<int> unrotate(const std::vector<int>& v, int k) {
    int L = int(v.size());
    std::vector<int> w(v.size());
    for (int j = 0; j < L; ++j) w[j] = v[((j - k) % L + L) % L];
    return w;
}

SearchResult run_jobs(const OrientedGraph& host, const std::vector<RotatedPattern>& pats,
                      const std::vector<RootJob>& jobs, bool cycle,
                      std::optional<int> right_anchor, const Bitset& forbidden,
                      const SearchOptions& opt) {
    std::atomic<uint64_t> shared_nodes{0};
    std::atomic<bool> stop{false};
    std::mutex mtx;
    SearchResult result;
    result.verdict = Verdict::none;
    bool any_budget = false;
    size_t best_found_job = jobs.size();

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size() || stop.load()) break;
            const RootJob& job = jobs[i];
            Searcher s(host, pats[job.pat_idx].pattern, cycle, right_anchor, forbidden,
                       opt.degree_prune, opt.node_budget, shared_nodes, stop);
            bool found = false;
            bool budget = false;
            try {
                found = s.run(job);
            } catch (const BudgetHit&) {
                budget = s.hit_budget;
            }
            s.flush_nodes();
            if (found) {
                std::lock_guard<std::mutex> lk(mtx);
                if (result.verdict != Verdict::found || i < best_found_job) {
                    result.verdict = Verdict::found;
                    std::vector<int> verts = s.result_vertices;
                    if (cycle && pats[job.pat_idx].rotation != 0)
                        verts = unrotate(verts, pats[job.pat_idx].rotation);
                    result.embedding = Embedding{std::move(verts)};
                    best_found_job = i;
                }
                stop.store(true);
                break;
            }
            if (budget) {
                std::lock_guard<std::mutex> lk(mtx);
                any_budget = true;
            }
        }
    };

    int threads = std::max(1, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.nodes = shared_nodes.load();
    if (result.verdict != Verdict::found && any_budget) result.verdict = Verdict::unknown;
    return result;
}

}  // namespace

SearchResult find_pattern_cycle(const EmbeddingProblem& problem, const SearchOptions& opt) {
    if (!problem.host) throw std::invalid_argument("missing host graph");
    if (problem.mode != SearchMode::cycle) throw std::invalid_argument("mode must be cycle");
    if (!problem.pattern.closed())
        throw std::invalid_argument("cycle search needs a closed pattern");
    if (problem.from || problem.to) throw std::invalid_argument("anchors are path-mode only");
    const OrientedGraph& host = *problem.host;
    Bitset forbidden = forbidden_of(problem);
    if (problem.pattern.length() > host.order() - forbidden.count())
        return {Verdict::none, std::nullopt, 0};

    std::vector<RotatedPattern> pats;
    std::vector<RootJob> jobs;
    if (opt.rotate_pattern) {
        pats = distinct_rotations(problem.pattern);
        for (int v = 0; v < host.order(); ++v) {
            if (forbidden.test(v)) continue;
            for (size_t pi = 0; pi < pats.size(); ++pi) jobs.push_back({int(pi), v, v});
        }
    } else {
        pats = {{problem.pattern, 0}};
        for (int v = 0; v < host.order(); ++v)
            if (!forbidden.test(v)) jobs.push_back({0, v, -1});
    }
    SearchResult res = run_jobs(host, pats, jobs, true, std::nullopt, forbidden, opt);
    if (res.verdict == Verdict::found && !check_embedding(problem, *res.embedding))
        throw std::logic_error("search returned an invalid embedding");
    return res;
}

SearchResult find_pattern_path(const EmbeddingProblem& problem, const SearchOptions& opt) {
    if (!problem.host) throw std::invalid_argument("missing host graph");
    if (problem.mode != SearchMode::path) throw std::invalid_argument("mode must be path");
    if (problem.pattern.closed())
        throw std::invalid_argument("path search needs a linear pattern");
    const OrientedGraph& host = *problem.host;
    Bitset forbidden = forbidden_of(problem);
    if (problem.from && problem.to && *problem.from == *problem.to)
        throw std::invalid_argument("path anchors must be distinct");
    for (auto anchor : {problem.from, problem.to}) {
        if (!anchor) continue;
        if (*anchor < 0 || *anchor >= host.order())
            throw std::invalid_argument("anchor out of range");
        if (forbidden.test(*anchor)) throw std::invalid_argument("anchor is forbidden");
    }
    if (problem.pattern.length() + 1 > host.order() - forbidden.count())
        return {Verdict::none, std::nullopt, 0};

    if (!problem.from && problem.to) {
        // Flip the traversal so the anchored end sits at position 0.
        EmbeddingProblem rev = problem;
        rev.pattern = problem.pattern.reversed();
        rev.from = problem.to;
        rev.to = std::nullopt;
        SearchResult res = find_pattern_path(rev, opt);
        if (res.embedding)
            std::reverse(res.embedding->vertices.begin(), res.embedding->vertices.end());
        if (res.verdict == Verdict::found && !check_embedding(problem, *res.embedding))
            throw std::logic_error("search returned an invalid embedding");
        return res;
    }

    std::vector<RotatedPattern> pats = {{problem.pattern, 0}};
    std::vector<RootJob> jobs;
    if (problem.from) {
        jobs.push_back({0, *problem.from, -1});
    } else {
        for (int v = 0; v < host.order(); ++v)
            if (!forbidden.test(v)) jobs.push_back({0, v, -1});
    }
    SearchResult res = run_jobs(host, pats, jobs, false, problem.to, forbidden, opt);
    if (res.verdict == Verdict::found && !check_embedding(problem, *res.embedding))
        throw std::logic_error("search returned an invalid embedding");
    return res;
}

LongestResult longest_anti_directed_cycle(const OrientedGraph& host, const SearchOptions& opt) {
    LongestResult out;
    SearchOptions o = opt;
    o.rotate_pattern = true;
    int start = host.order() - (host.order() % 2);
    for (int len = start; len >= 4; len -= 2) {
        EmbeddingProblem p;
        p.host = &host;
        p.pattern = Pattern::antidirected(len);
        p.mode = SearchMode::cycle;
        SearchResult r = find_pattern_cycle(p, o);
        out.nodes += r.nodes;
        if (r.verdict == Verdict::found) {
            out.length = len;
            out.embedding = r.embedding;
            return out;
        }
        if (r.verdict == Verdict::unknown) out.exact = false;
    }
    out.length = 0;
    return out;
}

SearchResult brute_force_oracle(const EmbeddingProblem& problem) {
    if (!problem.host) throw std::invalid_argument("missing host graph");
    const OrientedGraph& host = *problem.host;
    if (host.order() > 9)
        throw std::invalid_argument("brute_force_oracle: host order must be <= 9");
    bool cycle = problem.mode == SearchMode::cycle;
    if (cycle != problem.pattern.closed())
        throw std::invalid_argument("pattern closedness does not match mode");
    if (problem.from && problem.to && *problem.from == *problem.to)
        throw std::invalid_argument("path anchors must be distinct");
    Bitset forbidden = forbidden_of(problem);
    int L = problem.pattern.length();
    int P = cycle ? L : L + 1;

    std::vector<int> seq(size_t(P), -1);
    std::vector<char> used(size_t(host.order()), 0);
    SearchResult res;
    res.verdict = Verdict::none;

    auto check_full = [&]() {
        for (int i = 0; i < L; ++i) {
            int u = seq[i];
            int v = seq[(i + 1) % P];
            if (problem.pattern.forward(i) ? !host.has_edge(u, v) : !host.has_edge(v, u))
                return false;
        }
        return true;
    };

    std::function<void(int)> gen = [&](int q) {
        if (res.verdict == Verdict::found) return;
        if (q == P) {
            res.nodes++;
            if (check_full()) {
                res.verdict = Verdict::found;
                res.embedding = Embedding{seq};
            }
            return;
        }
        auto try_vertex = [&](int v) {
            if (used[v] || forbidden.test(v)) return;
            seq[q] = v;
            used[v] = 1;
            gen(q + 1);
            used[v] = 0;
        };
        if (!cycle && q == 0 && problem.from) {
            try_vertex(*problem.from);
            return;
        }
        if (!cycle && q == P - 1 && problem.to) {
            try_vertex(*problem.to);
            return;
        }
        for (int v = 0; v < host.order() && res.verdict != Verdict::found; ++v) try_vertex(v);
    };
    gen(0);
    return res;
}

bool check_embedding(const EmbeddingProblem& problem, const Embedding& emb) {
    const OrientedGraph& host = *problem.host;
    bool cycle = problem.mode == SearchMode::cycle;
    int L = problem.pattern.length();
    size_t want = size_t(cycle ? L : L + 1);
    if (emb.vertices.size() != want) return false;

    Bitset forbidden = forbidden_of(problem);
    Bitset seen(host.order());
    for (int v : emb.vertices) {
        if (v < 0 || v >= host.order()) return false;
        if (seen.test(v) || forbidden.test(v)) return false;
        seen.set(v);
    }
    if (!cycle) {
        if (problem.from && emb.vertices.front() != *problem.from) return false;
        if (problem.to && emb.vertices.back() != *problem.to) return false;
    }
    for (int i = 0; i < L; ++i) {
        int u = emb.vertices[i];
        int v = emb.vertices[size_t(i + 1) % emb.vertices.size()];
        if (problem.pattern.forward(i) ? !host.has_edge(u, v) : !host.has_edge(v, u))
            return false;
    }
    return true;
}

}  // namespace oc
