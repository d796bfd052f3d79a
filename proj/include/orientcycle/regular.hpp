#pragma once

#include <optional>
#include <vector>

#include "orientcycle/bitset.hpp"
#include "orientcycle/rng.hpp"

namespace oc {

struct Ratio {
    long long num = 0, den = 1;
    double value() const { return double(num) / double(den); }
};
Ratio make_ratio(long long num, long long den);

// Undirected bipartite pair (A, B); rows[a] is a's neighbourhood in B.
struct BipartitePair {
    int left_size = 0, right_size = 0;
    std::vector<Bitset> rows;

    BipartitePair() = default;
    BipartitePair(int nl, int nr) : left_size(nl), right_size(nr), rows(size_t(nl), Bitset(nr)) {}

    static BipartitePair complete(int nl, int nr);
    static BipartitePair random(int nl, int nr, double p, Rng& rng);

    void add_edge(int a, int b) { rows[size_t(a)].set(b); }
    bool has_edge(int a, int b) const { return rows[size_t(a)].test(b); }
    long long edge_count() const;
    long long edges_between(const Bitset& x, const Bitset& y) const;
    int left_degree(int a) const { return rows[size_t(a)].count(); }
    int right_degree(int b) const;
};

Ratio density(const BipartitePair& p);

struct RegWitness {
    Bitset x, y;
    double d_xy = 0, d_ab = 0;
};

enum class CheckMode { exact, sampled };

struct RegularityResult {
    enum class Status { regular_certified, no_counterexample_found, irregular };
    Status status = Status::no_counterexample_found;
    std::optional<RegWitness> witness;
    bool certified() const { return status == Status::regular_certified; }
    bool irregular() const { return status == Status::irregular; }
};

// eps-regularity: every X > eps|A|, Y > eps|B| (strict) has
// |d(X,Y) - d(A,B)| < eps. Exact mode requires |A|+|B| <= 24 and certifies;
// sampled mode only ever falsifies.
RegularityResult is_eps_regular(const BipartitePair& p, double eps, CheckMode mode,
                                Rng* rng = nullptr, int samples = 200);

bool degree_floors_hold(const BipartitePair& p, double eps, double d);

// eps-regular plus both degree floors (d-eps)|other side|.
bool is_super_regular(const BipartitePair& p, double eps, double d, CheckMode mode,
                      Rng* rng = nullptr, int samples = 200);

struct SplitCheckReport {
    int trials = 0;
    int subpairs_total = 0;
    int subpairs_passed = 0;
    double pass_fraction = 0.0;
};

// Random uniform partitions of both sides into parts of the given fractions
// (all > theta); counts how many sub-pairs (A_i, B_j) satisfy the
// (eps/theta, d/2) super-regularity checks (floors exactly, regularity
// sampled).
SplitCheckReport random_split_check(const BipartitePair& p, const std::vector<double>& parts_a,
                                    const std::vector<double>& parts_b, double theta, double eps,
                                    double d, int trials, Rng& rng);

}  // namespace oc
