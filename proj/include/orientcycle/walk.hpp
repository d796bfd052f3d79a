#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orientcycle/pattern.hpp"
#include "orientcycle/reduced.hpp"

namespace oc {

struct SupplyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoTraverseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// R extended by exceptional vertices; a link exists when at least c*m of the
// cluster lies in the relevant neighbourhood of the exceptional vertex.
struct RStar {
    const ReducedGraph* rg = nullptr;
    int cluster_size = 0;  // m
    double c = 0;
    std::vector<int> exceptional;   // external vertex ids
    std::vector<Bitset> in_links;   // per exceptional: clusters i with edge V_i -> v
    std::vector<Bitset> out_links;  // per exceptional: clusters i with edge v -> V_i
};

// clusters[i] = vertex set (in g) of the cluster at F-position i; all
// clusters must be equal-sized and disjoint from the exceptional vertices.
RStar build_r_star(const ReducedGraph& rg, const OrientedGraph& g,
                   const std::vector<Bitset>& clusters, const std::vector<int>& exceptional,
                   double c);

// Closed cluster walk realising `pattern`: slot >= 0 is a cluster position,
// slot < 0 encodes exceptional index -slot-1. The registries hold the
// positions of the selected neutral pairs / long runs still available to the
// balancing engine.
struct Walk {
    const ReducedGraph* rg = nullptr;
    const RStar* rstar = nullptr;  // may be null
    Pattern pattern;               // closed
    std::vector<int> slots;
    int target_m = 0;
    int run_len = 0;  // 3*ell, multiple of |R|

    std::vector<std::vector<int>> neutral_sites;  // per cluster, ascending positions
    std::vector<std::vector<int>> run_sites;
    std::vector<long long> a;
    std::vector<int> exceptional_uses;
    int corrections = 0;

    int size() const { return int(slots.size()); }
    int slot(int i) const {
        int n = size();
        return slots[size_t(((i % n) + n) % n)];
    }
};

Walk make_walk(const ReducedGraph& rg, Pattern pattern, std::vector<int> slots, int target_m,
               const RStar* rstar = nullptr);

// Site at walk position k must read (X, succ X, X) with letters (F, B).
void register_neutral_site(Walk& w, int position);
// Run of `run_len` F-steps winding along F, starting and ending at the same
// cluster (so run_len must be a multiple of |R|).
void register_run_site(Walk& w, int position, int run_len);

struct WalkStats {
    std::vector<long long> a;
    std::vector<int> n_q;
    std::vector<int> m_runs;
};
WalkStats stats_of(const Walk& w);

bool validate_walk(const Walk& w);
std::vector<long long> recount_assignments(const Walk& w);
// Walk edges whose underlying R-edge is not an F-edge (links to exceptional
// vertices count as off-F), per incident cluster.
std::vector<long long> off_f_incident_by_cluster(const Walk& w);
// Per cluster: assigned slots whose both neighbours sit on the F-adjacent
// clusters.
std::vector<long long> good_neighbour_counts(const Walk& w);

std::vector<int> greedy_embed(const ReducedGraph& rg, const Pattern& linear, int start_cluster);

// Exact orientation-walk search in R: clusters realising `linear` from
// cluster `from` to cluster `to`. `load` biases the witness towards
// low-loaded clusters.
std::optional<std::vector<int>> pattern_walk(const ReducedGraph& rg, const Pattern& linear,
                                             int from, int to,
                                             const std::vector<long long>* load = nullptr);

struct SubpathRef {
    int path = 0;
    int offset = 0;  // vertex offset of the subpath's first vertex
};

struct AssignmentOutcome {
    std::vector<int> phi;
    std::vector<std::vector<int>> fragments;
    std::vector<long long> a;
    std::vector<int> n_q;
    bool accepted = false;
    int attempts = 1;
};

// One uniform assignment of path starts to clusters, greedily embedded
// around F; `accepted` reports whether both concentration inequalities hold.
AssignmentOutcome random_assign_once(const ReducedGraph& rg, const std::vector<Pattern>& paths,
                                     const std::vector<SubpathRef>& q, double gamma, Rng& rng);

// Rejection-samples random_assign_once until accepted. enforce_regime checks
// s >= (8k/gamma^2) ln(4k) before sampling.
AssignmentOutcome random_assign(const ReducedGraph& rg, const std::vector<Pattern>& paths,
                                const std::vector<SubpathRef>& q, double gamma, Rng& rng,
                                int max_attempts = 1000, bool enforce_regime = true);

struct AzumaReport {
    double bound = 0;
    double empirical = 0;
    int exceed = 0;
    int trials = 0;
    double slack = 0;
    bool ok = false;
};

// Empirical tail of |X - mean| > lambda against 2 exp(-lambda^2 / (2 c^2 s))
// plus 3-sigma binomial slack; X = statistic of s independent uniforms.
AzumaReport azuma_tail_probe(double c, int s, double lambda, int trials,
                             const std::function<double(const std::vector<double>&)>& statistic,
                             Rng& rng);

// Far case: re-point one neutral pair (V_i, V_{i+1}, V_i) at an in-linked
// cluster to (V_i, v, V_i).
Walk incorporate_exceptional_far(const Walk& w, int exceptional_index);
// Close case: replace a long run starting at an in-linked V_i by
// V_i v V_j S(V_j, V_{i+3}) F ... F V_i of the same length.
Walk incorporate_exceptional_close(const Walk& w, int exceptional_index);

// Both balancers drive every a(i) to target_m, throwing SupplyError /
// NoTraverseError without touching the caller's walk when stuck.
Walk balance_far(const Walk& w);
Walk balance_close(const Walk& w);

bool verify_correspondence(const Walk& w, double gamma, double mu, int m);
// Smallest mu such that the third correspondence bullet holds.
double mu_of(const Walk& w, int m);

enum class CaseKind { far, close };

struct CaseThresholds {
    double far_min = 0.01;
    double close_max = 0.01;
};

CaseKind classify_case(const Pattern& p, const CaseThresholds& thr = {});

// Full desk-scale pipeline on one reduced graph (no exceptional vertices):
// chop, assign, join, balance, certify.
struct EmbedConfig {
    double alpha = 0.1;
    double gamma = 0.05;
    uint64_t seed = 0;
    int max_attempts = 10000;
    std::optional<CaseKind> forced_case;
    CaseThresholds thresholds;
};

struct EmbedPhase {
    std::string name;
    WalkStats stats;
};

struct EmbedResult {
    bool ok = false;
    std::string error;
    CaseKind kind = CaseKind::far;
    int s = 0, t = 0, r = 0;
    int attempts = 0;
    std::vector<int> phi;
    std::vector<EmbedPhase> phases;
    Walk walk;
    bool balanced = false;
    double mu = 0;
    bool correspondence_ok = false;
};

EmbedResult embed_cycle(const ReducedGraph& rg, const Pattern& pattern, const EmbedConfig& cfg);

}  // namespace oc
