#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "orientcycle/rng.hpp"

namespace oc {

// Orientation word of a cycle or path: letter i describes the edge between
// traversal positions i and i+1. 'F' = the edge agrees with the traversal
// direction, 'B' = it is reversed. Closed words are cyclic (length >= 3).
class Pattern {
public:
    Pattern() = default;
    Pattern(std::string word, bool closed);

    static Pattern standard(int n);      // F^n, closed
    static Pattern antidirected(int n);  // FBFB..., closed, n even
    static Pattern random_closed(int n, Rng& rng);
    static Pattern random_linear(int len, Rng& rng);

    // "FFB" (linear), "FFB*" (closed), or "@antidirected:n", "@standard:n",
    // "@random:n:seed".
    static Pattern parse(const std::string& spec);

    int length() const { return int(word_.size()); }  // number of edges
    int vertex_count() const { return closed_ ? length() : length() + 1; }
    bool closed() const { return closed_; }
    const std::string& word() const { return word_; }
    std::string str() const { return closed_ ? word_ + "*" : word_; }

    char at(int i) const { return word_[index(i)]; }
    bool forward(int i) const { return at(i) == 'F'; }

    Pattern rotated(int k) const;  // closed only
    Pattern flipped() const;       // reverse every edge (F <-> B)
    Pattern reversed() const;      // traverse in the opposite direction
    // Linear slice of `len` letters starting at edge position `start`
    // (wraps cyclically when closed).
    Pattern subword(int start, int len) const;

    bool operator==(const Pattern& o) const { return closed_ == o.closed_ && word_ == o.word_; }

private:
    int index(int i) const {
        if (closed_) {
            int n = length();
            return ((i % n) + n) % n;
        }
        if (i < 0 || i >= length()) throw std::out_of_range("pattern position out of range");
        return i;
    }

    std::string word_;
    bool closed_ = false;
};

// Number of FB adjacencies (cyclic when closed): triples x,y,z with both
// edges oriented into y.
int neutral_pair_count(const Pattern& p);

struct NeutralPairSet {
    std::vector<int> positions;  // all FB positions, ascending
    std::vector<int> selected;   // greedy maximal subset, pairwise cyclic distance >= 3
};

// Greedy left-to-right maximal selection from index 0; |selected| >= n(C)/4.
NeutralPairSet spread_neutral_pairs(const Pattern& p);

// Start indices of a greedy maximal family of runs of `run_len` consecutive
// letters equal to `direction`, pairwise at distance >= 3. Runs do not wrap
// past position 0.
std::vector<int> find_long_runs(const Pattern& p, int run_len, char direction);

struct Segment {
    enum class Role { Q, P, QStar, PStar };
    Role role;
    int index;  // 1-based for Q/P, 0 otherwise
    int start;  // absolute edge position on the cycle
    int len;    // number of edges
};

struct ChopPlan {
    int n = 0, s = 0, t = 0, r = 0;
    int p_star_len = 0;
    int v_star = 0;
    bool v_star_valid = false;  // the 2|Q|/5 half-split condition held
    std::vector<Segment> segments;  // Q1 P1 ... Qs Ps Q* P*, in cycle order
};

// s = floor((log2 n)^2), r = 4*ceil(log2(4/alpha)),
// t = floor((n - (s+1)(r-1)) / (s+2)) - 1. Requires t >= 3r.
ChopPlan chop_cycle(const Pattern& p, double alpha);

struct SplitPatterns {
    Pattern p_a, p_b;     // linear subwords of the cycle
    int s_a = 0, s_b = 0;
    int pb_star_len = 0, pa_star_len = 0;
    int pb_start = 0;  // absolute edge position where P_B begins
};

// P_B := P_B* Q1 P1 ... Q_{s_B} P_{s_B} with |V(P_B)| = n_b; P_A is the
// complementary arc (sharing one vertex at each end).
SplitPatterns split_A_B(const Pattern& p, const ChopPlan& plan, int n_b);

}  // namespace oc
