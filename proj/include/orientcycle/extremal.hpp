#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orientcycle/graph.hpp"

namespace oc {

// The four-part witness of the (3n-4)/8 lower bound: A and C are regular
// tournaments on 2m+1 vertices, B and D independent sets of the same size,
// all A->B, B->C, C->D, D->A edges present, and B<->D a near-regular
// bipartite tournament.
struct ExtremalWitness {
    OrientedGraph graph;
    int m = 0;
    Bitset part_a, part_b, part_c, part_d;
};

// Vertex i beats i+1, ..., i+(q-1)/2 (mod q); every vertex has
// in-degree = out-degree = (q-1)/2. q must be odd.
OrientedGraph rotational_tournament(int q);

ExtremalWitness haggkvist_graph(int m);

// Structural audit of the witness invariants; returns human-readable
// violations (empty = ok).
std::vector<std::string> audit_witness(const ExtremalWitness& w);

// Finite automaton over the 4-part quotient: can an alternating walk that
// starts in B ever reach A? (The witness construction makes this false.)
bool quotient_alternating_reaches_A(const ExtremalWitness& w);

struct ExtremalReport {
    int n = 0;
    int delta0 = 0;
    int delta0_expected = 0;
    bool delta0_ok = false;
    bool solver_ran = false;
    bool anti_hamilton_exists = true;   // expect false
    int longest_anti_directed = -1;     // exact when exhaustive
    bool standard_hamilton_exists = false;
    bool exhaustive = false;            // false when the node budget was hit
    uint64_t nodes = 0;
};

// node_budget 0 means unlimited. run_solver=false restricts the report to the
// construction audit (used for m >= 2 where exhaustive search is infeasible).
ExtremalReport verify_extremal(const ExtremalWitness& w, bool run_solver = true,
                               uint64_t node_budget = 0, int threads = 1);

}  // namespace oc
