#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orientcycle/graph.hpp"
#include "orientcycle/pattern.hpp"

namespace oc {

enum class Verdict { found, none, unknown };

enum class SearchMode { cycle, path };

struct Embedding {
    std::vector<int> vertices;  // injective; v_i -> v_{i+1} per pattern letter
};

struct EmbeddingProblem {
    const OrientedGraph* host = nullptr;
    Pattern pattern;
    std::optional<int> from, to;      // path anchors
    std::optional<Bitset> forbidden;  // host vertices the embedding must avoid
    SearchMode mode = SearchMode::cycle;
};

struct SearchOptions {
    uint64_t node_budget = 1'000'000'000;  // extension attempts; exceeding -> unknown
    int threads = 1;
    // Cycle mode: canonicalise on the smallest used vertex and try every
    // distinct rotation of the pattern, instead of anchoring position 0 at
    // every vertex with the pattern alignment fixed.
    bool rotate_pattern = false;
    bool degree_prune = true;
};

struct SearchResult {
    Verdict verdict = Verdict::none;
    std::optional<Embedding> embedding;
    uint64_t nodes = 0;
};

// Exhaustive backtracking search; extends the partial arc at whichever end
// has fewer candidate extensions.
SearchResult find_pattern_cycle(const EmbeddingProblem& problem, const SearchOptions& opt = {});
SearchResult find_pattern_path(const EmbeddingProblem& problem, const SearchOptions& opt = {});

struct LongestResult {
    int length = 0;               // max even l >= 4 whose alternating cycle embeds; 0 if none
    bool exact = true;            // false if some length hit the node budget
    uint64_t nodes = 0;
    std::optional<Embedding> embedding;
};

LongestResult longest_anti_directed_cycle(const OrientedGraph& host,
                                          const SearchOptions& opt = {});

// Independent oracle: enumerate every injective vertex sequence (no pruning)
// and check the pattern on each. Host order must be <= 9.
SearchResult brute_force_oracle(const EmbeddingProblem& problem);

// Independent embedding validator (shared by tests and search soundness
// checks).
bool check_embedding(const EmbeddingProblem& problem, const Embedding& emb);

}  // namespace oc
