#pragma once

#include "core/bigint.hpp"
#include "core/scheme.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sschemes {

// ============================================================================
// ANALYTIC COST OF A SEARCH
// ============================================================================
//
// The cost proxy of a search is the number of edges of the trie of all
// substrings it enumerates when every substring occurs in the text. Edges
// are counted level by level through a recurrence over the number of
// accumulated errors, constrained per level by bounds derived from the
// search's cumulative [L, U] windows.

// Per-level error bounds of a search. lo[l] is the fewest errors any
// surviving string can carry at level l (the iteration lower bounds pull it
// up as the remaining positions of the iteration run out); hi[l] is the
// most (capped by the iteration upper bound and by one error per level).
// Index 0 is the root with lo[0] == hi[0] == 0.
struct LevelBounds {
    std::vector<int> lo;
    std::vector<int> hi;

    uint64_t levels() const {
        return lo.size() - 1;
    }
};

// pieceLengths are per piece index (1-based piece j has pieceLengths[j-1]);
// the search's pi decides the order they are traversed in.
LevelBounds levelBounds(const Search& search, const std::vector<uint64_t>& pieceLengths, int K);

// The n[l][d] table: number of trie edges at level l ending in nodes with d
// accumulated errors. Entries outside [lo[l], hi[l]] are zero.
struct EdgeCountTable {
    uint64_t R = 0;
    int K = 0;
    int sigma = 0;
    LevelBounds bounds;
    std::vector<std::vector<BigCount>> n; // n[l][d], l in 0..R, d in 0..K

    BigCount total() const;
    BigCount levelTotal(uint64_t level) const;

    // Weighted hook: per-level weights over levels 1..R. Uniform weights are
    // the supported cost model; the hook exists so a weighting scheme can be
    // dropped in without an interface change.
    double weightedTotal(std::span<const double> levelWeights) const;
};

EdgeCountTable countEdgesTable(const Search& search, const std::vector<uint64_t>& pieceLengths,
                               int sigma, int K);

BigCount countEdgesSearch(const Search& search, const std::vector<uint64_t>& pieceLengths,
                          int sigma, int K);

// Sum over all non-empty searches. Feasibility is not required; infeasible
// schemes are priced all the same. Piece lengths follow the partition
// convention for the given read length.
BigCount countEdgesScheme(const SearchScheme& scheme, uint64_t readLength, int sigma);

// Independent oracle: explicitly enumerates, in pi order against a concrete
// read, every string the search would enumerate, and counts distinct trie
// edges. Refuses when sigma^R exceeds the budget. Meant for verification at
// small sizes only.
BigCount bruteForceTrieCount(const Search& search, const std::vector<uint64_t>& pieceLengths,
                             int sigma, int K, uint64_t stringBudget = uint64_t(1) << 34);

} // namespace sschemes
