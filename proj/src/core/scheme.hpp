#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sschemes {

// ============================================================================
// SEARCH SCHEME DOMAIN TYPES
// ============================================================================

// A single search: the order in which the pieces of a partitioned read are
// matched (a permutation, 1-based) together with cumulative lower and upper
// bounds on the number of errors after each iteration.
struct Search {
    std::vector<int> pi;
    std::vector<int> lower;
    std::vector<int> upper;

    int pieces() const {
        return static_cast<int>(pi.size());
    }

    // A search is empty when some lower bound exceeds the matching upper
    // bound; it enumerates nothing and is stripped before execution.
    bool isEmpty() const;

    std::string str() const; // "(231,011,012)" style, comma-separated if >9

    bool operator==(const Search&) const = default;
};

// Reproducible ordering used wherever searches are sorted: first-iteration
// piece, then pi, lower, upper lexicographically.
bool canonicalLess(const Search& a, const Search& b);

// Relabels pieces j -> P+1-j, i.e. the same search on the reversed read.
Search mirrorSearch(const Search& s);

struct ValidationIssue {
    enum Kind {
        StructuralError,    // wrong sequence lengths
        NotAPermutation,    // pi is not a permutation of 1..P
        ConnectivityBroken, // searched pieces stop forming a contiguous block
        BoundsNotMonotone,  // lower or upper decreases
        EmptySearch,        // lower[i] > upper[i]; a warning, not an error
    };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    // Valid means no violations; an empty search alone is still valid.
    bool ok() const;
    bool hasWarnings() const;
    std::string str() const;
};

// A scheme: P, K, the piece lengths of the partition and the searches.
struct SearchScheme {
    int numPieces = 0; // P
    int maxErrors = 0; // K
    std::optional<uint64_t> readLength;
    std::vector<Search> searches;

    // Piece lengths for the partition of a read of the given length,
    // following the partition convention (see partitionLengths).
    std::vector<uint64_t> pieceLengths(uint64_t readLen) const;
};

// A distribution of at most K errors over the P pieces.
struct MismatchPattern {
    std::vector<int> counts;

    int total() const;
    std::string str() const; // "011" style, comma-separated if any count > 9

    bool operator==(const MismatchPattern&) const = default;
    bool operator<(const MismatchPattern& o) const {
        return counts < o.counts;
    }
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<MismatchPattern> uncovered;
    // how many searches cover each pattern, aligned with the enumeration
    // order of enumerateMismatchPatterns
    std::vector<MismatchPattern> patterns;
    std::vector<uint32_t> multiplicity;
};

// ============================================================================
// OPERATIONS
// ============================================================================

// Splits a read of length R into P pieces whose lengths differ by at most
// one. longerFirst puts the ceil-length pieces in front; this is the
// convention the bundled optimized schemes were derived under and the one
// every default partition in this toolkit uses.
std::vector<uint64_t> partitionLengths(uint64_t R, int P, bool longerFirst = true);

ValidationReport validateSearch(const Search& s, int P, int K);

// Validates every search of the scheme plus the scheme-level structure.
ValidationReport validateScheme(const SearchScheme& scheme);

// All distributions of up to K errors over P pieces, each entry capped at
// min(piece length, K). Lexicographic order, duplicate-free.
std::vector<MismatchPattern> enumerateMismatchPatterns(int K, int P,
                                                       const std::vector<uint64_t>& pieceLengths);

// Number of patterns predicted by the binomial sum, valid when K does not
// exceed the smallest piece.
uint64_t mismatchPatternCountFormula(int K, int P);

// True iff the cumulative error count of the pattern, walked in pi order,
// stays within [lower[i], upper[i]] at every iteration.
bool covers(const Search& s, const MismatchPattern& q);

// Feasibility: every mismatch pattern covered by at least one search.
// Multiplicities are reported for redundancy analysis.
FeasibilityResult isFeasible(const SearchScheme& scheme);

// ============================================================================
// SCHEME FILE FORMAT (JSON)
// ============================================================================
//
//   {"K":2, "P":3, "R":6, "searches":[{"pi":[1,2,3],"L":[0,0,2],"U":[0,1,2]}]}
//
// R is optional. Piece indices are 1-based. Parsing validates every search
// and rejects schemes with hard violations; empty searches are accepted.

SearchScheme parseScheme(const std::string& jsonText);
SearchScheme loadScheme(const std::string& path);
std::string serializeScheme(const SearchScheme& scheme);
void saveScheme(const SearchScheme& scheme, const std::string& path);

} // namespace sschemes
