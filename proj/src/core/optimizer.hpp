#pragma once

#include "core/bigint.hpp"
#include "core/scheme.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sschemes {

// ============================================================================
// PROBLEM SPECIFICATION
// ============================================================================

struct ProblemSpec {
    int maxErrors = 0;   // K
    uint64_t readLength = 0; // R
    int numPieces = 1;   // P
    int maxSearches = 1; // upper bound on the number of searches
    int sigma = 4;

    void validate() const; // throws on out-of-range fields
};

// ============================================================================
// MIP MODEL
// ============================================================================
//
// Symbolic integer program whose optimum is the cheapest feasible scheme
// with at most maxSearches searches over equal-length pieces. The model is
// meant for export; solving is delegated to external MIP solvers. The
// enumerative solver below is the self-contained route.

struct SignedCoef {
    bool negative = false;
    BigCount magnitude;

    SignedCoef() = default;
    SignedCoef(int64_t v) : negative(v < 0), magnitude(static_cast<uint64_t>(v < 0 ? -v : v)) {
    }
    SignedCoef(BigCount m, bool neg = false) : negative(neg), magnitude(std::move(m)) {
    }
    std::string str() const {
        return (negative && !magnitude.isZero() ? "-" : "") + magnitude.str();
    }
};

struct MipModel {
    ProblemSpec spec;
    uint64_t pieceLen = 0; // m; the model assumes equal pieces, R == m * P
    std::vector<MismatchPattern> patterns;
    bool strengthened = true;

    struct Var {
        std::string name;
        char kind; // 'B' binary, 'I' general integer, 'C' continuous >= 0
    };
    struct Term {
        uint32_t var;
        SignedCoef coef;
    };
    struct Row {
        std::string name;
        std::vector<Term> terms;
        char sense; // 'L' <=, 'G' >=, 'E' ==
        SignedCoef rhs;
    };

    std::vector<Var> vars;
    std::vector<uint32_t> objective; // ids of the n variables, coefficient 1
    std::vector<Row> rows;

    size_t countVars(char kind) const;
    size_t countVarsPrefix(const std::string& prefix) const;
    size_t countRowsPrefix(const std::string& prefix) const;
};

// Builds the full model: piece-to-iteration assignment, connectivity
// linearization, edge-count recurrence activation, monotone bounds,
// pattern-coverage rows and, unless disabled, the symmetry-breaking and
// block-restriction rows that tighten the formulation. Requires P | R.
// Refuses when the pattern or recurrence blocks exceed the size budget.
MipModel buildMip(const ProblemSpec& spec, bool strengthen = true,
                  uint64_t sizeBudget = 4u << 20);

// Deterministic LP-format text for the model.
std::string exportLp(const MipModel& model);

// ============================================================================
// EXACT ENUMERATIVE SOLVER
// ============================================================================

struct OptimizerBudget {
    uint64_t maxNodes = UINT64_MAX;
    double maxSeconds = 1e18;
};

enum class ProofStatus {
    Optimal,
    FeasibleOnly,
    Infeasible,
    BudgetExhausted,
};

const char* proofStatusName(ProofStatus status);

struct IncumbentEvent {
    BigCount objective;
    double seconds; // since solve start
    uint64_t nodes;
};

struct OptimizationResult {
    SearchScheme scheme; // empty searches already stripped
    BigCount objective;  // recomputed from the scheme, not carried over
    ProofStatus status = ProofStatus::BudgetExhausted;
    uint64_t nodesExplored = 0;
    double seconds = 0;
    std::vector<IncumbentEvent> incumbents;
};

// Exhaustive branch-and-bound over candidate searches (connected
// permutations x monotone bound strings with entries in 0..K), schemes
// being multisets of at most maxSearches of them. Proves optimality when
// the space is exhausted within budget; otherwise returns the best
// incumbent. Among equal-objective optima the canonically smallest scheme
// is returned. Setting pruning = false disables every reduction except the
// multiset ordering; it is an oracle/debug mode.
OptimizationResult solveExact(const ProblemSpec& spec, const OptimizerBudget& budget = {},
                              bool pruning = true);

SearchScheme stripEmptySearches(const SearchScheme& scheme);

} // namespace sschemes
