#include "core/trie_calculus.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sschemes {

namespace {

// Cumulative piece lengths in pi order: cum[i] is the number of levels
// after finishing iteration i, cum[0] == 0.
std::vector<uint64_t> cumulativeLengths(const Search& search,
                                        const std::vector<uint64_t>& pieceLengths) {
    std::vector<uint64_t> cum(search.pieces() + 1, 0);
    for (int i = 0; i < search.pieces(); i++)
        cum[i + 1] = cum[i] + pieceLengths[search.pi[i] - 1];
    return cum;
}

void checkSearchInput(const Search& search, const std::vector<uint64_t>& pieceLengths, int K) {
    if (static_cast<int>(pieceLengths.size()) != search.pieces())
        throw Error(Errc::InvalidArgument, "piece length list does not match the search");
    ValidationReport report = validateSearch(search, search.pieces(), K);
    if (!report.ok())
        throw Error(Errc::Validation, "invalid search " + search.str() + ": " + report.str());
    if (search.isEmpty())
        throw Error(Errc::InvalidArgument,
                    "empty search " + search.str() + " has no trie; strip it first");
}

} // namespace

LevelBounds levelBounds(const Search& search, const std::vector<uint64_t>& pieceLengths, int K) {
    checkSearchInput(search, pieceLengths, K);
    std::vector<uint64_t> cum = cumulativeLengths(search, pieceLengths);
    uint64_t R = cum.back();

    LevelBounds bounds;
    bounds.lo.assign(R + 1, 0);
    bounds.hi.assign(R + 1, 0);
    int iter = 1;
    for (uint64_t l = 1; l <= R; l++) {
        while (l > cum[iter])
            iter++;
        int prevLower = iter >= 2 ? search.lower[iter - 2] : 0;
        // the lower bound of the running iteration becomes binding once the
        // positions left in the iteration cannot make up the difference
        int64_t lookahead =
            static_cast<int64_t>(search.lower[iter - 1]) - static_cast<int64_t>(cum[iter] - l);
        bounds.lo[l] = std::max<int64_t>(prevLower, lookahead);
        bounds.hi[l] = std::min(search.upper[iter - 1], bounds.hi[l - 1] + 1);
    }
    return bounds;
}

// ============================================================================
// EDGE COUNT RECURRENCE
// ============================================================================

EdgeCountTable countEdgesTable(const Search& search, const std::vector<uint64_t>& pieceLengths,
                               int sigma, int K) {
    if (sigma < 2)
        throw Error(Errc::InvalidArgument, "alphabet size must be at least 2");
    EdgeCountTable table;
    table.bounds = levelBounds(search, pieceLengths, K);
    table.R = table.bounds.levels();
    table.K = K;
    table.sigma = sigma;
    table.n.assign(table.R + 1, std::vector<BigCount>(K + 1));
    table.n[0][0] = BigCount(1);

    for (uint64_t l = 1; l <= table.R; l++) {
        int lo = std::max(table.bounds.lo[l], 0);
        int hi = std::min(table.bounds.hi[l], K);
        for (int d = lo; d <= hi; d++) {
            BigCount v = table.n[l - 1][d];
            if (d > 0) {
                BigCount branch = table.n[l - 1][d - 1];
                branch.mulSmall(sigma - 1);
                v += branch;
            }
            table.n[l][d] = std::move(v);
        }
    }
    return table;
}

BigCount EdgeCountTable::total() const {
    BigCount sum;
    for (uint64_t l = 1; l <= R; l++)
        for (int d = 0; d <= K; d++)
            sum += n[l][d];
    return sum;
}

BigCount EdgeCountTable::levelTotal(uint64_t level) const {
    BigCount sum;
    for (int d = 0; d <= K; d++)
        sum += n[level][d];
    return sum;
}

double EdgeCountTable::weightedTotal(std::span<const double> levelWeights) const {
    if (levelWeights.size() != R)
        throw Error(Errc::InvalidArgument, "need one weight per level");
    double sum = 0;
    for (uint64_t l = 1; l <= R; l++)
        sum += levelTotal(l).toDouble() * levelWeights[l - 1];
    return sum;
}

BigCount countEdgesSearch(const Search& search, const std::vector<uint64_t>& pieceLengths,
                          int sigma, int K) {
    return countEdgesTable(search, pieceLengths, sigma, K).total();
}

BigCount countEdgesScheme(const SearchScheme& scheme, uint64_t readLength, int sigma) {
    std::vector<uint64_t> lengths = scheme.pieceLengths(readLength);
    BigCount sum;
    for (const Search& s : scheme.searches) {
        if (s.isEmpty())
            continue;
        sum += countEdgesSearch(s, lengths, sigma, scheme.maxErrors);
    }
    return sum;
}

// ============================================================================
// BRUTE-FORCE TRIE ORACLE
// ============================================================================
//
// Walks the sigma-ary tree of candidate strings the way the search engine
// would, comparing enumerated symbols against a concrete read. A node
// survives when, at its level, the running error count does not exceed the
// upper bound of the running iteration and can still reach the iteration's
// lower bound with the positions that remain. Each surviving node is one
// trie edge. The per-level bound formulas are not consulted; agreement with
// the recurrence is what the tests check.

namespace {

struct TrieWalker {
    const Search& search;
    std::vector<uint64_t> cum; // cumulative lengths in pi order
    int sigma;
    std::vector<int> read; // read symbols in traversal order; all zeros
    uint64_t edges = 0;

    void walk(uint64_t level, int errors) {
        if (level == cum.back())
            return;
        uint64_t next = level + 1;
        // iteration containing the next level
        int iter = 1;
        while (next > cum[iter])
            iter++;
        for (int symbol = 0; symbol < sigma; symbol++) {
            int e = errors + (symbol != read[level] ? 1 : 0);
            if (e > search.upper[iter - 1])
                continue;
            if (e + static_cast<int64_t>(cum[iter] - next) < search.lower[iter - 1])
                continue;
            edges++;
            walk(next, e);
        }
    }
};

} // namespace

BigCount bruteForceTrieCount(const Search& search, const std::vector<uint64_t>& pieceLengths,
                             int sigma, int K, uint64_t stringBudget) {
    checkSearchInput(search, pieceLengths, K);
    if (sigma < 2)
        throw Error(Errc::InvalidArgument, "alphabet size must be at least 2");
    uint64_t R = 0;
    for (uint64_t len : pieceLengths)
        R += len;
    double strings = std::pow(static_cast<double>(sigma), static_cast<double>(R));
    if (strings > static_cast<double>(stringBudget))
        throw Error(Errc::Budget, "instance too large for explicit enumeration: sigma^R = " +
                                      std::to_string(strings) + " exceeds budget " +
                                      std::to_string(stringBudget));

    TrieWalker walker{search, cumulativeLengths(search, pieceLengths), sigma,
                      std::vector<int>(R, 0), 0};
    walker.walk(0, 0);
    return BigCount(walker.edges);
}

} // namespace sschemes
