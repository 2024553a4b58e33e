#include "core/errors.hpp"
#include "core/optimizer.hpp"
#include "core/trie_calculus.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>

namespace sschemes {

const char* proofStatusName(ProofStatus status) {
    switch (status) {
    case ProofStatus::Optimal:
        return "optimal";
    case ProofStatus::FeasibleOnly:
        return "feasible-only";
    case ProofStatus::Infeasible:
        return "infeasible";
    case ProofStatus::BudgetExhausted:
        return "budget-exhausted";
    }
    return "unknown";
}

SearchScheme stripEmptySearches(const SearchScheme& scheme) {
    SearchScheme out = scheme;
    out.searches.clear();
    for (const Search& s : scheme.searches)
        if (!s.isEmpty())
            out.searches.push_back(s);
    return out;
}

namespace {

// ----------------------------------------------------------------------------
// ENUMERATION PRIMITIVES
// ----------------------------------------------------------------------------

// Connected permutations arise from a start piece extended left or right one
// piece at a time, which is exactly what a bidirectional search can do.
std::vector<std::vector<int>> connectedPermutations(int P) {
    std::vector<std::vector<int>> out;
    for (int start = 1; start <= P; start++) {
        std::vector<int> perm{start};
        auto rec = [&](auto&& self, int lo, int hi) -> void {
            if (static_cast<int>(perm.size()) == P) {
                out.push_back(perm);
                return;
            }
            if (lo > 1) {
                perm.push_back(lo - 1);
                self(self, lo - 1, hi);
                perm.pop_back();
            }
            if (hi < P) {
                perm.push_back(hi + 1);
                self(self, lo, hi + 1);
                perm.pop_back();
            }
        };
        rec(rec, start, start);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Non-decreasing strings of length P over 0..K.
std::vector<std::vector<int>> monotoneStrings(int P, int K) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(P, 0);
    auto rec = [&](auto&& self, int pos, int prev) -> void {
        if (pos == P) {
            out.push_back(cur);
            return;
        }
        for (int v = prev; v <= K; v++) {
            cur[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Fixed-width bitset over the mismatch patterns.
struct Mask {
    std::vector<uint64_t> w;

    explicit Mask(size_t bits = 0) : w((bits + 63) / 64, 0) {
    }
    void set(size_t i) {
        w[i / 64] |= uint64_t(1) << (i % 64);
    }
    bool covers(const Mask& other) const { // other subset of this
        for (size_t i = 0; i < w.size(); i++)
            if (other.w[i] & ~w[i])
                return false;
        return true;
    }
    Mask& operator|=(const Mask& o) {
        for (size_t i = 0; i < w.size(); i++)
            w[i] |= o.w[i];
        return *this;
    }
    bool addsTo(const Mask& uncovered) const { // intersects uncovered
        for (size_t i = 0; i < w.size(); i++)
            if (w[i] & uncovered.w[i])
                return true;
        return false;
    }
    void clearCovered(Mask& uncovered) const {
        for (size_t i = 0; i < w.size(); i++)
            uncovered.w[i] &= ~w[i];
    }
    bool none() const {
        for (uint64_t word : w)
            if (word)
                return false;
        return true;
    }
    size_t count() const {
        size_t c = 0;
        for (uint64_t word : w)
            c += std::popcount(word);
        return c;
    }
    bool operator==(const Mask&) const = default;
    bool operator<(const Mask& o) const {
        return w < o.w;
    }
};

struct Candidate {
    Search search;
    BigCount cost;
    Mask mask;
};

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct Solver {
    const ProblemSpec& spec;
    const OptimizerBudget& budget;
    bool pruning;

    Clock clock;
    uint64_t nodes = 0;
    bool stopped = false;

    std::vector<uint64_t> pieceLengths;
    std::vector<MismatchPattern> patterns;
    Mask fullMask;
    std::vector<Candidate> candidates; // canonical order
    std::vector<size_t> mirrorRep;     // candidate -> index of mirrored-mask representative

    BigCount bestCost;
    std::vector<size_t> bestChoice;
    bool haveIncumbent = false;
    std::vector<IncumbentEvent> incumbents;

    explicit Solver(const ProblemSpec& sp, const OptimizerBudget& b, bool prune)
        : spec(sp), budget(b), pruning(prune) {
    }

    bool outOfBudget() {
        if (stopped)
            return true;
        if (nodes > budget.maxNodes || (nodes % 1024 == 0 && clock.seconds() > budget.maxSeconds))
            stopped = true;
        return stopped;
    }

    Search backtrackingSearch() const {
        Search bt;
        bt.pi.resize(spec.numPieces);
        std::iota(bt.pi.begin(), bt.pi.end(), 1);
        bt.lower.assign(spec.numPieces, 0);
        bt.upper.assign(spec.numPieces, spec.maxErrors);
        return bt;
    }

    Mask coverMask(const Search& s) const {
        Mask m(patterns.size());
        for (size_t qi = 0; qi < patterns.size(); qi++)
            if (covers(s, patterns[qi]))
                m.set(qi);
        return m;
    }

    void generateCandidates() {
        auto perms = connectedPermutations(spec.numPieces);
        auto bounds = monotoneStrings(spec.numPieces, spec.maxErrors);
        for (const auto& pi : perms) {
            for (const auto& lower : bounds) {
                for (const auto& upper : bounds) {
                    bool empty = false;
                    for (int i = 0; i < spec.numPieces; i++)
                        if (lower[i] > upper[i]) {
                            empty = true;
                            break;
                        }
                    if (empty)
                        continue;
                    Candidate c;
                    c.search = {pi, lower, upper};
                    c.mask = coverMask(c.search);
                    if (c.mask.none())
                        continue; // covers nothing, can never help
                    c.cost =
                        countEdgesSearch(c.search, pieceLengths, spec.sigma, spec.maxErrors);
                    candidates.push_back(std::move(c));
                }
                if (outOfBudget())
                    return;
            }
        }
    }

    // Keep one representative per coverage mask: the cheapest, canonically
    // smallest. Any optimal scheme can be rewritten onto representatives
    // without changing objective or canonical minimality.
    void reduceByMask() {
        std::map<Mask, size_t> best;
        for (size_t i = 0; i < candidates.size(); i++) {
            auto [it, inserted] = best.try_emplace(candidates[i].mask, i);
            if (!inserted) {
                const Candidate& a = candidates[i];
                const Candidate& b = candidates[it->second];
                int c = a.cost.compare(b.cost);
                if (c < 0 || (c == 0 && canonicalLess(a.search, b.search)))
                    it->second = i;
            }
        }
        std::vector<Candidate> keep;
        keep.reserve(best.size());
        std::vector<size_t> order;
        for (auto& [mask, i] : best)
            order.push_back(i);
        std::sort(order.begin(), order.end());
        for (size_t i : order)
            keep.push_back(std::move(candidates[i]));
        candidates = std::move(keep);
    }

    // Mirror pruning is only valid when all pieces have equal length;
    // otherwise relabelling pieces changes the partition and the cost.
    void computeMirrors() {
        mirrorRep.assign(candidates.size(), SIZE_MAX);
        if (!pruning || spec.readLength % spec.numPieces != 0)
            return;
        std::map<MismatchPattern, size_t> patternIndex;
        for (size_t qi = 0; qi < patterns.size(); qi++)
            patternIndex[patterns[qi]] = qi;
        std::map<Mask, size_t> byMask;
        for (size_t i = 0; i < candidates.size(); i++)
            byMask[candidates[i].mask] = i;
        for (size_t i = 0; i < candidates.size(); i++) {
            Mask mirrored(patterns.size());
            for (size_t qi = 0; qi < patterns.size(); qi++) {
                if (!(candidates[i].mask.w[qi / 64] >> (qi % 64) & 1))
                    continue;
                MismatchPattern rev = patterns[qi];
                std::reverse(rev.counts.begin(), rev.counts.end());
                mirrored.set(patternIndex.at(rev));
            }
            auto it = byMask.find(mirrored);
            if (it != byMask.end())
                mirrorRep[i] = it->second;
        }
    }

    void recordIncumbent(const std::vector<size_t>& choice, const BigCount& cost) {
        if (haveIncumbent && !(cost < bestCost))
            return;
        bestCost = cost;
        bestChoice = choice;
        haveIncumbent = true;
        incumbents.push_back({cost, clock.seconds(), nodes});
    }

    void seedIncumbents() {
        // the all-errors single search always covers every pattern
        Search bt = backtrackingSearch();
        for (size_t i = 0; i < candidates.size(); i++)
            if (candidates[i].search == bt) {
                recordIncumbent({i}, candidates[i].cost);
                break;
            }
        // greedy weighted cover, compared by cost per newly covered pattern
        Mask uncovered = fullMask;
        std::vector<size_t> picks;
        BigCount total;
        for (int round = 0; round < spec.maxSearches && !uncovered.none(); round++) {
            size_t pick = SIZE_MAX;
            uint64_t pickGain = 0;
            for (size_t i = 0; i < candidates.size(); i++) {
                Mask gain = candidates[i].mask;
                for (size_t wi = 0; wi < gain.w.size(); wi++)
                    gain.w[wi] &= uncovered.w[wi];
                uint64_t g = gain.count();
                if (g == 0)
                    continue;
                if (pick == SIZE_MAX) {
                    pick = i;
                    pickGain = g;
                    continue;
                }
                // candidates[i] better when cost_i / g_i < cost_pick / g_pick
                BigCount lhs = candidates[i].cost;
                lhs.mulSmall(pickGain);
                BigCount rhs = candidates[pick].cost;
                rhs.mulSmall(g);
                if (lhs < rhs) {
                    pick = i;
                    pickGain = g;
                }
            }
            if (pick == SIZE_MAX)
                break;
            picks.push_back(pick);
            total += candidates[pick].cost;
            candidates[pick].mask.clearCovered(uncovered);
        }
        if (uncovered.none() && !picks.empty()) {
            std::sort(picks.begin(), picks.end());
            recordIncumbent(picks, total);
        }
    }

    // --- optimal value -------------------------------------------------------
    // DFS over cost-ordered candidates, schemes as strictly increasing index
    // sequences (duplicates never pay for themselves).
    std::vector<size_t> costOrder;       // candidate indices sorted by cost
    std::vector<Mask> suffixUnionByCost; // union of masks from position i on

    void prepareCostOrder() {
        costOrder.resize(candidates.size());
        std::iota(costOrder.begin(), costOrder.end(), 0);
        std::stable_sort(costOrder.begin(), costOrder.end(), [this](size_t a, size_t b) {
            int c = candidates[a].cost.compare(candidates[b].cost);
            if (c != 0)
                return c < 0;
            return canonicalLess(candidates[a].search, candidates[b].search);
        });
        suffixUnionByCost.assign(costOrder.size() + 1, Mask(patterns.size()));
        for (size_t i = costOrder.size(); i-- > 0;) {
            suffixUnionByCost[i] = suffixUnionByCost[i + 1];
            suffixUnionByCost[i] |= candidates[costOrder[i]].mask;
        }
    }

    void valueDfs(size_t pos, int chosen, const BigCount& cost, const Mask& uncovered,
                  std::vector<size_t>& choice) {
        nodes++;
        if (outOfBudget())
            return;
        if (uncovered.none()) {
            recordIncumbent(choice, cost);
            return;
        }
        if (chosen == spec.maxSearches)
            return;
        for (size_t i = pos; i < costOrder.size(); i++) {
            if (!suffixUnionByCost[i].covers(uncovered))
                return; // the rest cannot cover what is missing
            const Candidate& c = candidates[costOrder[i]];
            BigCount next = cost + c.cost;
            if (haveIncumbent && next >= bestCost)
                return; // cost-sorted: nothing cheaper follows
            if (!c.mask.addsTo(uncovered))
                continue;
            if (pruning && chosen == 0) {
                size_t rep = mirrorRep[costOrder[i]];
                if (rep != SIZE_MAX && rep < costOrder[i])
                    continue; // mirrored scheme is enumerated from rep
            }
            Mask rest = uncovered;
            c.mask.clearCovered(rest);
            choice.push_back(costOrder[i]);
            valueDfs(i + 1, chosen + 1, next, rest, choice);
            choice.pop_back();
            if (stopped)
                return;
        }
    }

    // --- canonical reconstruction ---------------------------------------------
    // First feasible scheme, in canonical DFS order, whose cost equals the
    // proven optimum. Prefix-before-extension makes the first hit the
    // canonically smallest optimal scheme.
    std::vector<Mask> suffixUnionCanonical;
    std::vector<size_t> canonChoice;
    bool canonFound = false;

    void prepareCanonical() {
        suffixUnionCanonical.assign(candidates.size() + 1, Mask(patterns.size()));
        for (size_t i = candidates.size(); i-- > 0;) {
            suffixUnionCanonical[i] = suffixUnionCanonical[i + 1];
            suffixUnionCanonical[i] |= candidates[i].mask;
        }
    }

    void canonicalDfs(size_t pos, int chosen, const BigCount& cost, const Mask& uncovered,
                      std::vector<size_t>& choice) {
        if (canonFound)
            return;
        nodes++;
        if (outOfBudget())
            return;
        if (uncovered.none() && cost == bestCost) {
            canonChoice = choice;
            canonFound = true;
            return;
        }
        if (chosen == spec.maxSearches)
            return;
        for (size_t i = pos; i < candidates.size() && !canonFound && !stopped; i++) {
            if (!suffixUnionCanonical[i].covers(uncovered))
                return;
            const Candidate& c = candidates[i];
            BigCount next = cost + c.cost;
            if (next > bestCost)
                continue;
            if (!c.mask.addsTo(uncovered))
                continue;
            if (chosen == 0) {
                size_t rep = mirrorRep[i];
                if (rep != SIZE_MAX && rep < i)
                    continue;
            }
            Mask rest = uncovered;
            c.mask.clearCovered(rest);
            choice.push_back(i);
            canonicalDfs(i + 1, chosen + 1, next, rest, choice);
            choice.pop_back();
        }
    }

    // --- plain exhaustive mode -------------------------------------------------
    // No reductions at all beyond the multiset ordering; reference behaviour
    // for tests.
    void exhaustiveDfs(size_t pos, int chosen, const BigCount& cost, const Mask& uncovered,
                       std::vector<size_t>& choice) {
        nodes++;
        if (outOfBudget())
            return;
        if (uncovered.none()) {
            if (!haveIncumbent || cost < bestCost ||
                (cost == bestCost && lexSmaller(choice, bestChoice)))
                recordForced(choice, cost);
            // keep exploring: supersets cost more, no need to extend this one
            return;
        }
        if (chosen == spec.maxSearches)
            return;
        for (size_t i = pos; i < candidates.size(); i++) {
            Mask rest = uncovered;
            candidates[i].mask.clearCovered(rest);
            BigCount next = cost + candidates[i].cost;
            choice.push_back(i);
            exhaustiveDfs(i + 1, chosen + 1, next, rest, choice);
            choice.pop_back();
            if (stopped)
                return;
        }
    }

    static bool lexSmaller(const std::vector<size_t>& a, const std::vector<size_t>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

    void recordForced(const std::vector<size_t>& choice, const BigCount& cost) {
        bestCost = cost;
        bestChoice = choice;
        haveIncumbent = true;
        incumbents.push_back({cost, clock.seconds(), nodes});
    }

    OptimizationResult run() {
        spec.validate();
        pieceLengths = partitionLengths(spec.readLength, spec.numPieces);
        patterns = enumerateMismatchPatterns(spec.maxErrors, spec.numPieces, pieceLengths);
        fullMask = Mask(patterns.size());
        for (size_t i = 0; i < patterns.size(); i++)
            fullMask.set(i);

        generateCandidates();
        std::sort(candidates.begin(), candidates.end(),
                  [](const Candidate& a, const Candidate& b) {
                      return canonicalLess(a.search, b.search);
                  });

        OptimizationResult result;
        if (stopped) {
            // ran out of budget while pricing candidates; the backtracking
            // scheme is always available as a feasible answer
            Search bt = backtrackingSearch();
            result.scheme.numPieces = spec.numPieces;
            result.scheme.maxErrors = spec.maxErrors;
            result.scheme.readLength = spec.readLength;
            result.scheme.searches = {bt};
            result.objective = countEdgesScheme(result.scheme, spec.readLength, spec.sigma);
            result.status = ProofStatus::BudgetExhausted;
            result.nodesExplored = nodes;
            result.seconds = clock.seconds();
            return result;
        }

        if (pruning) {
            reduceByMask();
            computeMirrors();
            seedIncumbents();
            prepareCostOrder();
            std::vector<size_t> choice;
            valueDfs(0, 0, BigCount(), fullMask, choice);
            if (!stopped) {
                prepareCanonical();
                choice.clear();
                canonicalDfs(0, 0, BigCount(), fullMask, choice);
                if (canonFound)
                    bestChoice = canonChoice;
            }
        } else {
            computeMirrors(); // fills the disabled map
            std::vector<size_t> choice;
            exhaustiveDfs(0, 0, BigCount(), fullMask, choice);
        }

        result.scheme.numPieces = spec.numPieces;
        result.scheme.maxErrors = spec.maxErrors;
        result.scheme.readLength = spec.readLength;
        for (size_t i : bestChoice)
            result.scheme.searches.push_back(candidates[i].search);
        std::sort(result.scheme.searches.begin(), result.scheme.searches.end(), canonicalLess);
        result.scheme = stripEmptySearches(result.scheme);
        result.objective = countEdgesScheme(result.scheme, spec.readLength, spec.sigma);
        result.status = stopped ? ProofStatus::BudgetExhausted : ProofStatus::Optimal;
        result.nodesExplored = nodes;
        result.seconds = clock.seconds();
        result.incumbents = std::move(incumbents);
        return result;
    }
};

} // namespace

OptimizationResult solveExact(const ProblemSpec& spec, const OptimizerBudget& budget,
                              bool pruning) {
    Solver solver(spec, budget, pruning);
    return solver.run();
}

} // namespace sschemes
