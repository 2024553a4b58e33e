#include "core/errors.hpp"
#include "core/optimizer.hpp"

#include <algorithm>
#include <sstream>

namespace sschemes {

void ProblemSpec::validate() const {
    if (maxErrors < 0)
        throw Error(Errc::InvalidArgument, "K must be non-negative");
    if (numPieces < 1)
        throw Error(Errc::InvalidArgument, "P must be at least 1");
    if (maxSearches < 1)
        throw Error(Errc::InvalidArgument, "the search bound must be at least 1");
    if (readLength < static_cast<uint64_t>(numPieces))
        throw Error(Errc::InvalidArgument, "R must be at least P");
    if (sigma < 2)
        throw Error(Errc::InvalidArgument, "alphabet size must be at least 2");
}

size_t MipModel::countVars(char kind) const {
    return std::count_if(vars.begin(), vars.end(), [kind](const Var& v) { return v.kind == kind; });
}

size_t MipModel::countVarsPrefix(const std::string& prefix) const {
    return std::count_if(vars.begin(), vars.end(), [&prefix](const Var& v) {
        return v.name.compare(0, prefix.size(), prefix) == 0;
    });
}

size_t MipModel::countRowsPrefix(const std::string& prefix) const {
    return std::count_if(rows.begin(), rows.end(), [&prefix](const Row& r) {
        return r.name.compare(0, prefix.size(), prefix) == 0;
    });
}

namespace {

// C(l, d) * (sigma-1)^d for d = 0..K, the largest possible edge counts at
// level l. These are the activation constants of the recurrence rows.
std::vector<BigCount> maxEdgesAtLevel(uint64_t l, int K, int sigma) {
    std::vector<BigCount> row(K + 1);
    row[0] = BigCount(1);
    for (uint64_t i = 1; i <= l; i++)
        for (int j = std::min<int>(K, static_cast<int>(i)); j >= 1; j--)
            row[j] += row[j - 1];
    for (int d = 1; d <= K; d++)
        for (int i = 0; i < d; i++)
            row[d].mulSmall(sigma - 1);
    return row;
}

std::string idx(std::initializer_list<uint64_t> parts) {
    std::string out;
    for (uint64_t p : parts) {
        out += '_';
        out += std::to_string(p);
    }
    return out;
}

} // namespace

MipModel buildMip(const ProblemSpec& spec, bool strengthen, uint64_t sizeBudget) {
    spec.validate();
    if (spec.readLength % spec.numPieces != 0)
        throw Error(Errc::InvalidArgument,
                    "the integer program assumes equal pieces; R must be divisible by P "
                    "(got R=" +
                        std::to_string(spec.readLength) + ", P=" + std::to_string(spec.numPieces) +
                        ")");

    MipModel m;
    m.spec = spec;
    m.pieceLen = spec.readLength / spec.numPieces;
    m.strengthened = strengthen;
    m.patterns = enumerateMismatchPatterns(spec.maxErrors, spec.numPieces,
                                           std::vector<uint64_t>(spec.numPieces, m.pieceLen));

    const uint64_t S = spec.maxSearches;
    const uint64_t P = spec.numPieces;
    const uint64_t R = spec.readLength;
    const uint64_t K = spec.maxErrors;
    const uint64_t Q = m.patterns.size();

    if (Q * S > sizeBudget || R * (K + 1) * S > sizeBudget)
        throw Error(Errc::Budget,
                    "model too large: " + std::to_string(Q) + " patterns x " + std::to_string(S) +
                        " searches, " + std::to_string(R * (K + 1) * S) +
                        " recurrence cells (budget " + std::to_string(sizeBudget) + ")");

    auto var = [&m](const std::string& name, char kind) {
        m.vars.push_back({name, kind});
        return static_cast<uint32_t>(m.vars.size() - 1);
    };
    auto row = [&m](const std::string& name, char sense, SignedCoef rhs) -> MipModel::Row& {
        m.rows.push_back({name, {}, sense, std::move(rhs)});
        return m.rows.back();
    };

    // --- variables, grouped by family --------------------------------------
    std::vector<uint32_t> x(S * P * P);
    auto X = [&](uint64_t s, uint64_t i, uint64_t j) -> uint32_t& {
        return x[((s - 1) * P + (i - 1)) * P + (j - 1)];
    };
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t i = 1; i <= P; i++)
            for (uint64_t j = 1; j <= P; j++)
                X(s, i, j) = var("x" + idx({s, i, j}), 'B');

    std::vector<uint32_t> tp, tm;
    auto tIndex = [&](uint64_t s, uint64_t i, uint64_t j) {
        return ((s - 1) * (P - 2) + (i - 2)) * (P + 1) + (j - 1);
    };
    if (P >= 3) {
        tp.resize(S * (P - 2) * (P + 1));
        tm.resize(S * (P - 2) * (P + 1));
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t i = 2; i <= P - 1; i++)
                for (uint64_t j = 1; j <= P + 1; j++) {
                    tp[tIndex(s, i, j)] = var("tp" + idx({s, i, j}), 'B');
                    tm[tIndex(s, i, j)] = var("tm" + idx({s, i, j}), 'B');
                }
    }

    std::vector<uint32_t> zu(S * R * (K + 1)), zl(S * R * (K + 1));
    auto cell = [&](uint64_t s, uint64_t l, uint64_t d) {
        return ((s - 1) * R + (l - 1)) * (K + 1) + d;
    };
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t l = 1; l <= R; l++)
            for (uint64_t d = 0; d <= K; d++) {
                zu[cell(s, l, d)] = var("zu" + idx({s, l, d}), 'B');
                zl[cell(s, l, d)] = var("zl" + idx({s, l, d}), 'B');
            }

    std::vector<uint32_t> lam(Q * S);
    auto lamAt = [&](uint64_t q, uint64_t s) -> uint32_t& {
        return lam[(q - 1) * S + (s - 1)];
    };
    for (uint64_t q = 1; q <= Q; q++)
        for (uint64_t s = 1; s <= S; s++)
            lamAt(q, s) = var("lam" + idx({q, s}), 'B');

    std::vector<uint32_t> L(S * P), U(S * P);
    auto at = [&](std::vector<uint32_t>& v, uint64_t s, uint64_t i) -> uint32_t& {
        return v[(s - 1) * P + (i - 1)];
    };
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t i = 1; i <= P; i++) {
            at(L, s, i) = var("L" + idx({s, i}), 'I');
            at(U, s, i) = var("U" + idx({s, i}), 'I');
        }

    std::vector<uint32_t> n(S * R * (K + 1));
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t l = 1; l <= R; l++)
            for (uint64_t d = 0; d <= K; d++)
                n[cell(s, l, d)] = var("n" + idx({s, l, d}), 'C');

    m.objective = n;

    // --- assignment: one piece per iteration, one iteration per piece ------
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t j = 1; j <= P; j++) {
            auto& r = row("assign_piece" + idx({s, j}), 'E', SignedCoef(1));
            for (uint64_t i = 1; i <= P; i++)
                r.terms.push_back({X(s, i, j), SignedCoef(1)});
        }
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t i = 1; i <= P; i++) {
            auto& r = row("assign_iter" + idx({s, i}), 'E', SignedCoef(1));
            for (uint64_t j = 1; j <= P; j++)
                r.terms.push_back({X(s, i, j), SignedCoef(1)});
        }

    // --- connectivity -------------------------------------------------------
    // Written as a linearized absolute-value condition: after any iteration
    // the searched-piece indicator changes value exactly twice along j.
    if (P >= 3) {
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t i = 2; i <= P - 1; i++) {
                for (uint64_t j = 1; j <= P + 1; j++) {
                    auto& r = row("conn_diff" + idx({s, i, j}), 'E', SignedCoef(0));
                    if (j <= P)
                        for (uint64_t h = 1; h <= i; h++)
                            r.terms.push_back({X(s, h, j), SignedCoef(1)});
                    if (j >= 2)
                        for (uint64_t h = 1; h <= i; h++)
                            r.terms.push_back({X(s, h, j - 1), SignedCoef(-1)});
                    r.terms.push_back({tp[tIndex(s, i, j)], SignedCoef(-1)});
                    r.terms.push_back({tm[tIndex(s, i, j)], SignedCoef(1)});
                }
                auto& r = row("conn_two" + idx({s, i}), 'E', SignedCoef(2));
                for (uint64_t j = 1; j <= P + 1; j++) {
                    r.terms.push_back({tp[tIndex(s, i, j)], SignedCoef(1)});
                    r.terms.push_back({tm[tIndex(s, i, j)], SignedCoef(1)});
                }
            }
    }

    // --- recurrence activation ----------------------------------------------
    for (uint64_t l = 1; l <= R; l++) {
        uint64_t it = (l + m.pieceLen - 1) / m.pieceLen;
        int64_t slack = static_cast<int64_t>(it * m.pieceLen) - static_cast<int64_t>(l);
        std::vector<BigCount> caps = maxEdgesAtLevel(l, static_cast<int>(K), spec.sigma);
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t d = 0; d <= K; d++) {
                // d - (L_it - slack) + 1 <= (R+1) zl
                auto& rl = row("act_lo" + idx({s, l, d}), 'G',
                               SignedCoef(static_cast<int64_t>(d) + slack + 1));
                rl.terms.push_back({zl[cell(s, l, d)], SignedCoef(static_cast<int64_t>(R) + 1)});
                rl.terms.push_back({at(L, s, it), SignedCoef(1)});

                // U_it + 1 - d <= (K+1) zu
                auto& ru =
                    row("act_hi" + idx({s, l, d}), 'G', SignedCoef(1 - static_cast<int64_t>(d)));
                ru.terms.push_back({zu[cell(s, l, d)], SignedCoef(static_cast<int64_t>(K) + 1)});
                ru.terms.push_back({at(U, s, it), SignedCoef(-1)});

                // cap (zu + zl - 2) <= n_sld - n_s(l-1)d - (sigma-1) n_s(l-1)(d-1)
                // with the l-1 == 0 base cases folded into the constant
                const BigCount& cap = caps[d];
                auto& rn = row("recur" + idx({s, l, d}), 'G', SignedCoef(0));
                rn.terms.push_back({n[cell(s, l, d)], SignedCoef(1)});
                int64_t base = 0;
                if (l >= 2)
                    rn.terms.push_back({n[cell(s, l - 1, d)], SignedCoef(-1)});
                else if (d == 0)
                    base += 1; // n_{s,0,0}
                if (d >= 1) {
                    if (l >= 2)
                        rn.terms.push_back({n[cell(s, l - 1, d - 1)], SignedCoef(-(spec.sigma - 1))});
                    else if (d == 1)
                        base += spec.sigma - 1; // (sigma-1) n_{s,0,0}
                }
                rn.terms.push_back({zu[cell(s, l, d)], SignedCoef(cap, true)});
                rn.terms.push_back({zl[cell(s, l, d)], SignedCoef(cap, true)});
                if (base > 0) {
                    // only reachable at l == 1 where cap fits any machine word
                    rn.rhs = SignedCoef(base - 2 * static_cast<int64_t>(cap.toU64()));
                } else {
                    BigCount mag = cap;
                    mag.mulSmall(2);
                    rn.rhs = SignedCoef(std::move(mag), true);
                }
            }
    }

    // --- monotone cumulative bounds -----------------------------------------
    for (uint64_t s = 1; s <= S; s++)
        for (uint64_t i = 1; i + 1 <= P; i++) {
            auto& rl = row("mono_lo" + idx({s, i}), 'L', SignedCoef(0));
            rl.terms.push_back({at(L, s, i), SignedCoef(1)});
            rl.terms.push_back({at(L, s, i + 1), SignedCoef(-1)});
            auto& ru = row("mono_hi" + idx({s, i}), 'L', SignedCoef(0));
            ru.terms.push_back({at(U, s, i), SignedCoef(1)});
            ru.terms.push_back({at(U, s, i + 1), SignedCoef(-1)});
        }

    // --- coverage -------------------------------------------------------------
    // L_si + K(lam - 1) <= sum_{h<=i} a_{q,pi_h} <= U_si + K(1 - lam)
    for (uint64_t q = 1; q <= Q; q++) {
        const MismatchPattern& pat = m.patterns[q - 1];
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t i = 1; i <= P; i++) {
                auto& rl =
                    row("cover_lo" + idx({q, s, i}), 'G', SignedCoef(-static_cast<int64_t>(K)));
                for (uint64_t h = 1; h <= i; h++)
                    for (uint64_t j = 1; j <= P; j++)
                        if (pat.counts[j - 1])
                            rl.terms.push_back({X(s, h, j), SignedCoef(pat.counts[j - 1])});
                rl.terms.push_back({at(L, s, i), SignedCoef(-1)});
                rl.terms.push_back({lamAt(q, s), SignedCoef(-static_cast<int64_t>(K))});

                auto& ru =
                    row("cover_hi" + idx({q, s, i}), 'L', SignedCoef(static_cast<int64_t>(K)));
                for (uint64_t h = 1; h <= i; h++)
                    for (uint64_t j = 1; j <= P; j++)
                        if (pat.counts[j - 1])
                            ru.terms.push_back({X(s, h, j), SignedCoef(pat.counts[j - 1])});
                ru.terms.push_back({at(U, s, i), SignedCoef(-1)});
                ru.terms.push_back({lamAt(q, s), SignedCoef(static_cast<int64_t>(K))});
            }
        auto& r = row("cover_any" + idx({q}), 'G', SignedCoef(1));
        for (uint64_t s = 1; s <= S; s++)
            r.terms.push_back({lamAt(q, s), SignedCoef(1)});
    }

    // --- symmetry breaking and block restriction ------------------------------
    if (strengthen) {
        // reversal symmetry: pin piece P to iteration P of the first search
        auto& rv = row("sym_pin", 'E', SignedCoef(1));
        rv.terms.push_back({X(1, P, P), SignedCoef(1)});

        // index symmetry: sort searches by their first-iteration piece
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t j = 2; j <= P; j++) {
                auto& r = row("sym_sort" + idx({s, j}), 'L',
                              SignedCoef(static_cast<int64_t>(S - s + 1)));
                for (uint64_t t = s; t <= S; t++)
                    for (uint64_t k = 1; k <= j - 1; k++)
                        r.terms.push_back({X(t, 1, k), SignedCoef(1)});
                r.terms.push_back({X(s, 1, j), SignedCoef(static_cast<int64_t>(S - s + 1))});
            }

        // connectivity restricts late iterations to the outer pieces
        for (uint64_t s = 1; s <= S; s++)
            for (uint64_t i = (P + 1) / 2 + 1; i <= P; i++) {
                auto& r = row("sym_edge" + idx({s, i}), 'E', SignedCoef(1));
                for (uint64_t j = 1; j <= P - i + 1; j++)
                    r.terms.push_back({X(s, i, j), SignedCoef(1)});
                for (uint64_t j = i; j <= P; j++)
                    r.terms.push_back({X(s, i, j), SignedCoef(1)});
            }
    }

    return m;
}

// ============================================================================
// LP EXPORT
// ============================================================================

namespace {

void appendWrapped(std::string& out, std::string& line, const std::string& token) {
    if (line.size() + token.size() > 200) {
        out += line;
        out += '\n';
        line = "   ";
    }
    line += token;
}

} // namespace

std::string exportLp(const MipModel& m) {
    std::string out;
    out.reserve(1 << 20);
    out += "\\ search scheme model: K=" + std::to_string(m.spec.maxErrors) +
           " R=" + std::to_string(m.spec.readLength) + " P=" + std::to_string(m.spec.numPieces) +
           " S=" + std::to_string(m.spec.maxSearches) + " sigma=" + std::to_string(m.spec.sigma) +
           "\n";
    out += "Minimize\n";
    std::string line = " obj:";
    for (uint32_t v : m.objective)
        appendWrapped(out, line, " + " + m.vars[v].name);
    out += line;
    out += '\n';

    out += "Subject To\n";
    for (const auto& r : m.rows) {
        line = " " + r.name + ":";
        for (const auto& term : r.terms) {
            const SignedCoef& c = term.coef;
            std::string tok = c.negative ? " - " : " + ";
            if (!(c.magnitude == BigCount(1)))
                tok += c.magnitude.str() + " ";
            tok += m.vars[term.var].name;
            appendWrapped(out, line, tok);
        }
        const char* sense = r.sense == 'E' ? " = " : (r.sense == 'L' ? " <= " : " >= ");
        appendWrapped(out, line, sense + r.rhs.str());
        out += line;
        out += '\n';
    }

    // continuous and general-integer variables default to [0, +inf), which
    // is the intended domain, so no Bounds section is needed
    out += "Generals\n";
    line = "  ";
    for (const auto& v : m.vars)
        if (v.kind == 'I')
            appendWrapped(out, line, " " + v.name);
    out += line;
    out += '\n';

    out += "Binaries\n";
    line = "  ";
    for (const auto& v : m.vars)
        if (v.kind == 'B')
            appendWrapped(out, line, " " + v.name);
    out += line;
    out += '\n';
    out += "End\n";
    return out;
}

} // namespace sschemes
