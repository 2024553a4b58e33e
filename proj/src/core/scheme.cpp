#include "core/scheme.hpp"

#include "core/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sschemes {

// ============================================================================
// SEARCH
// ============================================================================

bool Search::isEmpty() const {
    for (size_t i = 0; i < lower.size() && i < upper.size(); i++)
        if (lower[i] > upper[i])
            return true;
    return false;
}

namespace {

std::string boundsString(const std::vector<int>& v) {
    bool wide = std::any_of(v.begin(), v.end(), [](int x) { return x > 9 || x < 0; });
    std::string out;
    for (size_t i = 0; i < v.size(); i++) {
        if (wide && i)
            out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace

std::string Search::str() const {
    return "(" + boundsString(pi) + "," + boundsString(lower) + "," + boundsString(upper) + ")";
}

bool canonicalLess(const Search& a, const Search& b) {
    int fa = a.pi.empty() ? 0 : a.pi.front();
    int fb = b.pi.empty() ? 0 : b.pi.front();
    if (fa != fb)
        return fa < fb;
    if (a.pi != b.pi)
        return a.pi < b.pi;
    if (a.lower != b.lower)
        return a.lower < b.lower;
    return a.upper < b.upper;
}

Search mirrorSearch(const Search& s) {
    Search m = s;
    int P = s.pieces();
    for (int& p : m.pi)
        p = P + 1 - p;
    return m;
}

// ============================================================================
// VALIDATION
// ============================================================================

bool ValidationReport::ok() const {
    for (const auto& i : issues)
        if (i.kind != ValidationIssue::EmptySearch)
            return false;
    return true;
}

bool ValidationReport::hasWarnings() const {
    for (const auto& i : issues)
        if (i.kind == ValidationIssue::EmptySearch)
            return true;
    return false;
}

std::string ValidationReport::str() const {
    if (issues.empty())
        return "ok";
    std::ostringstream out;
    for (size_t i = 0; i < issues.size(); i++) {
        if (i)
            out << "; ";
        out << issues[i].detail;
    }
    return out.str();
}

ValidationReport validateSearch(const Search& s, int P, int K) {
    ValidationReport report;
    auto add = [&report](ValidationIssue::Kind kind, const std::string& detail) {
        report.issues.push_back({kind, detail});
    };

    if (P < 1) {
        add(ValidationIssue::StructuralError, "number of pieces must be positive");
        return report;
    }
    if (s.pieces() != P || static_cast<int>(s.lower.size()) != P ||
        static_cast<int>(s.upper.size()) != P) {
        add(ValidationIssue::StructuralError,
            "pi/L/U must all have length " + std::to_string(P));
        return report;
    }

    std::vector<bool> seen(P + 1, false);
    bool perm = true;
    for (int p : s.pi) {
        if (p < 1 || p > P || seen[p]) {
            perm = false;
            break;
        }
        seen[p] = true;
    }
    if (!perm)
        add(ValidationIssue::NotAPermutation,
            "pi " + boundsString(s.pi) + " is not a permutation of 1.." + std::to_string(P));

    if (perm) {
        // pieces searched so far must stay a contiguous block
        int lo = s.pi[0], hi = s.pi[0];
        for (int i = 1; i < P; i++) {
            int p = s.pi[i];
            if (p == lo - 1)
                lo = p;
            else if (p == hi + 1)
                hi = p;
            else {
                add(ValidationIssue::ConnectivityBroken,
                    "piece " + std::to_string(p) + " at iteration " + std::to_string(i + 1) +
                        " is not adjacent to the block " + std::to_string(lo) + ".." +
                        std::to_string(hi));
                break;
            }
        }
    }

    for (int i = 0; i + 1 < P; i++) {
        if (s.lower[i] > s.lower[i + 1]) {
            add(ValidationIssue::BoundsNotMonotone,
                "L decreases from iteration " + std::to_string(i + 1) + " to " +
                    std::to_string(i + 2));
            break;
        }
    }
    for (int i = 0; i + 1 < P; i++) {
        if (s.upper[i] > s.upper[i + 1]) {
            add(ValidationIssue::BoundsNotMonotone,
                "U decreases from iteration " + std::to_string(i + 1) + " to " +
                    std::to_string(i + 2));
            break;
        }
    }
    for (int v : s.lower)
        if (v < 0) {
            add(ValidationIssue::StructuralError, "negative lower bound");
            break;
        }
    for (int v : s.upper)
        if (v < 0) {
            add(ValidationIssue::StructuralError, "negative upper bound");
            break;
        }
    (void)K;

    if (s.isEmpty())
        add(ValidationIssue::EmptySearch, "search " + s.str() + " is empty (L exceeds U)");

    return report;
}

ValidationReport validateScheme(const SearchScheme& scheme) {
    ValidationReport report;
    if (scheme.numPieces < 1)
        report.issues.push_back({ValidationIssue::StructuralError, "P must be at least 1"});
    if (scheme.maxErrors < 0)
        report.issues.push_back({ValidationIssue::StructuralError, "K must be non-negative"});
    if (scheme.readLength && *scheme.readLength < static_cast<uint64_t>(scheme.numPieces))
        report.issues.push_back(
            {ValidationIssue::StructuralError, "R must be at least P (pieces cannot be empty)"});
    for (size_t i = 0; i < scheme.searches.size(); i++) {
        ValidationReport sub = validateSearch(scheme.searches[i], scheme.numPieces, scheme.maxErrors);
        for (auto& issue : sub.issues) {
            issue.detail = "search " + std::to_string(i + 1) + ": " + issue.detail;
            report.issues.push_back(issue);
        }
    }
    return report;
}

// ============================================================================
// PARTITION AND MISMATCH PATTERNS
// ============================================================================

std::vector<uint64_t> partitionLengths(uint64_t R, int P, bool longerFirst) {
    if (P < 1)
        throw Error(Errc::InvalidArgument, "P must be at least 1");
    if (R < static_cast<uint64_t>(P))
        throw Error(Errc::InvalidArgument,
                    "cannot split a read of length " + std::to_string(R) + " into " +
                        std::to_string(P) + " non-empty pieces");
    uint64_t base = R / P;
    uint64_t rem = R % P;
    std::vector<uint64_t> lengths(P, base);
    for (uint64_t j = 0; j < rem; j++)
        lengths[longerFirst ? j : P - 1 - j] += 1;
    return lengths;
}

std::vector<uint64_t> SearchScheme::pieceLengths(uint64_t readLen) const {
    return partitionLengths(readLen, numPieces);
}

std::vector<MismatchPattern> enumerateMismatchPatterns(int K, int P,
                                                       const std::vector<uint64_t>& pieceLengths) {
    if (K < 0 || P < 1)
        throw Error(Errc::InvalidArgument, "pattern enumeration needs K >= 0 and P >= 1");
    if (static_cast<int>(pieceLengths.size()) != P)
        throw Error(Errc::InvalidArgument, "piece length list must have P entries");
    for (uint64_t len : pieceLengths)
        if (len == 0)
            throw Error(Errc::InvalidArgument, "piece lengths must be positive");

    std::vector<MismatchPattern> out;
    std::vector<int> counts(P, 0);
    // lexicographic recursion over per-piece error counts
    auto rec = [&](auto&& self, int j, int used) -> void {
        if (j == P) {
            out.push_back({counts});
            return;
        }
        int cap = static_cast<int>(std::min<uint64_t>(pieceLengths[j], K));
        for (int v = 0; v <= cap && used + v <= K; v++) {
            counts[j] = v;
            self(self, j + 1, used + v);
        }
        counts[j] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

uint64_t mismatchPatternCountFormula(int K, int P) {
    // sum over h of C(h+P-1, h)
    uint64_t total = 0;
    for (int h = 0; h <= K; h++) {
        uint64_t c = 1;
        for (int i = 1; i <= h; i++)
            c = c * (h + P - 1 - h + i) / i; // C(h+P-1, h) built factor by factor
        total += c;
    }
    return total;
}

bool covers(const Search& s, const MismatchPattern& q) {
    int cum = 0;
    for (size_t i = 0; i < s.pi.size(); i++) {
        cum += q.counts[s.pi[i] - 1];
        if (cum < s.lower[i] || cum > s.upper[i])
            return false;
    }
    return true;
}

int MismatchPattern::total() const {
    int t = 0;
    for (int c : counts)
        t += c;
    return t;
}

std::string MismatchPattern::str() const {
    return boundsString(counts);
}

FeasibilityResult isFeasible(const SearchScheme& scheme) {
    FeasibilityResult result;
    uint64_t R = scheme.readLength ? *scheme.readLength : 0;
    std::vector<uint64_t> lengths;
    if (R >= static_cast<uint64_t>(scheme.numPieces))
        lengths = partitionLengths(R, scheme.numPieces);
    else
        // no read length known: cap by K only
        lengths.assign(scheme.numPieces, std::max<uint64_t>(1, scheme.maxErrors));
    result.patterns = enumerateMismatchPatterns(scheme.maxErrors, scheme.numPieces, lengths);
    result.multiplicity.assign(result.patterns.size(), 0);
    for (size_t qi = 0; qi < result.patterns.size(); qi++) {
        for (const Search& s : scheme.searches) {
            if (s.isEmpty())
                continue;
            if (covers(s, result.patterns[qi]))
                result.multiplicity[qi]++;
        }
        if (result.multiplicity[qi] == 0)
            result.uncovered.push_back(result.patterns[qi]);
    }
    result.feasible = result.uncovered.empty();
    return result;
}

// ============================================================================
// SCHEME FILE FORMAT
// ============================================================================

namespace {

std::vector<int> intArray(const nlohmann::json& j, const std::string& key, size_t searchIdx) {
    if (!j.contains(key) || !j[key].is_array())
        throw Error(Errc::Parse,
                    "search " + std::to_string(searchIdx + 1) + ": missing array \"" + key + "\"");
    std::vector<int> out;
    for (const auto& v : j[key]) {
        if (!v.is_number_integer())
            throw Error(Errc::Parse, "search " + std::to_string(searchIdx + 1) + ": \"" + key +
                                         "\" must contain integers");
        out.push_back(v.get<int>());
    }
    return out;
}

} // namespace

SearchScheme parseScheme(const std::string& jsonText) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(jsonText);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, std::string("scheme file is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw Error(Errc::Parse, "scheme file must be a JSON object");
    if (!j.contains("K") || !j["K"].is_number_integer())
        throw Error(Errc::Parse, "scheme file needs an integer \"K\"");
    if (!j.contains("P") || !j["P"].is_number_integer())
        throw Error(Errc::Parse, "scheme file needs an integer \"P\"");
    if (!j.contains("searches") || !j["searches"].is_array())
        throw Error(Errc::Parse, "scheme file needs a \"searches\" array");

    SearchScheme scheme;
    scheme.maxErrors = j["K"].get<int>();
    scheme.numPieces = j["P"].get<int>();
    if (j.contains("R")) {
        if (!j["R"].is_number_integer() || j["R"].get<int64_t>() < 0)
            throw Error(Errc::Parse, "\"R\" must be a non-negative integer");
        scheme.readLength = j["R"].get<uint64_t>();
    }
    for (size_t i = 0; i < j["searches"].size(); i++) {
        const auto& js = j["searches"][i];
        if (!js.is_object())
            throw Error(Errc::Parse, "search " + std::to_string(i + 1) + " must be an object");
        Search s;
        s.pi = intArray(js, "pi", i);
        s.lower = intArray(js, "L", i);
        s.upper = intArray(js, "U", i);
        scheme.searches.push_back(std::move(s));
    }

    ValidationReport report = validateScheme(scheme);
    if (!report.ok())
        throw Error(Errc::Validation, "scheme rejected: " + report.str());
    return scheme;
}

SearchScheme loadScheme(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::Io, "cannot open scheme file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parseScheme(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string serializeScheme(const SearchScheme& scheme) {
    nlohmann::ordered_json j;
    j["K"] = scheme.maxErrors;
    j["P"] = scheme.numPieces;
    if (scheme.readLength)
        j["R"] = *scheme.readLength;
    j["searches"] = nlohmann::ordered_json::array();
    for (const Search& s : scheme.searches) {
        nlohmann::ordered_json js;
        js["pi"] = s.pi;
        js["L"] = s.lower;
        js["U"] = s.upper;
        j["searches"].push_back(std::move(js));
    }
    return j.dump(2) + "\n";
}

void saveScheme(const SearchScheme& scheme, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::Io, "cannot write scheme file: " + path);
    out << serializeScheme(scheme);
}

} // namespace sschemes
