#include "core/suffix_array.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <limits>

namespace sschemes {

namespace {

// Textbook SA-IS. Positions are classified S or L; left-most S positions
// anchor the recursion. Works on any integer alphabet whose smallest value
// 0 terminates the string uniquely.
template <typename Sym>
void sais(const Sym* s, int64_t n, int64_t sigma, int64_t* sa) {
    if (n == 1) {
        sa[0] = 0;
        return;
    }

    std::vector<bool> isS(n);
    isS[n - 1] = true;
    for (int64_t i = n - 2; i >= 0; i--)
        isS[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && isS[i + 1]);
    auto isLms = [&](int64_t i) { return i > 0 && isS[i] && !isS[i - 1]; };

    std::vector<int64_t> count(sigma, 0), bkt(sigma);
    for (int64_t i = 0; i < n; i++)
        count[s[i]]++;
    auto bucketEnds = [&]() {
        int64_t sum = 0;
        for (int64_t c = 0; c < sigma; c++) {
            sum += count[c];
            bkt[c] = sum;
        }
    };
    auto bucketStarts = [&]() {
        int64_t sum = 0;
        for (int64_t c = 0; c < sigma; c++) {
            bkt[c] = sum;
            sum += count[c];
        }
    };

    auto induce = [&]() {
        bucketStarts();
        for (int64_t i = 0; i < n; i++) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && !isS[j])
                sa[bkt[s[j]]++] = j;
        }
        bucketEnds();
        for (int64_t i = n - 1; i >= 0; i--) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && isS[j])
                sa[--bkt[s[j]]] = j;
        }
    };

    // round 1: LMS positions in arbitrary in-bucket order, then induce
    std::fill(sa, sa + n, -1);
    bucketEnds();
    for (int64_t i = 1; i < n; i++)
        if (isLms(i))
            sa[--bkt[s[i]]] = i;
    induce();

    // name the now-sorted LMS substrings
    std::vector<int64_t> name(n, -1);
    int64_t names = 0;
    int64_t prev = -1;
    for (int64_t i = 0; i < n; i++) {
        int64_t pos = sa[i];
        if (pos <= 0 || !isLms(pos))
            continue;
        bool same = false;
        if (prev >= 0) {
            for (int64_t d = 0;; d++) {
                bool endA = d > 0 && isLms(pos + d);
                bool endB = d > 0 && isLms(prev + d);
                if (s[pos + d] != s[prev + d] || isS[pos + d] != isS[prev + d])
                    break;
                if (endA || endB) {
                    same = endA && endB;
                    break;
                }
            }
        }
        if (!same)
            names++;
        name[pos] = names - 1;
        prev = pos;
    }

    std::vector<int64_t> lmsPos;
    std::vector<int64_t> reduced;
    for (int64_t i = 1; i < n; i++)
        if (isLms(i)) {
            lmsPos.push_back(i);
            reduced.push_back(name[i]);
        }

    std::vector<int64_t> lmsSorted(lmsPos.size());
    if (names == static_cast<int64_t>(reduced.size())) {
        for (size_t i = 0; i < reduced.size(); i++)
            lmsSorted[reduced[i]] = lmsPos[i];
    } else {
        std::vector<int64_t> subSa(reduced.size());
        sais<int64_t>(reduced.data(), reduced.size(), names, subSa.data());
        for (size_t i = 0; i < reduced.size(); i++)
            lmsSorted[i] = lmsPos[subSa[i]];
    }

    // round 2: LMS positions in final order, induce the full array
    std::fill(sa, sa + n, -1);
    bucketEnds();
    for (int64_t i = lmsSorted.size(); i-- > 0;)
        sa[--bkt[s[lmsSorted[i]]]] = lmsSorted[i];
    induce();
}

} // namespace

std::vector<uint32_t> suffixArray(const std::vector<uint8_t>& text) {
    if (text.empty())
        throw Error(Errc::InvalidArgument, "cannot index an empty text");
    if (text.back() != 0)
        throw Error(Errc::Internal, "suffix array input must end with the sentinel");
    if (text.size() > static_cast<size_t>(std::numeric_limits<uint32_t>::max()) - 1)
        throw Error(Errc::Unsupported, "text too long for 32-bit suffix array");

    std::vector<int64_t> sa(text.size());
    sais<uint8_t>(text.data(), static_cast<int64_t>(text.size()), 256, sa.data());
    std::vector<uint32_t> out(sa.size());
    for (size_t i = 0; i < sa.size(); i++)
        out[i] = static_cast<uint32_t>(sa[i]);
    return out;
}

} // namespace sschemes
