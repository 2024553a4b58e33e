#pragma once

#include "core/bitrank.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sschemes {

// ============================================================================
// ALPHABET
// ============================================================================
//
// Symbols are mapped to dense classes:
//   class 0            sentinel, appended once at the end of the text
//   class 1            record separator between concatenated records
//   classes 2..1+sigma the regular alphabet, in character order
//   last class         optional wildcard ('N' for DNA): occurs in text or
//                      read but never matches anything, crossing it always
//                      costs an error
// Searches branch over the regular classes and the wildcard; the sentinel
// and the separator are never extended into, so no match can cross a
// record boundary.

class Alphabet {
  public:
    Alphabet() = default;

    static Alphabet dna(); // ACGT + N wildcard, case-insensitive
    static Alphabet plain(const std::string& symbols);
    static Alphabet fromSpec(const std::string& spec); // "dna" or symbol list

    int sigma() const {
        return static_cast<int>(symbols_.size());
    }
    uint8_t numClasses() const {
        return static_cast<uint8_t>(2 + symbols_.size() + (wildcard_ ? 1 : 0));
    }
    bool hasWildcard() const {
        return wildcard_;
    }
    uint8_t wildcardClass() const {
        return static_cast<uint8_t>(2 + symbols_.size());
    }

    // -1 when the character has no class
    int classOf(char c) const;
    char charOf(uint8_t cls) const;

    // regular symbol that can match itself
    bool matchable(uint8_t cls) const {
        return cls >= 2 && cls < 2 + symbols_.size();
    }
    // class a search may extend into (regular or wildcard)
    bool extendable(uint8_t cls) const {
        return cls >= 2 && cls < numClasses();
    }

    std::optional<uint8_t> complementClass(uint8_t cls) const; // DNA only

    std::string spec() const; // round-trippable description

    bool operator==(const Alphabet&) const = default;

  private:
    std::string symbols_; // sorted regular characters
    bool wildcard_ = false;

    friend class BidirectionalIndex;
};

// ============================================================================
// BIDIRECTIONAL INDEX
// ============================================================================

// Synchronized half-open ranges in the suffix arrays of the text and of the
// reversed text, both covering the occurrences of the same substring. The
// two ranges always have equal width.
struct IntervalPair {
    uint64_t fwdBegin = 0;
    uint64_t fwdEnd = 0;
    uint64_t revBegin = 0;
    uint64_t revEnd = 0;
    uint64_t length = 0; // matched substring length

    uint64_t width() const {
        return fwdEnd - fwdBegin;
    }
    bool empty() const {
        return fwdEnd == fwdBegin;
    }
};

struct IndexRecord {
    std::string name;
    uint64_t begin = 0; // concatenated-text coordinates
    uint64_t end = 0;
};

class BidirectionalIndex {
  public:
    BidirectionalIndex() = default;

    // Single unnamed record from raw characters. Throws naming the first
    // position whose character has no class.
    static BidirectionalIndex build(const std::string& text, const Alphabet& alphabet,
                                    uint32_t saRate = 32);
    // Multiple named records, concatenated with separators.
    static BidirectionalIndex build(const std::vector<std::pair<std::string, std::string>>& records,
                                    const Alphabet& alphabet, uint32_t saRate = 32);

    // --- queries -------------------------------------------------------------

    uint64_t textLength() const {
        return textLen;
    }
    const Alphabet& alphabet() const {
        return alpha;
    }
    uint32_t sampleRate() const {
        return saRate;
    }
    const std::vector<IndexRecord>& records() const {
        return recs;
    }
    // record containing the position (positions of separators or the
    // sentinel belong to no record and return SIZE_MAX)
    size_t recordOf(uint64_t pos) const;

    // interval of the empty substring: everything, width T+1
    IntervalPair whole() const;

    // occurrences of c before position i in either transform
    uint64_t occFwd(uint8_t cls, uint64_t i) const {
        return occF[cls].rank1(i);
    }
    uint64_t occRev(uint8_t cls, uint64_t i) const {
        return occR[cls].rank1(i);
    }
    const std::vector<uint8_t>& bwtFwd() const {
        return bwtF;
    }
    const std::vector<uint8_t>& bwtRev() const {
        return bwtR;
    }

    // extend the matched substring by one symbol; a zero-width result means
    // no occurrence and is a valid value
    IntervalPair extendLeft(const IntervalPair& pair, uint8_t cls) const;
    IntervalPair extendRight(const IntervalPair& pair, uint8_t cls) const;

    // children for every class at once; the per-class cumulative widths are
    // needed to keep the two ranges synchronized, so this costs the same as
    // a single extension
    void extendAllLeft(const IntervalPair& pair, IntervalPair* out) const;
    void extendAllRight(const IntervalPair& pair, IntervalPair* out) const;

    // text positions of the matched substring's first character, ascending
    std::vector<uint64_t> locate(const IntervalPair& pair) const;

    // --- persistence -----------------------------------------------------------

    void save(const std::string& path) const;
    static BidirectionalIndex load(const std::string& path);

  private:
    Alphabet alpha;
    uint64_t textLen = 0; // concatenated length, sentinel excluded
    uint32_t saRate = 32;
    std::vector<IndexRecord> recs;

    std::vector<uint8_t> bwtF, bwtR;
    std::vector<BitRank> occF, occR;
    std::vector<uint64_t> cTable; // suffixes starting with a class < c

    BitRank sampledRows;           // rows of the forward array with a sample
    std::vector<uint64_t> samples; // SA values at sampled rows, by sample rank

    static BidirectionalIndex buildClasses(std::vector<uint8_t> classes,
                                           std::vector<IndexRecord> records,
                                           const Alphabet& alphabet, uint32_t saRate);
    void finishStructures(); // rebuild ranks and c-table from the transforms
    uint64_t lfStep(uint64_t row) const;
};

} // namespace sschemes
