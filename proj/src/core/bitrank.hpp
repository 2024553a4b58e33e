#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sschemes {

// Bitvector with constant-time rank: one cumulative count per 8-word block
// plus popcounts within the block.
class BitRank {
  public:
    BitRank() = default;

    explicit BitRank(size_t bits) : nbits(bits), words((bits + 63) / 64, 0) {
    }

    void set(size_t i) {
        words[i / 64] |= uint64_t(1) << (i % 64);
    }

    bool get(size_t i) const {
        return words[i / 64] >> (i % 64) & 1;
    }

    // call once after all set() calls
    void finish() {
        blocks.assign(words.size() / 8 + 1, 0);
        uint64_t sum = 0;
        for (size_t w = 0; w < words.size(); w++) {
            if (w % 8 == 0)
                blocks[w / 8] = sum;
            sum += std::popcount(words[w]);
        }
        total = sum;
    }

    // ones in [0, i)
    uint64_t rank1(size_t i) const {
        size_t w = i / 64;
        uint64_t r = blocks[w / 8];
        for (size_t k = w & ~size_t(7); k < w; k++)
            r += std::popcount(words[k]);
        if (i % 64)
            r += std::popcount(words[w] & ((uint64_t(1) << (i % 64)) - 1));
        return r;
    }

    uint64_t ones() const {
        return total;
    }
    size_t size() const {
        return nbits;
    }

  private:
    size_t nbits = 0;
    uint64_t total = 0;
    std::vector<uint64_t> words;
    std::vector<uint64_t> blocks;
};

} // namespace sschemes
