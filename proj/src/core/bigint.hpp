#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sschemes {

// Unsigned arbitrary-precision counter. Edge counts overflow 32-bit words
// already for moderate read lengths and keep growing with R and K, so all
// trie totals are carried in this type. Only the operations counting needs
// are provided: addition, multiplication by a machine word, comparison and
// decimal conversion.
class BigCount {
  public:
    BigCount() = default;
    BigCount(uint64_t value);

    static BigCount fromDecimal(const std::string& text);

    BigCount& operator+=(const BigCount& other);
    friend BigCount operator+(BigCount a, const BigCount& b) {
        a += b;
        return a;
    }

    BigCount& mulSmall(uint64_t factor);
    friend BigCount operator*(BigCount a, uint64_t factor) {
        a.mulSmall(factor);
        return a;
    }

    // -1, 0, +1
    int compare(const BigCount& other) const;
    bool operator==(const BigCount& other) const {
        return limbs == other.limbs;
    }
    bool operator!=(const BigCount& other) const {
        return !(*this == other);
    }
    bool operator<(const BigCount& other) const {
        return compare(other) < 0;
    }
    bool operator<=(const BigCount& other) const {
        return compare(other) <= 0;
    }
    bool operator>(const BigCount& other) const {
        return compare(other) > 0;
    }
    bool operator>=(const BigCount& other) const {
        return compare(other) >= 0;
    }

    bool isZero() const {
        return limbs.empty();
    }
    bool fitsU64() const {
        return limbs.size() <= 2;
    }
    uint64_t toU64() const; // throws Error(Internal) when out of range
    double toDouble() const;
    std::string str() const;

  private:
    // little-endian base 2^32, no trailing zero limbs; empty means zero
    std::vector<uint32_t> limbs;

    void trim();
};

} // namespace sschemes
