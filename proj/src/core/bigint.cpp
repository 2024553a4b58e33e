#include "core/bigint.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cctype>

namespace sschemes {

BigCount::BigCount(uint64_t value) {
    if (value) {
        limbs.push_back(static_cast<uint32_t>(value));
        if (value >> 32)
            limbs.push_back(static_cast<uint32_t>(value >> 32));
    }
}

BigCount BigCount::fromDecimal(const std::string& text) {
    if (text.empty())
        throw Error(Errc::Parse, "empty decimal number");
    BigCount result;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(Errc::Parse, "invalid decimal digit in '" + text + "'");
        result.mulSmall(10);
        result += BigCount(static_cast<uint64_t>(c - '0'));
    }
    return result;
}

BigCount& BigCount::operator+=(const BigCount& other) {
    if (other.limbs.size() > limbs.size())
        limbs.resize(other.limbs.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs.size(); i++) {
        uint64_t sum = carry + limbs[i];
        if (i < other.limbs.size())
            sum += other.limbs[i];
        limbs[i] = static_cast<uint32_t>(sum);
        carry = sum >> 32;
    }
    if (carry)
        limbs.push_back(static_cast<uint32_t>(carry));
    return *this;
}

BigCount& BigCount::mulSmall(uint64_t factor) {
    if (factor == 0) {
        limbs.clear();
        return *this;
    }
    // split the factor so every partial product fits in 64 bits
    uint32_t fLo = static_cast<uint32_t>(factor);
    uint32_t fHi = static_cast<uint32_t>(factor >> 32);
    std::vector<uint32_t> out(limbs.size() + 3, 0);
    auto addAt = [&out](size_t pos, uint64_t v) {
        while (v) {
            uint64_t sum = v + out[pos];
            out[pos] = static_cast<uint32_t>(sum);
            v = sum >> 32;
            pos++;
        }
    };
    for (size_t i = 0; i < limbs.size(); i++) {
        uint64_t limb = limbs[i];
        addAt(i, limb * fLo);
        if (fHi)
            addAt(i + 1, limb * fHi);
    }
    limbs = std::move(out);
    trim();
    return *this;
}

int BigCount::compare(const BigCount& other) const {
    if (limbs.size() != other.limbs.size())
        return limbs.size() < other.limbs.size() ? -1 : 1;
    for (size_t i = limbs.size(); i-- > 0;) {
        if (limbs[i] != other.limbs[i])
            return limbs[i] < other.limbs[i] ? -1 : 1;
    }
    return 0;
}

uint64_t BigCount::toU64() const {
    if (!fitsU64())
        throw Error(Errc::Internal, "count does not fit in 64 bits: " + str());
    uint64_t v = 0;
    if (limbs.size() > 1)
        v = static_cast<uint64_t>(limbs[1]) << 32;
    if (!limbs.empty())
        v |= limbs[0];
    return v;
}

double BigCount::toDouble() const {
    double v = 0;
    for (size_t i = limbs.size(); i-- > 0;)
        v = v * 4294967296.0 + limbs[i];
    return v;
}

std::string BigCount::str() const {
    if (limbs.empty())
        return "0";
    // repeated division by 10^9, collecting 9-digit chunks
    std::vector<uint32_t> work = limbs;
    std::string out;
    while (!work.empty()) {
        uint64_t rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!work.empty() && work.back() == 0)
            work.pop_back();
        std::string chunk = std::to_string(rem);
        if (!work.empty())
            chunk.insert(0, 9 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

void BigCount::trim() {
    while (!limbs.empty() && limbs.back() == 0)
        limbs.pop_back();
}

} // namespace sschemes
