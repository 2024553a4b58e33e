#pragma once

#include <cstdint>
#include <vector>

namespace sschemes {

// Suffix array by induced sorting (linear time, linear extra space). The
// input must end with a sentinel value 0 that occurs nowhere else and is
// smaller than every other symbol.
std::vector<uint32_t> suffixArray(const std::vector<uint8_t>& textWithSentinel);

} // namespace sschemes
