#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wdmsim {

using BitSequence = std::vector<std::uint8_t>;

/// Maximal-length PRBS from a Fibonacci LFSR (x^m + x^t + 1 family).
/// Supported orders: 7, 9, 11, 15, 23, 31. seed is the initial register
/// state; it is masked to the register width and must not be all zero.
/// The same (order, seed) always yields the same sequence.
BitSequence prbs_generate(int order, std::uint32_t seed, std::size_t n_bits);

/// Fixed patterns used by calibration scenarios: "alt" = 1010...,
/// "ones", "zeros", "isolated" = single 1 every 32 bits.
BitSequence fixed_pattern(const char* name, std::size_t n_bits);

} // namespace wdmsim
