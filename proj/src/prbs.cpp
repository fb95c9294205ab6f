#include "wdmsim/prbs.hpp"

#include <stdexcept>
#include <string>

namespace wdmsim {

namespace {

// Second tap position t for x^m + x^t + 1; all pairs give maximal length.
int second_tap(int order)
{
    switch (order) {
    case 7: return 6;
    case 9: return 5;
    case 11: return 9;
    case 15: return 14;
    case 23: return 18;
    case 31: return 28;
    default:
        throw std::invalid_argument("unsupported PRBS order " + std::to_string(order) +
                                    " (supported: 7, 9, 11, 15, 23, 31)");
    }
}

} // namespace

BitSequence prbs_generate(int order, std::uint32_t seed, std::size_t n_bits)
{
    const int t = second_tap(order);
    const std::uint32_t mask = (order == 31) ? 0x7FFFFFFFu : ((1u << order) - 1u);
    std::uint32_t state = seed & mask;
    if (state == 0)
        throw std::invalid_argument("PRBS seed must be non-zero in the register width");

    BitSequence out(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        const std::uint32_t bit = state & 1u;
        out[i] = static_cast<std::uint8_t>(bit);
        const std::uint32_t fb = (state ^ (state >> (order - t))) & 1u;
        state = (state >> 1) | (fb << (order - 1));
    }
    return out;
}

BitSequence fixed_pattern(const char* name, std::size_t n_bits)
{
    const std::string p(name);
    BitSequence out(n_bits, 0);
    if (p == "alt") {
        for (std::size_t i = 0; i < n_bits; ++i)
            out[i] = static_cast<std::uint8_t>(i & 1u);
    } else if (p == "ones") {
        for (auto& b : out)
            b = 1;
    } else if (p == "zeros") {
        // already zero
    } else if (p == "isolated") {
        for (std::size_t i = 0; i < n_bits; i += 32)
            out[i] = 1;
    } else {
        throw std::invalid_argument("unknown fixed pattern '" + p + "'");
    }
    return out;
}

} // namespace wdmsim
