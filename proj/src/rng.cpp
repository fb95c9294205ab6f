#include "wdmsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace wdmsim {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, const RngContext& ctx)
{
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ (0x5C3A00000000ull + ctx.scenario_id));
    s = mix64(s ^ (0xC4A700000000ull + ctx.channel));
    s = mix64(s ^ (0x59A400000000ull + ctx.span));
    s = mix64(s ^ (0xF06E00000000ull + static_cast<std::uint32_t>(ctx.purpose)));
    return s;
}

RngStream::RngStream(std::uint64_t master_seed, const RngContext& ctx)
    : gen_(derive_seed(master_seed, ctx))
{
}

std::uint64_t RngStream::next_u64()
{
    return gen_();
}

double RngStream::uniform01()
{
    // 53-bit mantissa, shifted into (0, 1] so log() below is always finite.
    const std::uint64_t r = gen_() >> 11;
    return (static_cast<double>(r) + 1.0) * 0x1.0p-53;
}

double RngStream::gaussian()
{
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

std::complex<double> RngStream::complex_gaussian()
{
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace wdmsim
