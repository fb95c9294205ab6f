#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace wdmsim {

/// Where in the simulation a noise stream is consumed. Each (seed, scenario,
/// channel, span, purpose) tuple gets its own generator, so adding channels
/// or spans never perturbs the noise drawn elsewhere.
enum class NoisePurpose : std::uint32_t {
    ase = 1,
    shot = 2,
    thermal = 3,
    test = 99,
};

struct RngContext {
    std::uint32_t scenario_id = 0;
    std::uint32_t channel = 0;
    std::uint32_t span = 0;
    NoisePurpose purpose = NoisePurpose::test;
};

/// SplitMix64-style avalanche; used to derive stream seeds from context.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, const RngContext& ctx);

/// Deterministic normal/uniform source. mt19937_64 output is fixed by the
/// standard and the Gaussian transform is done by hand (Box-Muller), because
/// std::normal_distribution is implementation-defined and would break
/// byte-identical reruns across toolchains.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, const RngContext& ctx);

    std::uint64_t next_u64();
    double uniform01(); // in (0, 1]
    double gaussian();  // standard normal

    /// x + iy with independent standard normal x, y (so E|z|^2 = 2).
    std::complex<double> complex_gaussian();

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace wdmsim
