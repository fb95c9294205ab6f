#pragma once

#include "wdmsim/prbs.hpp"
#include "wdmsim/rng.hpp"
#include "wdmsim/signal.hpp"

#include <complex>
#include <cstdint>

namespace wdmsim {

struct ReceiverSpec {
    double responsivity = 1.0;            // A/W
    double dark_current = 10e-9;          // A
    double thermal_noise_density = 5e-12; // A/sqrt(Hz)
    double electrical_bandwidth = 30e9;   // 3 dB cutoff, Hz
    enum class Filter { bessel, gaussian };
    Filter filter = Filter::bessel;
    int filter_order = 4;
    bool noise_enabled = true;

    void validate() const;
};

/// Square-law detection: i = R |A|^2 + I_dark, plus white shot noise with
/// per-sample variance 2q (R P + I_dark) Fs/2 and thermal noise with
/// variance i_th^2 Fs/2 when noise is enabled. The full sampling bandwidth
/// carries the white noise; the electrical filter then shapes it.
ElectricalWaveform photodetect(const OpticalField& in, const ReceiverSpec& rx, RngStream& rng);

/// Complex baseband response of the configured electrical filter at
/// frequency f. Bessel filters (orders 1-5) carry their physical phase;
/// the Gaussian response is zero-phase. Unit response at DC.
std::complex<double> electrical_response(const ReceiverSpec& rx, double f_hz);

ElectricalWaveform electrical_filter(const ElectricalWaveform& in, const ReceiverSpec& rx);

struct LevelStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
};

struct DecisionResult {
    bool aligned = false;
    double correlation = 0.0;     // normalized template correlation at best lag
    std::size_t delay_samples = 0;
    std::size_t sampling_phase = 0; // offset within the bit slot, [0, spb)
    double threshold = 0.0;       // A
    std::uint64_t errors = 0;
    std::uint64_t bit_count = 0;
    LevelStats marks;
    LevelStats spaces;
};

/// Recover timing against the known transmitted pattern (cyclic correlation
/// of the mean-removed waveform with an ideal NRZ template), pick the
/// sampling phase that maximizes Q, then threshold at the optimum
/// (s0 m1 + s1 m0) / (s0 + s1) and count errors. A correlation peak below
/// 0.5 marks the channel as unaligned -- kept distinct from a high BER.
DecisionResult decide(const ElectricalWaveform& wave, const BitSequence& bits,
                      std::size_t samples_per_bit);

} // namespace wdmsim
