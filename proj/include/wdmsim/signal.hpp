#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wdmsim {

/// Uniform time/frequency sampling lattice. The frequency axis is implied:
/// FFT bin k sits at signed_bin(k) / time_window() relative to the carrier.
struct SignalGrid {
    std::size_t n_samples = 0;
    double sample_interval = 0.0;   // s
    double center_wavelength = 0.0; // m, carrier the envelope is referred to

    double time_window() const { return static_cast<double>(n_samples) * sample_interval; }
    double sample_rate() const { return 1.0 / sample_interval; }
    double bin_spacing() const { return 1.0 / time_window(); }
    double center_frequency() const;

    bool operator==(const SignalGrid&) const = default;
};

/// Grid sized for n_bits bits at bit_rate with samples_per_bit samples each.
/// Both counts must be powers of two so every transform stays radix-2.
SignalGrid make_grid(std::size_t n_bits, std::size_t samples_per_bit,
                     double bit_rate_hz, double center_wavelength_m);

/// Complex optical envelope. samples are in sqrt(W); |a|^2 is instantaneous
/// power. center_frequency is the absolute carrier the envelope rides on,
/// which may be offset from grid.center_frequency() after mux/demux moves.
struct OpticalField {
    SignalGrid grid;
    double center_frequency = 0.0; // Hz
    std::vector<std::complex<double>> samples;

    OpticalField() = default;
    OpticalField(const SignalGrid& g, double carrier_hz);

    double mean_power() const;  // W
    double peak_power() const;  // W
    double energy() const;      // J
    bool all_finite() const;
};

/// Real-valued photocurrent (or drive) waveform on the same kind of lattice.
struct ElectricalWaveform {
    SignalGrid grid;
    std::vector<double> samples; // A

    double mean() const;
    double variance() const;
};

} // namespace wdmsim
