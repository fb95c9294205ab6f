#pragma once

#include "wdmsim/fiber.hpp"
#include "wdmsim/receiver.hpp"
#include "wdmsim/signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wdmsim {

struct QberResult {
    double q = 0.0;              // linear Q factor
    double q_db = 0.0;           // 20 log10(Q)
    double ber_estimated = 0.5;  // Gaussian tail estimate 0.5 erfc(Q/sqrt 2)
    std::optional<double> ber_counted; // only when >= 10 errors were seen
    std::uint64_t errors = 0;
    std::uint64_t bit_count = 0;
    double threshold = 0.0;
    LevelStats marks;
    LevelStats spaces;
    bool aligned = false;
};

/// Q and BER from decision statistics. Requires at least 8 samples on each
/// rail for the Gaussian estimate to mean anything.
QberResult q_and_ber(const DecisionResult& decision);

/// Gaussian tail estimate on its own; Q = inf maps to 0, Q <= 0 to >= 0.5.
double ber_from_q(double q);

struct EyeData {
    std::size_t phase_bins = 0; // 2 samples_per_bit wide (two bit slots)
    std::size_t amp_bins = 0;
    double amp_lo = 0.0; // A
    double amp_hi = 0.0; // A
    std::vector<std::uint32_t> counts; // [phase * amp_bins + amp]; one entry per sample
    double eye_opening = 0.0;      // worst min(marks) - max(spaces) near the decision instant
    std::size_t sampling_phase = 0; // within the first bit slot of the window

    std::uint32_t at(std::size_t phase, std::size_t amp) const
    {
        return counts[phase * amp_bins + amp];
    }
};

/// Fold the filtered waveform into a two-bit eye window at the aligned
/// offset (each sample binned once). The opening is the worst mark/space
/// gap over the central 20% of the bit around the sampling phase, floored
/// at zero.
EyeData eye_diagram(const ElectricalWaveform& wave, const BitSequence& bits,
                    const DecisionResult& decision, std::size_t samples_per_bit,
                    std::size_t amp_bins = 128);

struct SpectrumPoint {
    double frequency_hz = 0.0; // absolute optical frequency
    double psd_w_hz = 0.0;
};

/// Welch-averaged power spectral density (Hann window, 75% overlap, cyclic
/// segmentation). Segment length is chosen so the bin width does not exceed
/// rbw_hz; rbw_hz below the grid bin spacing is rejected. The integrated
/// PSD equals the field mean power exactly.
std::vector<SpectrumPoint> spectrum(const OpticalField& field, double rbw_hz);

/// Mean power in dBm; -inf for a dark field.
double power_meter(const OpticalField& field);

struct DispersionMapPoint {
    double position_km = 0.0;
    double cumulative_ps_nm = 0.0;
    std::string element;
};

/// Cumulative dispersion along an element chain, sampled at element
/// boundaries and at 1 km resolution inside fibers.
std::vector<DispersionMapPoint> dispersion_map(const std::vector<LinkElement>& elements);

} // namespace wdmsim
