#pragma once

#include "wdmsim/prbs.hpp"
#include "wdmsim/signal.hpp"

#include <cstdint>

namespace wdmsim {

struct TransmitterSpec {
    double bit_rate = 40e9;          // Hz
    int prbs_order = 9;
    std::uint32_t prbs_seed = 1;
    double laser_power_dbm = -12.0;  // time-averaged launch power
    double laser_wavelength = 1550e-9;
    double extinction_ratio_db = 30.0; // may be +inf for an ideal modulator
    double rise_time = 0.25 / 40e9;  // 10-90% edge time, s
    double pre_dcm_ps_nm = 0.0;      // lumped pre-compensation at the tx
    double tx_filter_fwhm_nm = 0.0;  // per-channel optical bandpass; 0 = none
    int tx_filter_order = 2;

    void validate() const;
};

/// NRZ drive waveform in [0, 1]: ideal rectangular bits convolved
/// (cyclically) with a raised-cosine edge kernel sized so the 10-90% rise
/// time equals rise_time_s. rise_time_s = 0 gives exact rectangles.
std::vector<double> nrz_waveform(const BitSequence& bits, const SignalGrid& grid,
                                 double rise_time_s);

/// Intensity modulation of a CW laser: P(t) = P0 + (P1 - P0) * drive(t) with
/// P1/P0 fixed by the extinction ratio and the pair scaled so the
/// time-averaged output power equals avg_power_dbm. Phase is constant (chirp
/// free). drive samples must lie in [0, 1].
OpticalField modulate(double avg_power_dbm, const std::vector<double>& drive,
                      double extinction_ratio_db, const SignalGrid& grid);

/// Lumped dispersion element: multiplies the spectrum by
/// exp(+i beta2L/2 w^2) with beta2L equivalent to c_ps_nm at the grid
/// carrier. Lossless and exactly linear.
OpticalField apply_dcm(const OpticalField& in, double c_ps_nm);

/// PRBS -> NRZ -> modulator -> optional pre-compensation for one channel.
OpticalField build_channel(const TransmitterSpec& spec, std::size_t n_bits,
                           std::size_t samples_per_bit, const BitSequence* forced_bits = nullptr,
                           BitSequence* bits_out = nullptr);

} // namespace wdmsim
