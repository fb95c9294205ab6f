#pragma once

#include "wdmsim/signal.hpp"

#include <vector>

namespace wdmsim {

/// Equally spaced wavelength comb. Channel 0 sits at first_wavelength and
/// indices count towards longer wavelengths (lower frequencies).
struct ChannelPlan {
    int n_channels = 1;
    double first_wavelength = 1550e-9; // m
    double spacing = 0.4e-9;           // m

    void validate() const;
    double wavelength(int k) const { return first_wavelength + k * spacing; }
    double frequency(int k) const;
    /// Midpoint of the outermost carriers; used as the aggregate-grid anchor.
    double center_frequency() const;
};

/// Optical bandpass amplitude response. Power transmission is
/// exp(-ln2 (2 (f - f0) / fwhm)^(2 order)); order 1 is Gaussian, higher
/// orders approach a flat-top (super-Gaussian).
struct FilterSpec {
    int order = 2;
    double fwhm_hz = 0.0;

    void validate() const;
};

/// Amplitude response sampled on every storage bin of `grid`, with the
/// passband centered center_offset_hz away from the grid carrier.
std::vector<double> filter_response(const FilterSpec& spec, const SignalGrid& grid,
                                    double center_offset_hz);

/// Bandpass a field about its own carrier (transmit-side channel shaping).
OpticalField apply_filter(const OpticalField& field, const FilterSpec& filter);

/// Aggregate grid able to hold every channel of the plan: same bit count and
/// time window as the per-channel grids, sample rate grown (power-of-two
/// samples per bit) until every carrier plus 1.25x the bit rate fits inside
/// Nyquist. Carrier offsets are later snapped to whole grid bins.
SignalGrid make_aggregate_grid(const ChannelPlan& plan, double bit_rate_hz,
                               std::size_t n_bits, std::size_t samples_per_bit);

/// Sum frequency-shifted channel envelopes onto one aggregate field.
/// Each channel's carrier offset is rounded to the nearest aggregate bin
/// (error at most half a bin). Throws PhysicsError if any occupied band
/// (carrier +- occupied_bw_hz/2) would cross the aggregate Nyquist edge.
OpticalField mux(const std::vector<OpticalField>& channels, const SignalGrid& aggregate,
                 double occupied_bw_hz);

/// Select one channel out of an aggregate field: apply the demux filter
/// centered at filter_center_hz (absolute), shift the band at
/// channel_center_hz down to baseband, and resample onto channel_grid by
/// spectral truncation. The output carrier is the snapped channel center.
OpticalField demux(const OpticalField& aggregate, double channel_center_hz,
                   double filter_center_hz, const FilterSpec& filter,
                   const SignalGrid& channel_grid);

} // namespace wdmsim
