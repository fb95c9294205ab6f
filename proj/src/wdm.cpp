#include "wdmsim/wdm.hpp"

#include "wdmsim/errors.hpp"
#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <cmath>
#include <stdexcept>

namespace wdmsim {

void ChannelPlan::validate() const
{
    if (n_channels < 1)
        throw std::invalid_argument("channel count must be at least 1");
    if (!(first_wavelength > 0.0))
        throw std::invalid_argument("first wavelength must be positive");
    if (n_channels > 1 && !(spacing > 0.0))
        throw std::invalid_argument("channel spacing must be positive");
}

double ChannelPlan::frequency(int k) const
{
    return units::wavelength_to_frequency(wavelength(k));
}

double ChannelPlan::center_frequency() const
{
    return 0.5 * (frequency(0) + frequency(n_channels - 1));
}

void FilterSpec::validate() const
{
    if (order < 1 || order > 4)
        throw std::invalid_argument("filter order must lie in [1, 4]");
    if (!(fwhm_hz > 0.0))
        throw std::invalid_argument("filter FWHM must be positive");
}

std::vector<double> filter_response(const FilterSpec& spec, const SignalGrid& grid,
                                    double center_offset_hz)
{
    spec.validate();
    std::vector<double> h(grid.n_samples);
    const double ln2 = 0.6931471805599453;
    for (std::size_t k = 0; k < grid.n_samples; ++k) {
        const double f = bin_frequency(k, grid.n_samples, grid.sample_interval);
        const double x = 2.0 * (f - center_offset_hz) / spec.fwhm_hz;
        double x2n = x * x;
        for (int i = 1; i < spec.order; ++i)
            x2n *= x * x;
        h[k] = std::exp(-0.5 * ln2 * x2n); // amplitude = sqrt(power response)
    }
    return h;
}

OpticalField apply_filter(const OpticalField& field, const FilterSpec& filter)
{
    const std::vector<double> h = filter_response(filter, field.grid, 0.0);
    OpticalField out = field;
    FftPlan plan(out.samples.size());
    plan.forward(out.samples);
    for (std::size_t k = 0; k < out.samples.size(); ++k)
        out.samples[k] *= h[k];
    plan.inverse(out.samples);
    return out;
}

SignalGrid make_aggregate_grid(const ChannelPlan& plan, double bit_rate_hz,
                               std::size_t n_bits, std::size_t samples_per_bit)
{
    plan.validate();
    const double f_center = plan.center_frequency();
    double max_offset = 0.0;
    for (int k = 0; k < plan.n_channels; ++k)
        max_offset = std::max(max_offset, std::abs(plan.frequency(k) - f_center));

    double spacing_hz = 0.0;
    for (int k = 0; k + 1 < plan.n_channels; ++k)
        spacing_hz = std::max(spacing_hz, plan.frequency(k) - plan.frequency(k + 1));
    const double required_rate = std::max(2.0 * (max_offset + 1.25 * bit_rate_hz),
                                          1.25 * plan.n_channels * spacing_hz);
    std::size_t spb = std::max(samples_per_bit,
                               static_cast<std::size_t>(std::ceil(required_rate / bit_rate_hz)));
    spb = next_power_of_two(spb);
    return make_grid(n_bits, spb, bit_rate_hz, units::frequency_to_wavelength(f_center));
}

OpticalField mux(const std::vector<OpticalField>& channels, const SignalGrid& aggregate,
                 double occupied_bw_hz)
{
    if (channels.empty())
        throw std::invalid_argument("mux needs at least one channel");

    const double f_agg = aggregate.center_frequency();
    const double df = aggregate.bin_spacing();
    const std::size_t n_agg = aggregate.n_samples;

    OpticalField out(aggregate, f_agg);
    std::vector<std::complex<double>> agg_spec(n_agg, {0.0, 0.0});

    for (const auto& ch : channels) {
        const std::size_t n_ch = ch.grid.n_samples;
        if (n_ch > n_agg)
            throw std::invalid_argument("channel grid is denser than the aggregate grid");
        const double tw_ratio = ch.grid.time_window() / aggregate.time_window();
        if (std::abs(tw_ratio - 1.0) > 1e-9)
            throw std::invalid_argument("channel and aggregate grids span different time windows");

        const long long shift = std::llround((ch.center_frequency - f_agg) / df);
        const double edge = std::abs(static_cast<double>(shift)) * df + 0.5 * occupied_bw_hz;
        if (edge > 0.5 * aggregate.sample_rate())
            throw PhysicsError("aggregate grid does not cover a channel band (grid coverage violation)");

        FftPlan plan(n_ch);
        std::vector<std::complex<double>> spec = ch.samples;
        plan.forward(spec);

        const double scale = static_cast<double>(n_agg) / static_cast<double>(n_ch);
        const long long half_agg = static_cast<long long>(n_agg) / 2;
        for (std::size_t j = 0; j < n_ch; ++j) {
            const long long target = signed_bin(j, n_ch) + shift;
            if (target < -half_agg || target >= half_agg)
                continue; // tail beyond the aggregate band
            agg_spec[storage_bin(target, n_agg)] += spec[j] * scale;
        }
    }

    FftPlan plan(n_agg);
    plan.inverse(agg_spec);
    out.samples = std::move(agg_spec);
    return out;
}

OpticalField demux(const OpticalField& aggregate, double channel_center_hz,
                   double filter_center_hz, const FilterSpec& filter,
                   const SignalGrid& channel_grid)
{
    const std::size_t n_agg = aggregate.grid.n_samples;
    const std::size_t n_ch = channel_grid.n_samples;
    if (n_ch > n_agg)
        throw std::invalid_argument("channel grid is denser than the aggregate grid");
    const double tw_ratio = channel_grid.time_window() / aggregate.grid.time_window();
    if (std::abs(tw_ratio - 1.0) > 1e-9)
        throw std::invalid_argument("channel and aggregate grids span different time windows");

    const double f_agg = aggregate.center_frequency;
    const double df = aggregate.grid.bin_spacing();
    const long long shift = std::llround((channel_center_hz - f_agg) / df);

    const std::vector<double> h = filter_response(filter, aggregate.grid, filter_center_hz - f_agg);

    std::vector<std::complex<double>> agg_spec = aggregate.samples;
    FftPlan plan_agg(n_agg);
    plan_agg.forward(agg_spec);

    std::vector<std::complex<double>> ch_spec(n_ch, {0.0, 0.0});
    const double scale = static_cast<double>(n_ch) / static_cast<double>(n_agg);
    const long long half_agg = static_cast<long long>(n_agg) / 2;
    for (std::size_t j = 0; j < n_ch; ++j) {
        const long long src = signed_bin(j, n_ch) + shift;
        if (src < -half_agg || src >= half_agg)
            continue;
        const std::size_t sb = storage_bin(src, n_agg);
        ch_spec[j] = agg_spec[sb] * h[sb] * scale;
    }

    FftPlan plan_ch(n_ch);
    plan_ch.inverse(ch_spec);

    OpticalField out(channel_grid, f_agg + static_cast<double>(shift) * df);
    out.samples = std::move(ch_spec);
    return out;
}

} // namespace wdmsim
