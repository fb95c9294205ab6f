#include "wdmsim/transmitter.hpp"

#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wdmsim {

void TransmitterSpec::validate() const
{
    if (!(bit_rate > 0.0))
        throw std::invalid_argument("bit_rate must be positive");
    if (!(laser_wavelength > 0.0))
        throw std::invalid_argument("laser_wavelength must be positive");
    if (!(extinction_ratio_db > 0.0)) // inf allowed
        throw std::invalid_argument("extinction_ratio_db must be positive");
    if (rise_time < 0.0 || rise_time >= 1.0 / bit_rate)
        throw std::invalid_argument("rise_time must lie in [0, one bit period)");
    if (!std::isfinite(pre_dcm_ps_nm))
        throw std::invalid_argument("pre_dcm_ps_nm must be finite");
    if (!(tx_filter_fwhm_nm >= 0.0) || !std::isfinite(tx_filter_fwhm_nm))
        throw std::invalid_argument("tx_filter_fwhm_nm must be non-negative");
    if (tx_filter_fwhm_nm > 0.0 && (tx_filter_order < 1 || tx_filter_order > 4))
        throw std::invalid_argument("tx_filter_order must lie in [1, 4]");
    (void)prbs_generate(prbs_order, prbs_seed, 1); // validates order and seed
}

std::vector<double> nrz_waveform(const BitSequence& bits, const SignalGrid& grid,
                                 double rise_time_s)
{
    if (bits.empty())
        throw std::invalid_argument("bit sequence is empty");
    if (grid.n_samples % bits.size() != 0)
        throw std::invalid_argument("grid size is not a multiple of the bit count");
    const std::size_t spb = grid.n_samples / bits.size();
    if (rise_time_s < 0.0)
        throw std::invalid_argument("rise time must be non-negative");
    if (rise_time_s >= static_cast<double>(spb) * grid.sample_interval)
        throw std::invalid_argument("rise time must stay below one bit period");

    std::vector<double> wave(grid.n_samples);
    for (std::size_t i = 0; i < grid.n_samples; ++i)
        wave[i] = bits[i / spb] ? 1.0 : 0.0;

    // Raised-cosine edge: the integrated kernel rises 10->90% over
    // 2 asin(0.8)/pi = 0.59033 of the kernel width, so width = rise/0.59033.
    const double edge_width = rise_time_s / 0.5903344706017331;
    const long long half = static_cast<long long>(std::floor(0.5 * edge_width / grid.sample_interval));
    if (half < 1)
        return wave;

    std::vector<double> kernel(2 * half + 1);
    double norm = 0.0;
    for (long long j = -half; j <= half; ++j) {
        const double t = static_cast<double>(j) * grid.sample_interval;
        const double v = std::cos(std::numbers::pi * t / edge_width);
        kernel[static_cast<std::size_t>(j + half)] = v;
        norm += v;
    }
    for (auto& k : kernel)
        k /= norm; // unit mass: the cyclic mean of the drive is preserved exactly

    const long long n = static_cast<long long>(grid.n_samples);
    std::vector<double> out(grid.n_samples, 0.0);
    for (long long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long long j = -half; j <= half; ++j) {
            long long src = i - j;
            src %= n;
            if (src < 0)
                src += n;
            acc += kernel[static_cast<std::size_t>(j + half)] * wave[static_cast<std::size_t>(src)];
        }
        // guard against roundoff pushing the drive out of [0, 1]
        out[static_cast<std::size_t>(i)] = std::min(1.0, std::max(0.0, acc));
    }
    return out;
}

OpticalField modulate(double avg_power_dbm, const std::vector<double>& drive,
                      double extinction_ratio_db, const SignalGrid& grid)
{
    if (drive.size() != grid.n_samples)
        throw std::invalid_argument("drive length does not match grid");
    double mean_drive = 0.0;
    for (double d : drive) {
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("drive samples must lie in [0, 1]");
        mean_drive += d;
    }
    mean_drive /= static_cast<double>(drive.size());

    const double target = units::dbm_to_watts(avg_power_dbm);

    // Solve P0, P1 with P1/P0 = ER and P0 + (P1-P0)*mean(drive) = target.
    double p0 = 0.0, p1 = 0.0;
    if (std::isinf(extinction_ratio_db)) {
        p0 = 0.0;
        p1 = mean_drive > 0.0 ? target / mean_drive : 0.0;
    } else {
        const double er = units::db_to_linear(extinction_ratio_db);
        if (!(er > 1.0))
            throw std::invalid_argument("extinction ratio must exceed 0 dB");
        p0 = target / (1.0 + (er - 1.0) * mean_drive);
        p1 = er * p0;
    }

    OpticalField field(grid, grid.center_frequency());
    for (std::size_t i = 0; i < drive.size(); ++i)
        field.samples[i] = {std::sqrt(p0 + (p1 - p0) * drive[i]), 0.0};
    return field;
}

OpticalField apply_dcm(const OpticalField& in, double c_ps_nm)
{
    if (c_ps_nm == 0.0)
        return in;
    OpticalField out = in;
    const double b2l = units::dispersion_total_to_beta2l(c_ps_nm, in.grid.center_wavelength);

    FftPlan plan(in.grid.n_samples);
    plan.forward(out.samples);
    const std::size_t n = in.grid.n_samples;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 2.0 * std::numbers::pi * bin_frequency(k, n, in.grid.sample_interval);
        const double phase = 0.5 * b2l * w * w;
        out.samples[k] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    plan.inverse(out.samples);
    return out;
}

OpticalField build_channel(const TransmitterSpec& spec, std::size_t n_bits,
                           std::size_t samples_per_bit, const BitSequence* forced_bits,
                           BitSequence* bits_out)
{
    spec.validate();
    const SignalGrid grid = make_grid(n_bits, samples_per_bit, spec.bit_rate, spec.laser_wavelength);

    BitSequence bits = forced_bits ? *forced_bits
                                   : prbs_generate(spec.prbs_order, spec.prbs_seed, n_bits);
    if (bits.size() != n_bits)
        throw std::invalid_argument("forced bit pattern length does not match n_bits");

    const std::vector<double> drive = nrz_waveform(bits, grid, spec.rise_time);
    OpticalField field = modulate(spec.laser_power_dbm, drive, spec.extinction_ratio_db, grid);
    if (spec.pre_dcm_ps_nm != 0.0)
        field = apply_dcm(field, spec.pre_dcm_ps_nm);

    if (bits_out)
        *bits_out = std::move(bits);
    return field;
}

} // namespace wdmsim
