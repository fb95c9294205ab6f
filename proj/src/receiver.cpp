#include "wdmsim/receiver.hpp"

#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wdmsim {

void ReceiverSpec::validate() const
{
    if (!(responsivity > 0.0))
        throw std::invalid_argument("responsivity must be positive");
    if (!(dark_current >= 0.0))
        throw std::invalid_argument("dark current must be non-negative");
    if (!(thermal_noise_density >= 0.0))
        throw std::invalid_argument("thermal noise density must be non-negative");
    if (!(electrical_bandwidth > 0.0))
        throw std::invalid_argument("electrical bandwidth must be positive");
    if (filter == Filter::bessel && (filter_order < 1 || filter_order > 5))
        throw std::invalid_argument("Bessel filter order must lie in [1, 5]");
    if (filter == Filter::gaussian && filter_order != 1)
        throw std::invalid_argument("Gaussian electrical filter has no order parameter");
}

ElectricalWaveform photodetect(const OpticalField& in, const ReceiverSpec& rx, RngStream& rng)
{
    rx.validate();
    ElectricalWaveform out;
    out.grid = in.grid;
    out.samples.resize(in.samples.size());

    const double half_fs = 0.5 * in.grid.sample_rate();
    const double thermal_var = rx.thermal_noise_density * rx.thermal_noise_density * half_fs;
    const double q = units::electron_charge;

    for (std::size_t i = 0; i < in.samples.size(); ++i) {
        const double p = std::norm(in.samples[i]);
        double current = rx.responsivity * p + rx.dark_current;
        if (rx.noise_enabled) {
            const double shot_var = 2.0 * q * current * half_fs;
            current += std::sqrt(shot_var + thermal_var) * rng.gaussian();
        }
        out.samples[i] = current;
    }
    return out;
}

namespace {

// Reverse Bessel polynomial coefficients, descending powers, and the
// frequency scale that puts the 3 dB point at w = 1.
struct BesselTable {
    std::vector<double> coeff;
    double w3db;
};

const BesselTable& bessel_table(int order)
{
    static const BesselTable tables[5] = {
        {{1.0, 1.0}, 1.0},
        {{1.0, 3.0, 3.0}, 1.3616541287},
        {{1.0, 6.0, 15.0, 15.0}, 1.7556723588},
        {{1.0, 10.0, 45.0, 105.0, 105.0}, 2.1139176749},
        {{1.0, 15.0, 105.0, 420.0, 945.0, 945.0}, 2.4274295882},
    };
    return tables[order - 1];
}

} // namespace

std::complex<double> electrical_response(const ReceiverSpec& rx, double f_hz)
{
    if (rx.filter == ReceiverSpec::Filter::gaussian) {
        const double ln2 = 0.6931471805599453;
        const double x = f_hz / rx.electrical_bandwidth;
        return {std::exp(-0.5 * ln2 * x * x), 0.0};
    }
    const BesselTable& tab = bessel_table(rx.filter_order);
    const std::complex<double> s(0.0, tab.w3db * f_hz / rx.electrical_bandwidth);
    std::complex<double> denom(0.0, 0.0);
    for (double c : tab.coeff)
        denom = denom * s + c;
    return tab.coeff.back() / denom;
}

ElectricalWaveform electrical_filter(const ElectricalWaveform& in, const ReceiverSpec& rx)
{
    rx.validate();
    if (rx.electrical_bandwidth >= 0.5 / in.grid.sample_interval)
        throw std::invalid_argument("electrical bandwidth must stay below the grid Nyquist rate");
    const std::size_t n = in.samples.size();
    FftPlan plan(n);

    std::vector<std::complex<double>> spec(n);
    for (std::size_t i = 0; i < n; ++i)
        spec[i] = {in.samples[i], 0.0};
    plan.forward(spec);

    for (std::size_t k = 0; k < n; ++k) {
        const double f = bin_frequency(k, n, in.grid.sample_interval);
        // Spectral bin k holds the exp(-i 2 pi f t) component (optics sign),
        // so the analog response at +f applies conjugated.
        spec[k] *= std::conj(electrical_response(rx, f));
    }
    plan.inverse(spec);

    ElectricalWaveform out;
    out.grid = in.grid;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = spec[i].real();
    return out;
}

namespace {

LevelStats level_stats(const std::vector<double>& values)
{
    LevelStats s;
    s.count = values.size();
    if (values.empty())
        return s;
    double acc = 0.0;
    for (double v : values)
        acc += v;
    s.mean = acc / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values)
        var += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

double q_factor(const LevelStats& marks, const LevelStats& spaces)
{
    const double denom = marks.stddev + spaces.stddev;
    const double delta = marks.mean - spaces.mean;
    if (denom == 0.0) {
        if (delta > 0.0)
            return std::numeric_limits<double>::infinity();
        if (delta < 0.0)
            return -std::numeric_limits<double>::infinity();
        return 0.0;
    }
    return delta / denom;
}

} // namespace

DecisionResult decide(const ElectricalWaveform& wave, const BitSequence& bits,
                      std::size_t samples_per_bit)
{
    const std::size_t n = wave.samples.size();
    if (bits.empty() || samples_per_bit < 4)
        throw std::invalid_argument("decide needs bits and at least 4 samples per bit");
    if (bits.size() * samples_per_bit != n)
        throw std::invalid_argument("waveform length does not match bit count");

    DecisionResult res;
    res.bit_count = bits.size();

    // --- timing: cyclic cross-correlation against the ideal NRZ template
    const double wave_mean = wave.mean();
    double tmpl_mean = 0.0;
    for (auto b : bits)
        tmpl_mean += b;
    tmpl_mean /= static_cast<double>(bits.size());

    FftPlan plan(n);
    std::vector<std::complex<double>> wspec(n), tspec(n);
    double wnorm = 0.0, tnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wv = wave.samples[i] - wave_mean;
        const double tv = static_cast<double>(bits[i / samples_per_bit]) - tmpl_mean;
        wspec[i] = {wv, 0.0};
        tspec[i] = {tv, 0.0};
        wnorm += wv * wv;
        tnorm += tv * tv;
    }

    if (tnorm == 0.0 || wnorm == 0.0) {
        // degenerate: single-level pattern or flat waveform; nothing to align
        res.delay_samples = 0;
        res.correlation = tnorm == 0.0 ? 1.0 : 0.0;
    } else {
        plan.forward(wspec);
        plan.forward(tspec);
        for (std::size_t k = 0; k < n; ++k)
            wspec[k] *= std::conj(tspec[k]);
        plan.inverse(wspec);

        std::size_t best = 0;
        double best_val = wspec[0].real();
        for (std::size_t d = 1; d < n; ++d) {
            if (wspec[d].real() > best_val) {
                best_val = wspec[d].real();
                best = d;
            }
        }
        res.delay_samples = best;
        res.correlation = best_val / std::sqrt(wnorm * tnorm);
    }
    res.aligned = res.correlation >= 0.5;

    // --- sampling phase: maximize Q over the bit slot
    std::vector<double> marks_buf, spaces_buf;
    marks_buf.reserve(bits.size());
    spaces_buf.reserve(bits.size());

    std::vector<LevelStats> mstats(samples_per_bit), sstats(samples_per_bit);
    std::vector<double> qs(samples_per_bit);
    for (std::size_t phase = 0; phase < samples_per_bit; ++phase) {
        marks_buf.clear();
        spaces_buf.clear();
        for (std::size_t k = 0; k < bits.size(); ++k) {
            const std::size_t idx = (k * samples_per_bit + phase + res.delay_samples) % n;
            (bits[k] ? marks_buf : spaces_buf).push_back(wave.samples[idx]);
        }
        mstats[phase] = level_stats(marks_buf);
        sstats[phase] = level_stats(spaces_buf);
        qs[phase] = q_factor(mstats[phase], sstats[phase]);
    }

    // Ties (clean waves hit Q = inf across the whole settled region) resolve
    // to the middle of the longest cyclic run of maximal phases, keeping the
    // decision instant clear of the edges.
    const double best_q = *std::max_element(qs.begin(), qs.end());
    std::size_t best_phase = 0, best_len = 0;
    std::size_t run_start = 0, run_len = 0;
    for (std::size_t i = 0; i < 2 * samples_per_bit && run_len < samples_per_bit; ++i) {
        if (qs[i % samples_per_bit] != best_q) {
            run_len = 0;
            continue;
        }
        if (run_len == 0)
            run_start = i;
        ++run_len;
        if (run_len > best_len) {
            best_len = run_len;
            best_phase = (run_start + run_len / 2) % samples_per_bit;
        }
    }
    res.sampling_phase = best_phase;
    res.marks = mstats[best_phase];
    res.spaces = sstats[best_phase];

    // --- optimal threshold and error count
    const double ssum = res.marks.stddev + res.spaces.stddev;
    res.threshold = ssum > 0.0
                        ? (res.spaces.stddev * res.marks.mean + res.marks.stddev * res.spaces.mean) / ssum
                        : 0.5 * (res.marks.mean + res.spaces.mean);
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const std::size_t idx = (k * samples_per_bit + best_phase + res.delay_samples) % n;
        const bool one = wave.samples[idx] > res.threshold;
        if (one != (bits[k] != 0))
            ++res.errors;
    }
    return res;
}

} // namespace wdmsim
