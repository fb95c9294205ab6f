#include "wdmsim/metrics.hpp"

#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wdmsim {

double ber_from_q(double q)
{
    if (std::isinf(q))
        return q > 0.0 ? 0.0 : 1.0;
    return 0.5 * std::erfc(q / std::numbers::sqrt2);
}

QberResult q_and_ber(const DecisionResult& d)
{
    if (d.marks.count < 8 || d.spaces.count < 8)
        throw std::invalid_argument("Q estimate needs at least 8 samples on each rail");

    QberResult r;
    const double ssum = d.marks.stddev + d.spaces.stddev;
    const double delta = d.marks.mean - d.spaces.mean;
    if (ssum == 0.0)
        r.q = delta > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    else
        r.q = std::max(delta / ssum, 0.0); // inverted rails read as a dead link, not Q < 0
    r.q_db = r.q > 0.0 ? 20.0 * std::log10(r.q) : -std::numeric_limits<double>::infinity();
    r.ber_estimated = ber_from_q(r.q);
    r.errors = d.errors;
    r.bit_count = d.bit_count;
    if (d.errors >= 10)
        r.ber_counted = static_cast<double>(d.errors) / static_cast<double>(d.bit_count);
    r.threshold = d.threshold;
    r.marks = d.marks;
    r.spaces = d.spaces;
    r.aligned = d.aligned;
    return r;
}

EyeData eye_diagram(const ElectricalWaveform& wave, const BitSequence& bits,
                    const DecisionResult& decision, std::size_t samples_per_bit,
                    std::size_t amp_bins)
{
    const std::size_t n = wave.samples.size();
    if (bits.size() * samples_per_bit != n)
        throw std::invalid_argument("waveform length does not match bit count");
    if (bits.size() < 64)
        throw std::invalid_argument("eye diagram needs at least 64 bits");
    if (amp_bins < 2)
        throw std::invalid_argument("need at least 2 amplitude bins");

    EyeData eye;
    eye.phase_bins = 2 * samples_per_bit;
    eye.amp_bins = amp_bins;
    eye.sampling_phase = decision.sampling_phase;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : wave.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    eye.amp_lo = lo;
    eye.amp_hi = hi;
    eye.counts.assign(eye.phase_bins * amp_bins, 0);

    // each aligned sample lands in exactly one column of the 2-bit window
    const double scale = static_cast<double>(amp_bins) / (hi - lo);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t p = j % eye.phase_bins;
        const std::size_t idx = (j + decision.delay_samples) % n;
        auto a = static_cast<long long>((wave.samples[idx] - lo) * scale);
        a = std::clamp<long long>(a, 0, static_cast<long long>(amp_bins) - 1);
        ++eye.counts[p * amp_bins + static_cast<std::size_t>(a)];
    }

    // worst rail gap over the central 20% of the bit around the decision instant
    const long long half_win = std::llround(0.1 * static_cast<double>(samples_per_bit));
    double opening = std::numeric_limits<double>::infinity();
    for (long long d = -half_win; d <= half_win; ++d) {
        double min_mark = std::numeric_limits<double>::infinity();
        double max_space = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < bits.size(); ++k) {
            const std::size_t idx = static_cast<std::size_t>(
                (static_cast<long long>(k * samples_per_bit + decision.sampling_phase +
                                        decision.delay_samples) +
                 d + static_cast<long long>(n)) %
                static_cast<long long>(n));
            const double v = wave.samples[idx];
            if (bits[k])
                min_mark = std::min(min_mark, v);
            else
                max_space = std::max(max_space, v);
        }
        if (std::isinf(min_mark) || std::isinf(max_space))
            return eye; // single-rail pattern: leave the opening at 0
        opening = std::min(opening, min_mark - max_space);
    }
    eye.eye_opening = std::max(opening, 0.0);
    return eye;
}

std::vector<SpectrumPoint> spectrum(const OpticalField& field, double rbw_hz)
{
    if (!(rbw_hz > 0.0))
        throw std::invalid_argument("resolution bandwidth must be positive");
    const std::size_t n = field.grid.n_samples;
    const double fs = field.grid.sample_rate();
    if (rbw_hz < field.grid.bin_spacing())
        throw std::invalid_argument("resolution bandwidth is below the grid bin spacing");

    std::size_t seg = next_power_of_two(static_cast<std::size_t>(std::ceil(fs / rbw_hz)));
    seg = std::clamp<std::size_t>(seg, std::min<std::size_t>(16, n), n);

    // periodic Hann; 75% overlap makes the squared-window sum exactly flat,
    // so the integrated PSD reproduces the mean power with no leakage bias
    std::vector<double> window(seg);
    double wsum2 = 0.0;
    for (std::size_t i = 0; i < seg; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(seg)));
        wsum2 += window[i] * window[i];
    }

    const std::size_t hop = std::max<std::size_t>(1, seg / 4);
    const std::size_t n_segments = n / hop;

    FftPlan plan(seg);
    std::vector<std::complex<double>> buf(seg);
    std::vector<double> psd(seg, 0.0);
    for (std::size_t s = 0; s < n_segments; ++s) {
        const std::size_t start = s * hop;
        for (std::size_t i = 0; i < seg; ++i)
            buf[i] = field.samples[(start + i) % n] * window[i];
        plan.forward(buf);
        for (std::size_t k = 0; k < seg; ++k)
            psd[k] += std::norm(buf[k]);
    }
    const double norm = 1.0 / (fs * wsum2 * static_cast<double>(n_segments));

    std::vector<SpectrumPoint> out(seg);
    const long long half = static_cast<long long>(seg) / 2;
    for (long long sb = -half; sb < half; ++sb) {
        const std::size_t k = storage_bin(sb, seg);
        SpectrumPoint& pt = out[static_cast<std::size_t>(sb + half)];
        pt.frequency_hz = field.center_frequency +
                          static_cast<double>(sb) * fs / static_cast<double>(seg);
        pt.psd_w_hz = psd[k] * norm;
    }
    return out;
}

double power_meter(const OpticalField& field)
{
    return units::watts_to_dbm(field.mean_power());
}

std::vector<DispersionMapPoint> dispersion_map(const std::vector<LinkElement>& elements)
{
    std::vector<DispersionMapPoint> map;
    map.push_back({0.0, 0.0, "start"});
    double pos = 0.0;
    double acc = 0.0;
    for (const auto& el : elements) {
        if (const auto* fiber = std::get_if<FiberSpec>(&el)) {
            const double whole_km = std::floor(fiber->length_km);
            for (double step = 1.0; step <= whole_km; step += 1.0)
                map.push_back({pos + step, acc + step * fiber->dispersion_ps_nm_km, fiber->label});
            if (fiber->length_km > whole_km)
                map.push_back({pos + fiber->length_km,
                               acc + fiber->length_km * fiber->dispersion_ps_nm_km, fiber->label});
            pos += fiber->length_km;
            acc += fiber->length_km * fiber->dispersion_ps_nm_km;
        } else if (const auto* dcm = std::get_if<DcmSpec>(&el)) {
            acc += dcm->dispersion_ps_nm;
            map.push_back({pos, acc, dcm->label});
        } else if (const auto* amp = std::get_if<AmplifierSpec>(&el)) {
            map.push_back({pos, acc, amp->label});
        }
    }
    return map;
}

} // namespace wdmsim
