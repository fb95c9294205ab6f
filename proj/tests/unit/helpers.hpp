#pragma once

// Small builders/measures shared by the unit tests.

#include "wdmsim/signal.hpp"
#include "wdmsim/units.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace testutil {

inline wdmsim::SignalGrid plain_grid(std::size_t n, double dt, double lambda = 1550e-9)
{
    return wdmsim::SignalGrid{n, dt, lambda};
}

inline wdmsim::OpticalField cw_field(const wdmsim::SignalGrid& grid, double power_w)
{
    wdmsim::OpticalField f(grid, grid.center_frequency());
    const double amp = std::sqrt(power_w);
    for (auto& s : f.samples)
        s = amp;
    return f;
}

// Gaussian pulse A(t) = sqrt(peak) exp(-(t-t_mid)^2 / (2 t0^2)), window-centered.
inline wdmsim::OpticalField gaussian_pulse(const wdmsim::SignalGrid& grid, double t0_s,
                                           double peak_w = 1e-3)
{
    wdmsim::OpticalField f(grid, grid.center_frequency());
    const double t_mid = 0.5 * grid.time_window();
    const double amp = std::sqrt(peak_w);
    for (std::size_t i = 0; i < grid.n_samples; ++i) {
        const double t = static_cast<double>(i) * grid.sample_interval - t_mid;
        f.samples[i] = amp * std::exp(-t * t / (2.0 * t0_s * t0_s));
    }
    return f;
}

// RMS width of |A|^2 around its centroid (for a Gaussian power profile this
// is t0/sqrt(2), so width ratios equal pulse-broadening factors).
inline double rms_width(const wdmsim::OpticalField& f)
{
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double p = std::norm(f.samples[i]);
        const double t = static_cast<double>(i) * f.grid.sample_interval;
        w += p;
        m1 += p * t;
        m2 += p * t * t;
    }
    m1 /= w;
    m2 /= w;
    return std::sqrt(m2 - m1 * m1);
}

inline double centroid_time(const wdmsim::OpticalField& f)
{
    double w = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double p = std::norm(f.samples[i]);
        w += p;
        m1 += p * static_cast<double>(i) * f.grid.sample_interval;
    }
    return m1 / w;
}

inline double rms_rel_diff(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(a[i]);
    }
    return std::sqrt(num / den);
}

} // namespace testutil
