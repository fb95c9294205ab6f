#include "wdmsim/signal.hpp"

#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <cmath>
#include <stdexcept>

namespace wdmsim {

double SignalGrid::center_frequency() const
{
    return units::wavelength_to_frequency(center_wavelength);
}

SignalGrid make_grid(std::size_t n_bits, std::size_t samples_per_bit,
                     double bit_rate_hz, double center_wavelength_m)
{
    if (n_bits < 2 || !is_power_of_two(n_bits))
        throw std::invalid_argument("n_bits must be a power of two >= 2");
    if (samples_per_bit < 4 || !is_power_of_two(samples_per_bit))
        throw std::invalid_argument("samples_per_bit must be a power of two >= 4");
    if (!(bit_rate_hz > 0.0))
        throw std::invalid_argument("bit rate must be positive");
    if (!(center_wavelength_m > 0.0))
        throw std::invalid_argument("center wavelength must be positive");

    SignalGrid g;
    g.n_samples = n_bits * samples_per_bit;
    g.sample_interval = 1.0 / (bit_rate_hz * static_cast<double>(samples_per_bit));
    g.center_wavelength = center_wavelength_m;
    return g;
}

OpticalField::OpticalField(const SignalGrid& g, double carrier_hz)
    : grid(g), center_frequency(carrier_hz), samples(g.n_samples, {0.0, 0.0})
{
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
}

double OpticalField::mean_power() const
{
    if (samples.empty())
        return 0.0;
    double acc = 0.0;
    for (const auto& s : samples)
        acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

double OpticalField::peak_power() const
{
    double p = 0.0;
    for (const auto& s : samples)
        p = std::max(p, std::norm(s));
    return p;
}

double OpticalField::energy() const
{
    double acc = 0.0;
    for (const auto& s : samples)
        acc += std::norm(s);
    return acc * grid.sample_interval;
}

bool OpticalField::all_finite() const
{
    for (const auto& s : samples)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            return false;
    return true;
}

double ElectricalWaveform::mean() const
{
    if (samples.empty())
        return 0.0;
    double acc = 0.0;
    for (double s : samples)
        acc += s;
    return acc / static_cast<double>(samples.size());
}

double ElectricalWaveform::variance() const
{
    if (samples.empty())
        return 0.0;
    const double m = mean();
    double acc = 0.0;
    for (double s : samples)
        acc += (s - m) * (s - m);
    return acc / static_cast<double>(samples.size());
}

} // namespace wdmsim
