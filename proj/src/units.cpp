#include "wdmsim/units.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wdmsim::units {

double wavelength_to_frequency(double wavelength_m)
{
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    return speed_of_light / wavelength_m;
}

double frequency_to_wavelength(double frequency_hz)
{
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("frequency must be positive");
    return speed_of_light / frequency_hz;
}

double dispersion_to_beta2(double d_ps_nm_km, double wavelength_m)
{
    // D [ps/(nm km)] = 1e-6 s/m^2;  beta2 = -D lambda^2 / (2 pi c)
    const double d_si = d_ps_nm_km * 1e-6;
    return -d_si * wavelength_m * wavelength_m / (2.0 * std::numbers::pi * speed_of_light);
}

double slope_to_beta3(double s_ps_nm2_km, double d_ps_nm_km, double wavelength_m)
{
    // S [ps/(nm^2 km)] = 1e3 s/m^3
    // beta3 = (lambda^2 / (2 pi c)^2) * (S lambda^2 + 2 lambda D)
    const double s_si = s_ps_nm2_km * 1e3;
    const double d_si = d_ps_nm_km * 1e-6;
    const double twopic = 2.0 * std::numbers::pi * speed_of_light;
    const double l2 = wavelength_m * wavelength_m;
    return (l2 / (twopic * twopic)) * (s_si * l2 + 2.0 * wavelength_m * d_si);
}

double dispersion_total_to_beta2l(double c_ps_nm, double wavelength_m)
{
    // C [ps/nm] = 1e-3 s/m;  beta2*L = -C lambda^2 / (2 pi c)
    const double c_si = c_ps_nm * 1e-3;
    return -c_si * wavelength_m * wavelength_m / (2.0 * std::numbers::pi * speed_of_light);
}

double wavelength_offset_to_frequency(double d_lambda_m, double wavelength_m)
{
    return -speed_of_light * d_lambda_m / (wavelength_m * wavelength_m);
}

double dbm_to_watts(double dbm)
{
    return 1e-3 * std::pow(10.0, dbm / 10.0);
}

double watts_to_dbm(double watts)
{
    if (watts < 0.0)
        throw std::invalid_argument("power must be non-negative");
    if (watts == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(watts / 1e-3);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double ratio)
{
    if (ratio < 0.0)
        throw std::invalid_argument("ratio must be non-negative");
    if (ratio == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ratio);
}

} // namespace wdmsim::units
