#pragma once

namespace wdmsim::units {

inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double planck_constant = 6.62607015e-34;  // J s
inline constexpr double electron_charge = 1.602176634e-19; // C

double wavelength_to_frequency(double wavelength_m);
double frequency_to_wavelength(double frequency_hz);

/// Group-velocity dispersion beta2 [s^2/m] from the engineering dispersion
/// parameter D [ps/(nm km)] at the given carrier wavelength.
double dispersion_to_beta2(double d_ps_nm_km, double wavelength_m);

/// Third-order dispersion beta3 [s^3/m] from dispersion slope S
/// [ps/(nm^2 km)] together with D [ps/(nm km)].
double slope_to_beta3(double s_ps_nm2_km, double d_ps_nm_km, double wavelength_m);

/// Accumulated beta2*L [s^2] equivalent to a lumped dispersion C [ps/nm].
double dispersion_total_to_beta2l(double c_ps_nm, double wavelength_m);

/// Frequency offset equivalent to a small wavelength offset near wavelength_m.
/// Positive d_lambda (longer wavelength) gives a negative frequency offset.
double wavelength_offset_to_frequency(double d_lambda_m, double wavelength_m);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts); // 0 W maps to -infinity
double db_to_linear(double db);
double linear_to_db(double ratio);

} // namespace wdmsim::units
