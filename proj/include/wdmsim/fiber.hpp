#pragma once

#include "wdmsim/rng.hpp"
#include "wdmsim/signal.hpp"

#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace wdmsim {

struct FiberSpec {
    double length_km = 0.0;
    double attenuation_db_km = 0.2;
    double dispersion_ps_nm_km = 0.0;
    double dispersion_slope_ps_nm2_km = 0.0;
    double gamma_per_w_km = 0.0; // nonlinear coefficient, 1/(W km)
    std::string label = "fiber";

    void validate() const;
};

struct AmplifierSpec {
    double gain_db = 0.0;
    double noise_figure_db = 5.0;
    // NaN = unsaturated fixed gain. When set, the effective gain solves
    // G = G0 / (1 + G P_in / P_sat).
    double saturation_power_dbm = std::numeric_limits<double>::quiet_NaN();
    bool ase_enabled = true;
    std::string label = "edfa";

    void validate() const;
    double effective_gain_linear(double input_power_w) const;
};

/// Lumped dispersion-compensation element (see apply_dcm).
struct DcmSpec {
    double dispersion_ps_nm = 0.0;
    std::string label = "dcm";
};

struct StepControl {
    enum class Mode { fixed, adaptive };
    Mode mode = Mode::fixed;
    double step_km = 0.1;                  // fixed mode
    double max_nonlinear_phase_rad = 5e-3; // adaptive mode budget per step

    void validate() const;
};

/// Symmetric split-step Fourier solution of
///   dA/dz = -(alpha/2) A - i (beta2/2) A_tt + (beta3/6) A_ttt + i gamma |A|^2 A
/// on the field's own grid. With gamma = 0 the propagation collapses to a
/// single exact linear step regardless of step control.
OpticalField propagate_fiber(const OpticalField& in, const FiberSpec& fiber,
                             const StepControl& step);

/// Flat-gain amplifier with optional ASE. Noise power spectral density per
/// polarization is S = n_sp (G - 1) h nu with n_sp = 10^(NF/10)/2; one
/// polarization (the signal's) is added as circular complex Gaussian noise.
OpticalField amplify(const OpticalField& in, const AmplifierSpec& amp, RngStream& rng);

/// One recirculating-loop period: transmission fiber + compensating fiber +
/// amplifier. The compensating stage or amplifier may be absent.
struct Span {
    FiberSpec smf;
    FiberSpec dcf;
    AmplifierSpec edfa;
    bool has_dcf = true;
    bool has_edfa = true;

    double length_km() const { return smf.length_km + (has_dcf ? dcf.length_km : 0.0); }
};

using LinkElement = std::variant<FiberSpec, DcmSpec, AmplifierSpec>;

/// Unrolls `loops` repetitions of a span into a flat element list.
std::vector<LinkElement> link_elements(const Span& span, int loops);

} // namespace wdmsim
