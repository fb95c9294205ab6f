#include "wdmsim/fiber.hpp"

#include "wdmsim/errors.hpp"
#include "wdmsim/fft.hpp"
#include "wdmsim/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wdmsim {

void FiberSpec::validate() const
{
    if (!(length_km >= 0.0) || !std::isfinite(length_km))
        throw std::invalid_argument("fiber length must be non-negative");
    if (!(attenuation_db_km >= 0.0))
        throw std::invalid_argument("fiber attenuation must be non-negative");
    if (!std::isfinite(dispersion_ps_nm_km) || !std::isfinite(dispersion_slope_ps_nm2_km))
        throw std::invalid_argument("fiber dispersion must be finite");
    if (!(gamma_per_w_km >= 0.0))
        throw std::invalid_argument("fiber nonlinear coefficient must be non-negative");
}

void AmplifierSpec::validate() const
{
    if (!std::isfinite(gain_db) || gain_db < 0.0)
        throw std::invalid_argument("amplifier gain must be finite and non-negative");
    if (!(noise_figure_db >= 3.0))
        throw std::invalid_argument("amplifier noise figure must be >= 3 dB (quantum limit)");
}

void StepControl::validate() const
{
    if (mode == Mode::fixed && !(step_km > 0.0))
        throw std::invalid_argument("fixed step size must be positive");
    if (mode == Mode::adaptive && !(max_nonlinear_phase_rad > 0.0))
        throw std::invalid_argument("nonlinear phase budget must be positive");
}

double AmplifierSpec::effective_gain_linear(double input_power_w) const
{
    const double g0 = units::db_to_linear(gain_db);
    if (std::isnan(saturation_power_dbm))
        return g0;
    const double p_sat = units::dbm_to_watts(saturation_power_dbm);
    const double r = input_power_w / p_sat;
    if (r < 1e-30)
        return g0;
    // G (1 + G r) = G0  ->  positive root of r G^2 + G - G0 = 0
    return (-1.0 + std::sqrt(1.0 + 4.0 * r * g0)) / (2.0 * r);
}

namespace {

struct LinearOperator {
    // per-metre spectral phase and amplitude loss
    std::vector<double> phase_per_m;
    double alpha_per_m = 0.0;

    // cached factors for the most recent step length
    double cached_h = -1.0;
    std::vector<std::complex<double>> factor;

    LinearOperator(const SignalGrid& grid, double beta2, double beta3, double alpha)
        : phase_per_m(grid.n_samples), alpha_per_m(alpha)
    {
        for (std::size_t k = 0; k < grid.n_samples; ++k) {
            const double w = 2.0 * std::numbers::pi *
                             bin_frequency(k, grid.n_samples, grid.sample_interval);
            phase_per_m[k] = 0.5 * beta2 * w * w + (beta3 / 6.0) * w * w * w;
        }
        factor.resize(grid.n_samples);
    }

    void apply(std::vector<std::complex<double>>& spectrum, double h)
    {
        if (h != cached_h) {
            const double amp = std::exp(-0.5 * alpha_per_m * h);
            for (std::size_t k = 0; k < spectrum.size(); ++k) {
                const double p = phase_per_m[k] * h;
                factor[k] = std::complex<double>(amp * std::cos(p), amp * std::sin(p));
            }
            cached_h = h;
        }
        for (std::size_t k = 0; k < spectrum.size(); ++k)
            spectrum[k] *= factor[k];
    }
};

void apply_nonlinear(std::vector<std::complex<double>>& samples, double gamma, double h)
{
    for (auto& s : samples) {
        const double phi = gamma * std::norm(s) * h;
        s *= std::complex<double>(std::cos(phi), std::sin(phi));
    }
}

} // namespace

OpticalField propagate_fiber(const OpticalField& in, const FiberSpec& fiber,
                             const StepControl& step)
{
    fiber.validate();
    step.validate();
    if (fiber.length_km == 0.0)
        return in;
    if (!in.all_finite())
        throw PhysicsError("non-finite field entering fiber '" + fiber.label + "'");

    const double length_m = fiber.length_km * 1e3;
    const double alpha = fiber.attenuation_db_km * std::numbers::ln10 / 10.0 / 1e3; // 1/m
    const double beta2 = units::dispersion_to_beta2(fiber.dispersion_ps_nm_km,
                                                    in.grid.center_wavelength);
    const double beta3 = fiber.dispersion_slope_ps_nm2_km != 0.0
                             ? units::slope_to_beta3(fiber.dispersion_slope_ps_nm2_km,
                                                     fiber.dispersion_ps_nm_km,
                                                     in.grid.center_wavelength)
                             : 0.0;
    const double gamma = fiber.gamma_per_w_km / 1e3; // 1/(W m)

    OpticalField out = in;
    FftPlan plan(in.grid.n_samples);
    LinearOperator lin(in.grid, beta2, beta3, alpha);

    if (gamma == 0.0 || in.peak_power() == 0.0) {
        // exactly linear: one spectral multiply over the full length
        plan.forward(out.samples);
        lin.apply(out.samples, length_m);
        plan.inverse(out.samples);
    } else if (step.mode == StepControl::Mode::fixed) {
        const std::size_t n_steps = static_cast<std::size_t>(
            std::max(1.0, std::ceil(fiber.length_km / step.step_km)));
        const double h = length_m / static_cast<double>(n_steps);

        // merged symmetric scheme: D(h/2) [N(h) D(h)]^(n-1) N(h) D(h/2)
        plan.forward(out.samples);
        lin.apply(out.samples, 0.5 * h);
        for (std::size_t i = 0; i < n_steps; ++i) {
            plan.inverse(out.samples);
            apply_nonlinear(out.samples, gamma, h);
            plan.forward(out.samples);
            lin.apply(out.samples, i + 1 < n_steps ? h : 0.5 * h);
        }
        plan.inverse(out.samples);
    } else {
        // adaptive: step chosen so the peak nonlinear rotation stays below
        // the budget; the peak is re-read from the evolving field.
        double z = 0.0;
        while (z < length_m) {
            const double remaining = length_m - z;
            const double peak = out.peak_power();
            double h = peak > 0.0 ? step.max_nonlinear_phase_rad / (gamma * peak) : remaining;
            h = std::min(h, remaining);
            h = std::max(h, std::min(1.0, remaining)); // never stall below 1 m

            plan.forward(out.samples);
            lin.apply(out.samples, 0.5 * h);
            plan.inverse(out.samples);
            apply_nonlinear(out.samples, gamma, h);
            plan.forward(out.samples);
            lin.apply(out.samples, 0.5 * h);
            plan.inverse(out.samples);
            z += h;
        }
    }

    if (!out.all_finite())
        throw PhysicsError("propagation through '" + fiber.label + "' produced non-finite samples");
    return out;
}

OpticalField amplify(const OpticalField& in, const AmplifierSpec& amp, RngStream& rng)
{
    amp.validate();
    OpticalField out = in;

    const double g = amp.effective_gain_linear(in.mean_power());
    const double amp_factor = std::sqrt(g);
    for (auto& s : out.samples)
        s *= amp_factor;

    if (amp.ase_enabled && g > 1.0) {
        const double n_sp = units::db_to_linear(amp.noise_figure_db) / 2.0;
        const double s_ase = n_sp * (g - 1.0) * units::planck_constant * in.center_frequency;
        const double sigma2 = s_ase * in.grid.sample_rate(); // W per complex sample
        const double scale = std::sqrt(0.5 * sigma2);
        for (auto& s : out.samples)
            s += scale * rng.complex_gaussian();
    }
    return out;
}

std::vector<LinkElement> link_elements(const Span& span, int loops)
{
    if (loops < 0)
        throw std::invalid_argument("loop count must be non-negative");
    std::vector<LinkElement> elements;
    elements.reserve(static_cast<std::size_t>(loops) * 3);
    for (int i = 0; i < loops; ++i) {
        if (span.smf.length_km > 0.0)
            elements.emplace_back(span.smf);
        if (span.has_dcf && span.dcf.length_km > 0.0)
            elements.emplace_back(span.dcf);
        if (span.has_edfa)
            elements.emplace_back(span.edfa);
    }
    return elements;
}

} // namespace wdmsim
