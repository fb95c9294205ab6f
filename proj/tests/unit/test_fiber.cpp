#include "wdmsim/fiber.hpp"

#include "helpers.hpp"
#include "wdmsim/errors.hpp"
#include "wdmsim/transmitter.hpp"
#include "wdmsim/units.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace wdmsim;
using testutil::cw_field;
using testutil::gaussian_pulse;
using testutil::plain_grid;
using testutil::rms_rel_diff;
using testutil::rms_width;

namespace {

FiberSpec smf(double length_km)
{
    FiberSpec f;
    f.length_km = length_km;
    f.attenuation_db_km = 0.2;
    f.dispersion_ps_nm_km = 18.0;
    f.gamma_per_w_km = 1.3;
    f.label = "smf";
    return f;
}

StepControl fixed_step(double h_km)
{
    StepControl s;
    s.mode = StepControl::Mode::fixed;
    s.step_km = h_km;
    return s;
}

OpticalField prbs_field(double power_dbm = -12.0)
{
    TransmitterSpec spec;
    spec.laser_power_dbm = power_dbm;
    return build_channel(spec, 64, 16);
}

} // namespace

TEST_CASE("attenuation follows the dB/km rating exactly")
{
    auto f = smf(39.0);
    f.dispersion_ps_nm_km = 0.0;
    f.gamma_per_w_km = 0.0;
    const auto in = cw_field(plain_grid(256, 1e-12), 1e-3);
    const auto out = propagate_fiber(in, f, fixed_step(0.1));
    CHECK(units::linear_to_db(out.mean_power() / in.mean_power()) ==
          doctest::Approx(-7.8).epsilon(1e-9));
}

TEST_CASE("dispersion broadens a Gaussian by the analytic factor")
{
    // T0 = 10 ps over 8 km of D = 18: sqrt(1 + (beta2 z / T0^2)^2) = 2.0912
    auto f = smf(8.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 0.0;
    const auto grid = plain_grid(4096, 0.25e-12);
    const auto in = gaussian_pulse(grid, 10e-12);
    const auto out = propagate_fiber(in, f, fixed_step(0.1));
    CHECK(rms_width(out) / rms_width(in) == doctest::Approx(2.0912).epsilon(0.005));
}

TEST_CASE("linear propagation is linear and unitary")
{
    auto f = smf(25.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 0.0;
    f.dispersion_slope_ps_nm2_km = 0.08;
    const auto in = prbs_field();
    const auto out = propagate_fiber(in, f, fixed_step(0.1));

    CHECK(out.energy() == doctest::Approx(in.energy()).epsilon(1e-9));

    OpticalField scaled = in;
    const std::complex<double> c{0.3, -0.7};
    for (auto& s : scaled.samples)
        s *= c;
    auto out_scaled = propagate_fiber(scaled, f, fixed_step(0.1));
    for (auto& s : out_scaled.samples)
        s /= c;
    CHECK(rms_rel_diff(out.samples, out_scaled.samples) < 1e-10);
}

TEST_CASE("nonlinear lossless propagation conserves energy")
{
    auto f = smf(20.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 5.0;
    const auto in = prbs_field(3.0); // hot launch to make the SPM real
    const auto out = propagate_fiber(in, f, fixed_step(0.05));
    CHECK(out.energy() == doctest::Approx(in.energy()).epsilon(1e-6));
    CHECK(out.all_finite());
}

TEST_CASE("pure SPM phase on a CW field is gamma P L")
{
    FiberSpec f;
    f.length_km = 10.0;
    f.attenuation_db_km = 0.0;
    f.dispersion_ps_nm_km = 0.0;
    f.gamma_per_w_km = 2.0;
    const double p = 1e-3;
    const auto in = cw_field(plain_grid(64, 1e-12), p);
    const auto out = propagate_fiber(in, f, fixed_step(0.5));

    const double expected = 2.0e-3 * p * 10e3; // gamma[1/(W m)] * P * L
    for (std::size_t i = 0; i < in.samples.size(); ++i) {
        const auto r = out.samples[i] / in.samples[i];
        CHECK(std::arg(r) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(std::abs(r) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("split-step error falls quadratically with the step")
{
    auto f = smf(20.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 2.6;
    const auto grid = plain_grid(2048, 0.5e-12);
    const auto in = gaussian_pulse(grid, 10e-12, 5e-3);

    const auto ref = propagate_fiber(in, f, fixed_step(0.05));
    const double e1 = rms_rel_diff(ref.samples, propagate_fiber(in, f, fixed_step(0.8)).samples);
    const double e2 = rms_rel_diff(ref.samples, propagate_fiber(in, f, fixed_step(0.4)).samples);

    CHECK(e1 > e2);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4)); // second-order scheme
}

TEST_CASE("adaptive stepping agrees with a fine fixed step")
{
    auto f = smf(20.0);
    f.gamma_per_w_km = 2.6;
    const auto grid = plain_grid(2048, 0.5e-12);
    const auto in = gaussian_pulse(grid, 10e-12, 5e-3);

    StepControl adaptive;
    adaptive.mode = StepControl::Mode::adaptive;
    adaptive.max_nonlinear_phase_rad = 1e-3;

    const auto a = propagate_fiber(in, f, adaptive);
    const auto b = propagate_fiber(in, f, fixed_step(0.01));
    CHECK(rms_rel_diff(b.samples, a.samples) < 1e-3);
}

TEST_CASE("a detuned pulse walks off by beta2 w z")
{
    // +100 GHz tone offset, D = 18, 50 km: group delay -721 ps (anomalous
    // dispersion, higher frequencies arrive earlier)
    auto f = smf(50.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 0.0;
    const auto grid = plain_grid(8192, 0.5e-12);
    auto in = gaussian_pulse(grid, 20e-12);
    const double f0 = 100e9;
    for (std::size_t i = 0; i < grid.n_samples; ++i) {
        const double t = static_cast<double>(i) * grid.sample_interval;
        in.samples[i] *= std::polar(1.0, -2.0 * std::numbers::pi * f0 * t);
    }

    const auto out = propagate_fiber(in, f, fixed_step(1.0));
    const double shift = testutil::centroid_time(out) - testutil::centroid_time(in);
    const double expected =
        units::dispersion_to_beta2(18.0, 1550e-9) * 2.0 * std::numbers::pi * f0 * 50e3;
    CHECK(expected < 0.0);
    CHECK(shift == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("fiber followed by a matched DCM restores the field")
{
    auto f = smf(39.0);
    f.attenuation_db_km = 0.0;
    f.gamma_per_w_km = 0.0;
    const auto in = prbs_field();
    const auto dispersed = propagate_fiber(in, f, fixed_step(0.5));
    const auto back = apply_dcm(dispersed, -18.0 * 39.0);
    CHECK(rms_rel_diff(in.samples, back.samples) < 1e-8);
}

TEST_CASE("zero-length fiber and non-finite input")
{
    const auto in = prbs_field();
    const auto out = propagate_fiber(in, FiberSpec{}, fixed_step(0.1));
    CHECK(out.samples == in.samples);

    auto poisoned = in;
    poisoned.samples[3] = {std::numeric_limits<double>::infinity(), 0.0};
    CHECK_THROWS_AS(propagate_fiber(poisoned, smf(1.0), fixed_step(0.1)), PhysicsError);
}

TEST_CASE("fiber spec validation")
{
    FiberSpec f;
    f.length_km = -1.0;
    CHECK_THROWS(f.validate());
    f = FiberSpec{};
    f.attenuation_db_km = -0.1;
    CHECK_THROWS(f.validate());
    f = FiberSpec{};
    f.gamma_per_w_km = -2.0;
    CHECK_THROWS(f.validate());
    CHECK_NOTHROW(FiberSpec{}.validate());

    StepControl s;
    s.step_km = 0.0;
    CHECK_THROWS(s.validate());
    s.mode = StepControl::Mode::adaptive;
    s.max_nonlinear_phase_rad = 0.0;
    CHECK_THROWS(s.validate());
}

TEST_CASE("noiseless amplifier applies exact gain")
{
    AmplifierSpec amp;
    amp.gain_db = 16.0;
    amp.noise_figure_db = 5.0;
    amp.ase_enabled = false;
    const auto in = cw_field(plain_grid(128, 1e-12), units::dbm_to_watts(-20.0));
    RngStream rng(1, RngContext{});
    const auto out = amplify(in, amp, rng);
    CHECK(units::watts_to_dbm(out.mean_power()) == doctest::Approx(-4.0).epsilon(1e-12));

    AmplifierSpec unity;
    unity.gain_db = 0.0;
    unity.ase_enabled = true; // G = 1 adds no ASE either
    const auto same = amplify(in, unity, rng);
    CHECK(same.samples == in.samples);
}

TEST_CASE("ASE density matches n_sp (G-1) h nu")
{
    // 16 dB gain, NF 5 dB at 1550 nm: S = 7.8646e-18 W/Hz, i.e. -34.05 dBm
    // in a 50 GHz slot. Measured against the per-sample variance.
    AmplifierSpec amp;
    amp.gain_db = 16.0;
    amp.noise_figure_db = 5.0;
    const auto grid = plain_grid(1 << 17, 1e-12);
    OpticalField dark(grid, grid.center_frequency()); // zeros in, pure ASE out
    RngStream rng(42, RngContext{0, 0, 0, NoisePurpose::ase});
    const auto out = amplify(dark, amp, rng);

    const double s_meas = out.mean_power() / grid.sample_rate();
    CHECK(s_meas == doctest::Approx(7.8646e-18).epsilon(0.02));
    CHECK(units::watts_to_dbm(s_meas * 50e9) == doctest::Approx(-34.05).epsilon(0.01));
}

TEST_CASE("amplifier noise is reproducible per stream")
{
    AmplifierSpec amp;
    amp.gain_db = 12.0;
    const auto in = cw_field(plain_grid(64, 1e-12), 1e-5);
    RngStream r1(9, RngContext{1, 2, 3, NoisePurpose::ase});
    RngStream r2(9, RngContext{1, 2, 3, NoisePurpose::ase});
    const auto a = amplify(in, amp, r1);
    const auto b = amplify(in, amp, r2);
    CHECK(a.samples == b.samples);

    RngStream r3(9, RngContext{1, 2, 4, NoisePurpose::ase});
    const auto c = amplify(in, amp, r3);
    CHECK(a.samples != c.samples);
}

TEST_CASE("gain saturation solves the implicit equation")
{
    AmplifierSpec amp;
    amp.gain_db = 30.0;
    amp.saturation_power_dbm = 10.0;
    const double pin = units::dbm_to_watts(0.0);
    const double g = amp.effective_gain_linear(pin);
    // G (1 + G Pin / Psat) = G0
    CHECK(g * (1.0 + g * pin / units::dbm_to_watts(10.0)) ==
          doctest::Approx(1000.0).epsilon(1e-9));
    CHECK(g < 1000.0);

    AmplifierSpec unsat;
    unsat.gain_db = 30.0;
    CHECK(unsat.effective_gain_linear(pin) == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("amplifier spec validation")
{
    AmplifierSpec a;
    a.gain_db = -1.0;
    CHECK_THROWS(a.validate());
    a = AmplifierSpec{};
    a.noise_figure_db = 2.9; // below the quantum limit
    CHECK_THROWS(a.validate());
    CHECK_NOTHROW(AmplifierSpec{}.validate());
}

TEST_CASE("link_elements unrolls the span")
{
    Span span;
    span.smf = smf(39.0);
    span.dcf = smf(17.9);
    span.dcf.label = "dcf";
    span.edfa.gain_db = 16.0;

    const auto elems = link_elements(span, 18);
    CHECK(elems.size() == 54);
    double total_km = 0.0;
    for (const auto& e : elems)
        if (const auto* fiber = std::get_if<FiberSpec>(&e))
            total_km += fiber->length_km;
    CHECK(total_km == doctest::Approx(1024.2).epsilon(1e-12));

    span.has_dcf = false;
    span.has_edfa = false;
    CHECK(link_elements(span, 2).size() == 2);
    CHECK(link_elements(span, 0).empty());
}
