#include "wdmsim/wdm.hpp"

#include "helpers.hpp"
#include "wdmsim/errors.hpp"
#include "wdmsim/fft.hpp"
#include "wdmsim/transmitter.hpp"
#include "wdmsim/units.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace wdmsim;
using testutil::rms_rel_diff;

namespace {

OpticalField prbs_channel(double wavelength_m, std::uint32_t seed, std::size_t n_bits = 64)
{
    TransmitterSpec spec;
    spec.laser_wavelength = wavelength_m;
    spec.prbs_seed = seed;
    return build_channel(spec, n_bits, 16);
}

} // namespace

TEST_CASE("channel plan maps index to wavelength and frequency")
{
    ChannelPlan plan;
    plan.n_channels = 8;
    plan.first_wavelength = 1543.6e-9;
    plan.spacing = 0.4e-9;

    CHECK(plan.wavelength(0) == doctest::Approx(1543.6e-9).epsilon(1e-15));
    CHECK(plan.wavelength(7) == doctest::Approx(1546.4e-9).epsilon(1e-15));
    CHECK(plan.frequency(0) > plan.frequency(1)); // longer wavelength = lower f
    CHECK(plan.center_frequency() ==
          doctest::Approx(0.5 * (plan.frequency(0) + plan.frequency(7))).epsilon(1e-15));

    plan.n_channels = 0;
    CHECK_THROWS(plan.validate());
    plan.n_channels = 2;
    plan.spacing = 0.0;
    CHECK_THROWS(plan.validate());
}

TEST_CASE("filter response peaks at 1 and halves at +-FWHM/2")
{
    const auto grid = testutil::plain_grid(1024, 1e-12); // df = 0.9766 GHz
    const double df = grid.bin_spacing();
    FilterSpec spec;
    spec.fwhm_hz = 200.0 * df; // half-width at exactly bin +-100

    for (int order : {1, 2, 3, 4}) {
        spec.order = order;
        const auto h = filter_response(spec, grid, 0.0);
        CHECK(h[0] == doctest::Approx(1.0).epsilon(1e-12));
        const double p_half = h[100] * h[100];
        CHECK(p_half == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(h[storage_bin(-100, 1024)] * h[storage_bin(-100, 1024)] ==
              doctest::Approx(0.5).epsilon(1e-12));
    }

    // higher order = sharper skirt at 2x the half-width
    spec.order = 1;
    const auto h1 = filter_response(spec, grid, 0.0);
    spec.order = 4;
    const auto h4 = filter_response(spec, grid, 0.0);
    CHECK(h1[200] * h1[200] == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
    CHECK(h4[200] * h4[200] < 1e-20);
}

TEST_CASE("Gaussian filter noise bandwidth")
{
    // integral of the order-1 power response = FWHM sqrt(pi / (4 ln 2))
    const auto grid = testutil::plain_grid(4096, 1e-12);
    FilterSpec spec;
    spec.order = 1;
    spec.fwhm_hz = 120e9;
    const auto h = filter_response(spec, grid, 0.0);
    double integral = 0.0;
    for (double a : h)
        integral += a * a * grid.bin_spacing();
    const double expect = spec.fwhm_hz * std::sqrt(3.14159265358979 / (4.0 * 0.69314718056));
    CHECK(integral == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("filter spec validation")
{
    FilterSpec f;
    f.fwhm_hz = 50e9;
    f.order = 0;
    CHECK_THROWS(f.validate());
    f.order = 5;
    CHECK_THROWS(f.validate());
    f.order = 2;
    f.fwhm_hz = 0.0;
    CHECK_THROWS(f.validate());
}

TEST_CASE("tx-side bandpass: carrier line passes, sidebands are stripped")
{
    const auto field = prbs_channel(1550e-9, 7);

    // much wider than the modulation band: identity to rounding
    FilterSpec wide;
    wide.order = 4;
    wide.fwhm_hz = 100e12;
    CHECK(rms_rel_diff(apply_filter(field, wide).samples, field.samples) < 1e-6);

    // a CW line sits at the response peak and is untouched
    OpticalField cw = field;
    std::fill(cw.samples.begin(), cw.samples.end(), std::complex<double>(5e-3, 0.0));
    FilterSpec narrow;
    narrow.order = 2;
    narrow.fwhm_hz = 10e9;
    CHECK(rms_rel_diff(apply_filter(cw, narrow).samples, cw.samples) < 1e-12);

    // the same narrow filter strips NRZ sideband energy
    const double e_out = apply_filter(field, narrow).energy();
    CHECK(e_out > 0.0);
    CHECK(e_out < 0.9 * field.energy());
}

TEST_CASE("aggregate grid sizing")
{
    ChannelPlan one;
    one.n_channels = 1;
    one.first_wavelength = 1550e-9;
    const auto g1 = make_aggregate_grid(one, 40e9, 32, 16);
    CHECK(g1.n_samples == 32 * 16); // a lone channel needs no extra rate
    CHECK(g1.center_wavelength == doctest::Approx(1550e-9).epsilon(1e-12));

    ChannelPlan eight;
    eight.n_channels = 8;
    eight.first_wavelength = 1543.6e-9;
    eight.spacing = 0.4e-9;
    const auto g8 = make_aggregate_grid(eight, 40e9, 32, 16);
    // 1.25 * 8 * 49.9 GHz ~ 499 GHz < 640 GHz: 16 samples/bit still suffice
    CHECK(g8.n_samples == 32 * 16);
    CHECK(g8.time_window() == doctest::Approx(32.0 / 40e9).epsilon(1e-12));

    ChannelPlan wide = eight;
    wide.n_channels = 32;
    const auto g32 = make_aggregate_grid(wide, 40e9, 32, 16);
    // 1.25 * 32 * 49.9 GHz ~ 2 THz forces 64 samples/bit (2.56 THz)
    CHECK(g32.n_samples == 32 * 64);
    CHECK(g32.sample_rate() >= 1.25 * 32 * 49.9e9);
}

TEST_CASE("mux of a single centered channel is the identity")
{
    ChannelPlan plan;
    plan.n_channels = 1;
    const auto ch = prbs_channel(1550e-9, 1);
    const auto agg = make_aggregate_grid(plan, 40e9, 64, 16);
    const auto out = mux({ch}, agg, 2.5 * 40e9);
    REQUIRE(out.samples.size() == ch.samples.size());
    CHECK(rms_rel_diff(ch.samples, out.samples) < 1e-12);
}

TEST_CASE("mux adds powers of disjoint carriers")
{
    // two CW tones at -12 dBm each combine to -8.9897 dBm
    ChannelPlan plan;
    plan.n_channels = 2;
    plan.first_wavelength = 1549.8e-9;
    plan.spacing = 0.4e-9;
    const auto agg = make_aggregate_grid(plan, 40e9, 32, 16);

    std::vector<OpticalField> chans;
    for (int k = 0; k < 2; ++k) {
        const auto g = make_grid(32, 16, 40e9, plan.wavelength(k));
        chans.push_back(testutil::cw_field(g, units::dbm_to_watts(-12.0)));
    }
    const auto out = mux(chans, agg, 2.5 * 40e9);
    CHECK(units::watts_to_dbm(out.mean_power()) == doctest::Approx(-8.9897).epsilon(1e-5));

    // the two strongest spectral bins sit one channel spacing apart
    auto spec = out.samples;
    FftPlan(spec.size()).forward(spec);
    std::size_t i1 = 0, i2 = 0;
    double p1 = -1.0, p2 = -1.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double p = std::norm(spec[i]);
        if (p > p1) {
            p2 = p1;
            i2 = i1;
            p1 = p;
            i1 = i;
        } else if (p > p2) {
            p2 = p;
            i2 = i;
        }
    }
    const double sep = std::abs(bin_frequency(i1, spec.size(), agg.sample_interval) -
                                bin_frequency(i2, spec.size(), agg.sample_interval));
    const double expect = plan.frequency(0) - plan.frequency(1);
    CHECK(sep == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("mux rejects a band crossing the aggregate Nyquist edge")
{
    auto ch = prbs_channel(1550e-9, 1, 32);
    ch.center_frequency += 400e9; // way outside a 640 GHz-wide grid
    const auto agg = make_grid(32, 16, 40e9, 1550e-9);
    CHECK_THROWS_AS(mux({ch}, agg, 2.5 * 40e9), PhysicsError);
}

TEST_CASE("mux/demux round trip with a wide filter")
{
    ChannelPlan plan;
    plan.n_channels = 1;
    const auto ch = prbs_channel(1550e-9, 5);
    const auto agg_grid = make_aggregate_grid(plan, 40e9, 64, 16);
    const auto agg = mux({ch}, agg_grid, 2.5 * 40e9);

    FilterSpec wide;
    wide.order = 2;
    wide.fwhm_hz = 1000e9; // much wider than the signal
    const double f0 = ch.center_frequency;
    const auto back = demux(agg, f0, f0, wide, ch.grid);

    CHECK(back.center_frequency == doctest::Approx(f0).epsilon(1e-9));
    CHECK(rms_rel_diff(ch.samples, back.samples) < 1e-3);
}

TEST_CASE("demux carrier snaps to the aggregate bin lattice")
{
    ChannelPlan plan;
    plan.n_channels = 2;
    plan.first_wavelength = 1549.8e-9;
    plan.spacing = 0.4e-9;
    const auto agg_grid = make_aggregate_grid(plan, 40e9, 64, 16);
    std::vector<OpticalField> chans{prbs_channel(plan.wavelength(0), 1),
                                    prbs_channel(plan.wavelength(1), 2)};
    const auto agg = mux(chans, agg_grid, 2.5 * 40e9);

    FilterSpec filt;
    filt.order = 2;
    filt.fwhm_hz = 37.5e9;
    const auto g = make_grid(64, 16, 40e9, plan.wavelength(0));
    const auto out = demux(agg, plan.frequency(0), plan.frequency(0), filt, g);
    CHECK(std::abs(out.center_frequency - plan.frequency(0)) <= 0.5 * agg.grid.bin_spacing());
}

TEST_CASE("narrower demux filter leaks less of the neighbor")
{
    ChannelPlan plan;
    plan.n_channels = 2;
    plan.first_wavelength = 1549.8e-9;
    plan.spacing = 0.4e-9;
    const auto agg_grid = make_aggregate_grid(plan, 40e9, 64, 16);

    // only the neighbor is lit; whatever lands in slot 0 is leakage
    const auto neighbor = prbs_channel(plan.wavelength(1), 7);
    const auto agg = mux({neighbor}, agg_grid, 2.5 * 40e9);

    const auto g0 = make_grid(64, 16, 40e9, plan.wavelength(0));
    const double f0 = plan.frequency(0);
    const double fwhm_wide = std::abs(units::wavelength_offset_to_frequency(0.3e-9, 1550e-9));
    const double fwhm_narrow = std::abs(units::wavelength_offset_to_frequency(0.2e-9, 1550e-9));

    FilterSpec filt;
    filt.order = 2;
    filt.fwhm_hz = fwhm_wide;
    const double leak_wide = demux(agg, f0, f0, filt, g0).mean_power();
    filt.fwhm_hz = fwhm_narrow;
    const double leak_narrow = demux(agg, f0, f0, filt, g0).mean_power();

    CHECK(leak_narrow < leak_wide);
    CHECK(leak_wide < 0.1 * neighbor.mean_power());
}
