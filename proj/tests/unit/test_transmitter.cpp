#include "wdmsim/transmitter.hpp"

#include "helpers.hpp"
#include "wdmsim/units.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace wdmsim;

namespace {

// linear-interp crossing time of `level` between samples of a rising edge
double crossing_time(const std::vector<double>& w, std::size_t from, double level, double dt)
{
    for (std::size_t i = from; i + 1 < w.size(); ++i) {
        if (w[i] <= level && w[i + 1] > level) {
            const double frac = (level - w[i]) / (w[i + 1] - w[i]);
            return (static_cast<double>(i) + frac) * dt;
        }
    }
    return -1.0;
}

} // namespace

TEST_CASE("NRZ with zero rise time is exactly rectangular")
{
    const auto grid = make_grid(8, 16, 40e9, 1550e-9);
    const auto bits = fixed_pattern("alt", 8);
    const auto w = nrz_waveform(bits, grid, 0.0);
    REQUIRE(w.size() == 128);
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(w[i] == (bits[i / 16] ? 1.0 : 0.0));
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
    CHECK(mean == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("NRZ edges settle to exact levels at bit centers")
{
    const auto grid = make_grid(16, 16, 40e9, 1550e-9);
    const auto bits = fixed_pattern("alt", 16);
    const double T = 1.0 / 40e9;
    const auto w = nrz_waveform(bits, grid, 0.25 * T);
    for (std::size_t k = 0; k < 16; ++k) {
        const double v = w[k * 16 + 8]; // mid-bit, clear of both edges
        CHECK(v == doctest::Approx(bits[k] ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    }
    // unit-mass cyclic kernel keeps the mean exactly
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
    CHECK(mean == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("10-90% rise time matches the request")
{
    // fine grid so the sampled kernel resolves the edge well
    const auto grid = make_grid(8, 128, 40e9, 1550e-9);
    const auto bits = fixed_pattern("alt", 8);
    const double T = 1.0 / 40e9;
    const double rise = 0.25 * T;
    const auto w = nrz_waveform(bits, grid, rise);

    // 0 -> 1 transition at the start of bit 1
    const double t10 = crossing_time(w, 64, 0.1, grid.sample_interval);
    const double t90 = crossing_time(w, 64, 0.9, grid.sample_interval);
    REQUIRE(t10 >= 0.0);
    REQUIRE(t90 > t10);
    CHECK(t90 - t10 == doctest::Approx(rise).epsilon(0.05));
}

TEST_CASE("NRZ rejects a rise time of a full bit period")
{
    const auto grid = make_grid(8, 16, 40e9, 1550e-9);
    const auto bits = fixed_pattern("alt", 8);
    CHECK_THROWS(nrz_waveform(bits, grid, 1.0 / 40e9));
    CHECK_THROWS(nrz_waveform(bits, grid, -1e-12));

    TransmitterSpec spec;
    spec.rise_time = 1.0 / spec.bit_rate;
    CHECK_THROWS(spec.validate());
}

TEST_CASE("modulator hits the average power exactly")
{
    const auto grid = make_grid(64, 16, 40e9, 1550e-9);
    const auto drive = nrz_waveform(prbs_generate(7, 1, 64), grid, 0.25 / 40e9);

    for (double er : {10.0, 30.0, std::numeric_limits<double>::infinity()}) {
        const auto field = modulate(-12.0, drive, er, grid);
        CHECK(field.mean_power() ==
              doctest::Approx(units::dbm_to_watts(-12.0)).epsilon(1e-12));
    }
}

TEST_CASE("ideal modulator puts all power in the marks")
{
    // alternating pattern, mean drive 1/2: the mark level carries twice the
    // average power, -12 dBm target -> marks at -8.9897 dBm
    const auto grid = make_grid(32, 16, 40e9, 1550e-9);
    const auto drive = nrz_waveform(fixed_pattern("alt", 32), grid, 0.0);
    const auto field = modulate(-12.0, drive, std::numeric_limits<double>::infinity(), grid);

    CHECK(units::watts_to_dbm(field.peak_power()) == doctest::Approx(-8.9897).epsilon(1e-4));
    CHECK(std::norm(field.samples[0]) == 0.0); // spaces are fully dark
}

TEST_CASE("finite extinction ratio sets the level ratio")
{
    const auto grid = make_grid(32, 8, 40e9, 1550e-9);
    const auto drive = nrz_waveform(fixed_pattern("alt", 32), grid, 0.0);
    const auto field = modulate(-10.0, drive, 30.0, grid);

    const double p0 = std::norm(field.samples[0]);  // a space
    const double p1 = std::norm(field.samples[8]);  // a mark
    CHECK(p1 / p0 == doctest::Approx(1000.0).epsilon(1e-9));
    CHECK(field.mean_power() == doctest::Approx(units::dbm_to_watts(-10.0)).epsilon(1e-12));
}

TEST_CASE("modulator output is chirp free")
{
    const auto grid = make_grid(16, 8, 40e9, 1550e-9);
    const auto drive = nrz_waveform(prbs_generate(7, 3, 16), grid, 0.25 / 40e9);
    const auto field = modulate(-12.0, drive, 30.0, grid);
    for (const auto& s : field.samples) {
        CHECK(s.imag() == 0.0);
        CHECK(s.real() > 0.0);
    }
}

TEST_CASE("modulator validates the drive")
{
    const auto grid = make_grid(4, 4, 40e9, 1550e-9);
    std::vector<double> bad(16, 0.5);
    bad[3] = 1.5;
    CHECK_THROWS(modulate(-12.0, bad, 30.0, grid));
    std::vector<double> wrong_len(8, 0.5);
    CHECK_THROWS(modulate(-12.0, wrong_len, 30.0, grid));
}

TEST_CASE("DCM broadens a Gaussian pulse by the analytic factor")
{
    // T0 = 10 ps through -392 ps/nm at 1550 nm:
    // sqrt(1 + (beta2 L / T0^2)^2) = 5.0988
    const auto grid = testutil::plain_grid(4096, 0.25e-12);
    const auto in = testutil::gaussian_pulse(grid, 10e-12);
    const auto out = apply_dcm(in, -392.0);

    const double ratio = testutil::rms_width(out) / testutil::rms_width(in);
    CHECK(ratio == doctest::Approx(5.0988).epsilon(0.005));

    // lossless
    CHECK(out.energy() == doctest::Approx(in.energy()).epsilon(1e-10));
}

TEST_CASE("DCM pairs cancel exactly")
{
    const auto grid = make_grid(32, 16, 40e9, 1550e-9);
    const auto drive = nrz_waveform(prbs_generate(7, 1, 32), grid, 0.25 / 40e9);
    const auto field = modulate(-12.0, drive, 30.0, grid);

    const auto back = apply_dcm(apply_dcm(field, -392.0), 392.0);
    CHECK(testutil::rms_rel_diff(field.samples, back.samples) < 1e-12);

    // zero is the identity
    const auto same = apply_dcm(field, 0.0);
    CHECK(testutil::rms_rel_diff(field.samples, same.samples) == 0.0);
}

TEST_CASE("build_channel is deterministic and reports its bits")
{
    TransmitterSpec spec;
    spec.prbs_seed = 77;
    BitSequence bits_a, bits_b;
    const auto a = build_channel(spec, 64, 16, nullptr, &bits_a);
    const auto b = build_channel(spec, 64, 16, nullptr, &bits_b);
    CHECK(bits_a == bits_b);
    CHECK(bits_a == prbs_generate(9, 77, 64));
    CHECK(a.samples == b.samples);
    CHECK(a.mean_power() == doctest::Approx(units::dbm_to_watts(-12.0)).epsilon(1e-12));
    CHECK(a.center_frequency == doctest::Approx(units::wavelength_to_frequency(1550e-9)));
}

TEST_CASE("build_channel with forced all-ones gives a CW field")
{
    TransmitterSpec spec;
    spec.extinction_ratio_db = std::numeric_limits<double>::infinity();
    const auto ones = fixed_pattern("ones", 16);
    const auto f = build_channel(spec, 16, 8, &ones);
    const double p = units::dbm_to_watts(spec.laser_power_dbm);
    for (const auto& s : f.samples)
        CHECK(std::norm(s) == doctest::Approx(p).epsilon(1e-12));
}
