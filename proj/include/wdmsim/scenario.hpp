#pragma once

#include "wdmsim/config.hpp"
#include "wdmsim/metrics.hpp"

#include <string>
#include <vector>

namespace wdmsim {

struct ChannelResult {
    int channel_index = 0;
    double wavelength_nm = 0.0;
    double carrier_hz = 0.0;
    double rx_power_dbm = 0.0;
    QberResult qber;
    EyeData eye;
};

struct RunResult {
    ScenarioConfig config; // as executed (CLI overrides folded in)
    std::uint64_t hash = 0;
    std::vector<ChannelResult> channels;
    std::vector<DispersionMapPoint> map; // line only, pre-compensation excluded
    double line_total_ps_nm = 0.0;
    std::vector<double> residual_ps_nm;  // line total + per-channel pre-compensation
    std::vector<SpectrumPoint> tx_spectrum;
    std::vector<SpectrumPoint> rx_spectrum;
    double elapsed_seconds = 0.0;

    const ChannelResult& worst_channel() const;
};

/// Full pipeline: per-channel transmitters -> mux -> span chain -> per-channel
/// demux/receiver/metrics. Thread count changes wall time only, never results.
RunResult run_scenario(const ScenarioConfig& cfg, int threads = 1);

/// The transmitter spec run_scenario uses for one channel (plan wavelength,
/// derived PRBS seed, overrides applied). Exposed for tests.
TransmitterSpec channel_transmitter(const ScenarioConfig& cfg, int channel);

/// Dispersion map of the configured link without running any signal.
std::vector<DispersionMapPoint> scenario_dispersion_map(const ScenarioConfig& cfg);

struct SweepPoint {
    double value = 0.0;
    double worst_q_db = 0.0;
    double worst_ber_estimated = 0.0;
    double mean_q_db = 0.0;
    double mean_rx_power_dbm = 0.0;
};

/// Re-runs the scenario once per value with the scalar at `param_path`
/// (dot-separated, e.g. "span.edfa.gain_db") replaced. The path must resolve
/// into the canonical config document.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& param_path,
                                  const std::vector<double>& values, int threads = 1);

/// Max - min Q (dB) of one channel across reruns with different master
/// seeds; the repeatability figure for noisy scenarios.
double q_spread_db(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds,
                   int channel = 0, int threads = 1);

} // namespace wdmsim
