#pragma once

#include "wdmsim/fiber.hpp"
#include "wdmsim/receiver.hpp"
#include "wdmsim/transmitter.hpp"
#include "wdmsim/wdm.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace wdmsim {

struct TxOverride {
    std::optional<double> laser_power_dbm;
    std::optional<double> extinction_ratio_db;
    std::optional<double> pre_dcm_ps_nm;
    std::optional<std::uint32_t> prbs_seed;
};

struct DemuxConfig {
    int order = 2;           // 1 = Gaussian, >1 super-Gaussian
    double fwhm_nm = 0.3;
    double spacing_nm = 0.4; // filter comb pitch, anchored at channel 0
};

struct MetricsConfig {
    double rbw_ghz = 10.0;
    bool emit_eyes = true;
    bool emit_spectra = true;
    std::size_t eye_amp_bins = 128;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 1;

    std::size_t samples_per_bit = 16;
    std::size_t n_bits = 1024;

    ChannelPlan plan;
    TransmitterSpec tx; // per-channel wavelength/seed assigned at run time
    std::map<int, TxOverride> overrides;

    Span span;
    int loops = 1;

    DemuxConfig demux;
    ReceiverSpec receiver;
    StepControl step;
    MetricsConfig metrics;

    void validate() const; // throws ConfigError naming the offending field
};

/// Strict parse: unknown keys, wrong types and out-of-range values are all
/// ConfigError with the JSON path of the offender.
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Canonical form: every field materialized, keys sorted (nlohmann objects
/// are ordered maps), so equivalent configs serialize identically.
nlohmann::json config_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_config(const std::string& path);

/// FNV-1a over the canonical dump; stable across key reordering in the file.
std::uint64_t config_hash(const ScenarioConfig& cfg);

} // namespace wdmsim
