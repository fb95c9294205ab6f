// wdmsim command-line front end: run / sweep / map / validate.

#include "wdmsim/errors.hpp"
#include "wdmsim/report.hpp"
#include "wdmsim/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace wdmsim;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> bits;
    std::optional<std::size_t> samples_per_bit;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_overrides = true)
{
    cmd->add_option("config", opts.config_path, "scenario config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory (default out/<scenario name>)");
    if (with_overrides) {
        cmd->add_option("--seed", opts.seed, "override the master noise seed");
        cmd->add_option("--bits", opts.bits, "override the simulated bit count (power of two)");
        cmd->add_option("--samples-per-bit", opts.samples_per_bit,
                        "override the per-channel oversampling (power of two)");
        cmd->add_option("--threads", opts.threads, "worker threads (results are identical)")
            ->check(CLI::PositiveNumber);
    }
}

ScenarioConfig load_with_overrides(const CommonOpts& opts)
{
    ScenarioConfig cfg = load_config(opts.config_path);
    if (opts.seed)
        cfg.seed = *opts.seed;
    if (opts.bits)
        cfg.n_bits = *opts.bits;
    if (opts.samples_per_bit)
        cfg.samples_per_bit = *opts.samples_per_bit;
    cfg.validate();
    return cfg;
}

std::filesystem::path resolve_out(const CommonOpts& opts, const ScenarioConfig& cfg)
{
    if (!opts.out_dir.empty())
        return opts.out_dir;
    return std::filesystem::path("out") / cfg.name;
}

void print_run_summary(const RunResult& run)
{
    std::printf("scenario '%s'  (%d channel%s, %d loop%s, %zu bits, seed %llu)\n",
                run.config.name.c_str(), run.config.plan.n_channels,
                run.config.plan.n_channels == 1 ? "" : "s", run.config.loops,
                run.config.loops == 1 ? "" : "s", run.config.n_bits,
                static_cast<unsigned long long>(run.config.seed));
    std::printf("%3s  %11s  %9s  %7s  %12s  %8s  %s\n", "ch", "lambda[nm]", "rx[dBm]", "Q[dB]",
                "BER(est)", "errors", "aligned");
    for (const auto& ch : run.channels)
        std::printf("%3d  %11.4f  %9.3f  %7.3f  %12.4e  %8llu  %s\n", ch.channel_index,
                    ch.wavelength_nm, ch.rx_power_dbm, ch.qber.q_db, ch.qber.ber_estimated,
                    static_cast<unsigned long long>(ch.qber.errors),
                    ch.qber.aligned ? "yes" : "NO");
    const auto& worst = run.worst_channel();
    std::printf("worst channel %d: Q = %.3f dB, BER(est) = %.4e\n", worst.channel_index,
                worst.qber.q_db, worst.qber.ber_estimated);
    std::printf("line dispersion %s ps/nm, residual (with pre-compensation) %s ps/nm\n",
                format_number(run.line_total_ps_nm).c_str(),
                format_number(run.residual_ps_nm.empty() ? run.line_total_ps_nm
                                                         : run.residual_ps_nm.front())
                    .c_str());
    std::printf("elapsed %.2f s\n", run.elapsed_seconds);
}

int run_cmd(const CommonOpts& opts)
{
    const ScenarioConfig cfg = load_with_overrides(opts);
    const RunResult run = run_scenario(cfg, opts.threads);
    const auto out_dir = resolve_out(opts, cfg);
    write_run_outputs(run, out_dir);
    print_run_summary(run);
    std::printf("outputs in %s\n", out_dir.string().c_str());
    return 0;
}

int sweep_cmd(const CommonOpts& opts, const std::string& param, const std::string& values_csv)
{
    const ScenarioConfig cfg = load_with_overrides(opts);

    std::vector<double> values;
    std::string token;
    std::stringstream ss(values_csv);
    while (std::getline(ss, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ConfigError("sweep value '" + token + "' is not a number");
        }
    }

    const auto points = run_sweep(cfg, param, values, opts.threads);
    const auto out_dir = resolve_out(opts, cfg);
    write_sweep_outputs(points, param, out_dir);

    std::printf("sweep of %s over %zu values\n", param.c_str(), values.size());
    std::printf("%14s  %9s  %12s\n", "value", "worstQ[dB]", "worstBER(est)");
    for (const auto& pt : points)
        std::printf("%14s  %9.3f  %12.4e\n", format_number(pt.value).c_str(), pt.worst_q_db,
                    pt.worst_ber_estimated);
    std::printf("outputs in %s\n", out_dir.string().c_str());
    return 0;
}

int map_cmd(const CommonOpts& opts)
{
    const ScenarioConfig cfg = load_with_overrides(opts);
    const auto map = scenario_dispersion_map(cfg);
    const double line_total = map.empty() ? 0.0 : map.back().cumulative_ps_nm;
    const double residual = line_total + channel_transmitter(cfg, 0).pre_dcm_ps_nm;

    const auto out_dir = resolve_out(opts, cfg);
    write_map_outputs(map, line_total, residual, out_dir);

    // compact ledger: one line per element boundary
    std::printf("dispersion map of '%s' (%d loops)\n", cfg.name.c_str(), cfg.loops);
    const DispersionMapPoint* prev = nullptr;
    for (const auto& pt : map) {
        if (prev && pt.element == prev->element && pt.cumulative_ps_nm != prev->cumulative_ps_nm &&
            &pt != &map.back()) {
            prev = &pt;
            continue; // interior fiber sample
        }
        const bool boundary = !prev || pt.element != prev->element || &pt == &map.back();
        if (boundary)
            std::printf("%10.3f km  %12.4f ps/nm  after %s\n", pt.position_km,
                        pt.cumulative_ps_nm, pt.element.c_str());
        prev = &pt;
    }
    std::printf("line total: %s ps/nm\n", format_number(line_total).c_str());
    std::printf("pre-compensation: %s ps/nm\n",
                format_number(channel_transmitter(cfg, 0).pre_dcm_ps_nm).c_str());
    std::printf("final residual: %s ps/nm\n", format_number(residual).c_str());
    std::printf("outputs in %s\n", out_dir.string().c_str());
    return 0;
}

int validate_cmd(const CommonOpts& opts)
{
    const ScenarioConfig cfg = load_config(opts.config_path);
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    std::printf("ok: '%s' (%d channels, %d loops, %zu bits x %zu samples, hash %s)\n",
                cfg.name.c_str(), cfg.plan.n_channels, cfg.loops, cfg.n_bits, cfg.samples_per_bit,
                hash_hex);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dense-WDM fiber link simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, map_opts, validate_opts;
    std::string sweep_param, sweep_values;

    CLI::App* run = app.add_subcommand("run", "simulate a scenario and emit metrics");
    add_common(run, run_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "rerun a scenario over a parameter range");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", sweep_param, "dot path of the scalar to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI::App* map = app.add_subcommand("map", "emit the dispersion map without simulating");
    add_common(map, map_opts, false);

    CLI::App* validate = app.add_subcommand("validate", "check a config file and print its hash");
    validate->add_option("config", validate_opts.config_path, "scenario config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
        if (run->parsed())
            return run_cmd(run_opts);
        if (sweep->parsed())
            return sweep_cmd(sweep_opts, sweep_param, sweep_values);
        if (map->parsed())
            return map_cmd(map_opts);
        if (validate->parsed())
            return validate_cmd(validate_opts);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are config errors
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const PhysicsError& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
}
