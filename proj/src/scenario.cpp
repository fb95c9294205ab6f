#include "wdmsim/scenario.hpp"

#include "wdmsim/errors.hpp"
#include "wdmsim/threading.hpp"
#include "wdmsim/units.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace wdmsim {

const ChannelResult& RunResult::worst_channel() const
{
    if (channels.empty())
        throw std::logic_error("run produced no channels");
    const ChannelResult* worst = &channels.front();
    for (const auto& ch : channels)
        if (ch.qber.q < worst->qber.q)
            worst = &ch;
    return *worst;
}

TransmitterSpec channel_transmitter(const ScenarioConfig& cfg, int channel)
{
    TransmitterSpec tx = cfg.tx;
    tx.laser_wavelength = cfg.plan.wavelength(channel);

    // distinct per-channel seeds, staying inside [1, 2^order - 1]
    const std::uint32_t period = (cfg.tx.prbs_order == 31)
                                     ? 0x7FFFFFFFu
                                     : ((1u << cfg.tx.prbs_order) - 1u);
    const std::uint64_t k = static_cast<std::uint64_t>(channel);
    tx.prbs_seed = static_cast<std::uint32_t>(
        ((tx.prbs_seed - 1 + k * 2654435761ull) % period) + 1);

    const auto it = cfg.overrides.find(channel);
    if (it != cfg.overrides.end()) {
        const TxOverride& o = it->second;
        if (o.laser_power_dbm)
            tx.laser_power_dbm = *o.laser_power_dbm;
        if (o.extinction_ratio_db)
            tx.extinction_ratio_db = *o.extinction_ratio_db;
        if (o.pre_dcm_ps_nm)
            tx.pre_dcm_ps_nm = *o.pre_dcm_ps_nm;
        if (o.prbs_seed)
            tx.prbs_seed = *o.prbs_seed;
    }
    return tx;
}

namespace {

std::vector<LinkElement> scenario_elements(const ScenarioConfig& cfg)
{
    return link_elements(cfg.span, cfg.loops);
}

} // namespace

std::vector<DispersionMapPoint> scenario_dispersion_map(const ScenarioConfig& cfg)
{
    return dispersion_map(scenario_elements(cfg));
}

RunResult run_scenario(const ScenarioConfig& cfg, int threads)
{
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();

    RunResult result;
    result.config = cfg;
    result.hash = config_hash(cfg);

    const int n_ch = cfg.plan.n_channels;
    const SignalGrid aggregate_grid =
        make_aggregate_grid(cfg.plan, cfg.tx.bit_rate, cfg.n_bits, cfg.samples_per_bit);

    // --- transmitters
    std::vector<OpticalField> tx_fields(n_ch);
    std::vector<BitSequence> tx_bits(n_ch);
    parallel_for(static_cast<std::size_t>(n_ch), threads, [&](std::size_t k) {
        const TransmitterSpec tx = channel_transmitter(cfg, static_cast<int>(k));
        tx_fields[k] = build_channel(tx, cfg.n_bits, cfg.samples_per_bit, nullptr, &tx_bits[k]);
        if (tx.tx_filter_fwhm_nm > 0.0) {
            FilterSpec shaping;
            shaping.order = tx.tx_filter_order;
            shaping.fwhm_hz = tx.tx_filter_fwhm_nm * 1e-9 * units::speed_of_light /
                              (tx.laser_wavelength * tx.laser_wavelength);
            tx_fields[k] = apply_filter(tx_fields[k], shaping);
        }
    });

    OpticalField line = mux(tx_fields, aggregate_grid, 2.5 * cfg.tx.bit_rate);
    tx_fields.clear();
    tx_fields.shrink_to_fit();

    if (cfg.metrics.emit_spectra)
        result.tx_spectrum = spectrum(line, cfg.metrics.rbw_ghz * 1e9);

    // --- link
    std::uint32_t span_index = 0;
    for (const auto& element : scenario_elements(cfg)) {
        if (const auto* fiber = std::get_if<FiberSpec>(&element)) {
            line = propagate_fiber(line, *fiber, cfg.step);
        } else if (const auto* dcm = std::get_if<DcmSpec>(&element)) {
            line = apply_dcm(line, dcm->dispersion_ps_nm);
        } else if (const auto* amp = std::get_if<AmplifierSpec>(&element)) {
            RngStream rng(cfg.seed, {0, 0, span_index++, NoisePurpose::ase});
            line = amplify(line, *amp, rng);
        }
    }

    if (cfg.metrics.emit_spectra)
        result.rx_spectrum = spectrum(line, cfg.metrics.rbw_ghz * 1e9);

    // --- receivers
    result.channels.resize(n_ch);
    const double lambda0 = cfg.plan.first_wavelength;
    parallel_for(static_cast<std::size_t>(n_ch), threads, [&](std::size_t k) {
        const int ch = static_cast<int>(k);
        const double carrier = cfg.plan.frequency(ch);
        const double filter_lambda = lambda0 + ch * cfg.demux.spacing_nm * 1e-9;
        const double filter_center = units::wavelength_to_frequency(filter_lambda);

        FilterSpec filt;
        filt.order = cfg.demux.order;
        filt.fwhm_hz = cfg.demux.fwhm_nm * 1e-9 * units::speed_of_light /
                       (filter_lambda * filter_lambda);

        const SignalGrid ch_grid = make_grid(cfg.n_bits, cfg.samples_per_bit, cfg.tx.bit_rate,
                                             cfg.plan.wavelength(ch));
        OpticalField dropped = demux(line, carrier, filter_center, filt, ch_grid);

        ChannelResult& out = result.channels[k];
        out.channel_index = ch;
        out.wavelength_nm = cfg.plan.wavelength(ch) * 1e9;
        out.carrier_hz = dropped.center_frequency;
        out.rx_power_dbm = power_meter(dropped);

        RngStream rng(cfg.seed, {0, static_cast<std::uint32_t>(ch), 0, NoisePurpose::shot});
        ElectricalWaveform current = photodetect(dropped, cfg.receiver, rng);
        current = electrical_filter(current, cfg.receiver);

        const DecisionResult decision = decide(current, tx_bits[k], cfg.samples_per_bit);
        if (decision.aligned) {
            out.qber = q_and_ber(decision);
        } else {
            // broken link: flagged rather than scored, and the run carries on
            out.qber.aligned = false;
            out.qber.q = 0.0;
            out.qber.q_db = -std::numeric_limits<double>::infinity();
            out.qber.ber_estimated = 0.5;
            out.qber.errors = decision.errors;
            out.qber.bit_count = decision.bit_count;
        }
        out.eye = eye_diagram(current, tx_bits[k], decision, cfg.samples_per_bit,
                              cfg.metrics.eye_amp_bins);
    });

    // --- dispersion bookkeeping
    result.map = scenario_dispersion_map(cfg);
    result.line_total_ps_nm = result.map.empty() ? 0.0 : result.map.back().cumulative_ps_nm;
    result.residual_ps_nm.resize(n_ch);
    for (int ch = 0; ch < n_ch; ++ch)
        result.residual_ps_nm[ch] =
            result.line_total_ps_nm + channel_transmitter(cfg, ch).pre_dcm_ps_nm;

    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& param_path,
                                  const std::vector<double>& values, int threads)
{
    if (values.size() < 2)
        throw ConfigError("a sweep needs at least two values");

    std::string pointer = "/";
    for (char c : param_path)
        pointer += (c == '.') ? '/' : c;

    const nlohmann::json canonical = config_to_json(base);
    nlohmann::json::json_pointer ptr;
    try {
        ptr = nlohmann::json::json_pointer(pointer);
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("malformed sweep parameter path '" + param_path + "'");
    }
    if (!canonical.contains(ptr))
        throw ConfigError("sweep parameter path '" + param_path + "' does not resolve");
    if (!canonical.at(ptr).is_number())
        throw ConfigError("sweep parameter '" + param_path + "' is not a scalar number");

    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double v : values) {
        nlohmann::json patched = canonical;
        patched[ptr] = v;
        const ScenarioConfig cfg = config_from_json(patched);
        const RunResult run = run_scenario(cfg, threads);

        SweepPoint pt;
        pt.value = v;
        pt.worst_q_db = std::numeric_limits<double>::infinity();
        pt.worst_ber_estimated = 0.0;
        double q_sum = 0.0, p_sum = 0.0;
        for (const auto& ch : run.channels) {
            pt.worst_q_db = std::min(pt.worst_q_db, ch.qber.q_db);
            pt.worst_ber_estimated = std::max(pt.worst_ber_estimated, ch.qber.ber_estimated);
            q_sum += ch.qber.q_db;
            p_sum += ch.rx_power_dbm;
        }
        pt.mean_q_db = q_sum / static_cast<double>(run.channels.size());
        pt.mean_rx_power_dbm = p_sum / static_cast<double>(run.channels.size());
        points.push_back(pt);
    }
    return points;
}

double q_spread_db(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds,
                   int channel, int threads)
{
    if (seeds.size() < 5)
        throw ConfigError("q_spread_db needs at least five seeds");
    if (channel < 0 || channel >= cfg.plan.n_channels)
        throw ConfigError("q_spread_db channel index out of range");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::uint64_t s : seeds) {
        ScenarioConfig c = cfg;
        c.seed = s;
        const RunResult run = run_scenario(c, threads);
        const double q_db = run.channels[static_cast<std::size_t>(channel)].qber.q_db;
        lo = std::min(lo, q_db);
        hi = std::max(hi, q_db);
    }
    return hi - lo;
}

} // namespace wdmsim
