#include "wdmsim/config.hpp"

#include "wdmsim/errors.hpp"
#include "wdmsim/fft.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace wdmsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError("config error at '" + path + "': " + what);
}

const json* find(const json& j, const char* key)
{
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

void expect_object(const json& j, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known)
            fail(path, "unknown key '" + it.key() + "'");
    }
}

double get_num(const json& j, const char* key, const std::string& path, double defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (!v->is_number())
        fail(path + "." + key, "expected a number");
    return v->get<double>();
}

std::int64_t get_int(const json& j, const char* key, const std::string& path, std::int64_t defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (!v->is_number_integer())
        fail(path + "." + key, "expected an integer");
    return v->get<std::int64_t>();
}

std::uint64_t get_uint(const json& j, const char* key, const std::string& path, std::uint64_t defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (!v->is_number_unsigned())
        fail(path + "." + key, "expected a non-negative integer");
    return v->get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, const std::string& path, bool defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (!v->is_boolean())
        fail(path + "." + key, "expected a boolean");
    return v->get<bool>();
}

std::string get_str(const json& j, const char* key, const std::string& path, const std::string& defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (!v->is_string())
        fail(path + "." + key, "expected a string");
    return v->get<std::string>();
}

// extinction ratio: a number in dB, or the string "inf" for an ideal modulator
double get_extinction(const json& j, const char* key, const std::string& path, double defval)
{
    const json* v = find(j, key);
    if (!v)
        return defval;
    if (v->is_string()) {
        if (v->get<std::string>() == "inf")
            return std::numeric_limits<double>::infinity();
        fail(path + "." + key, "expected a number or \"inf\"");
    }
    if (!v->is_number())
        fail(path + "." + key, "expected a number or \"inf\"");
    return v->get<double>();
}

FiberSpec parse_fiber(const json& j, const std::string& path, const char* label)
{
    expect_object(j, path);
    check_keys(j, path,
               {"length_km", "attenuation_db_km", "dispersion_ps_nm_km",
                "dispersion_slope_ps_nm2_km", "gamma_per_w_km"});
    FiberSpec f;
    f.label = label;
    f.length_km = get_num(j, "length_km", path, 0.0);
    f.attenuation_db_km = get_num(j, "attenuation_db_km", path, 0.2);
    f.dispersion_ps_nm_km = get_num(j, "dispersion_ps_nm_km", path, 0.0);
    f.dispersion_slope_ps_nm2_km = get_num(j, "dispersion_slope_ps_nm2_km", path, 0.0);
    f.gamma_per_w_km = get_num(j, "gamma_per_w_km", path, 0.0);
    return f;
}

json fiber_to_json(const FiberSpec& f)
{
    return {{"length_km", f.length_km},
            {"attenuation_db_km", f.attenuation_db_km},
            {"dispersion_ps_nm_km", f.dispersion_ps_nm_km},
            {"dispersion_slope_ps_nm2_km", f.dispersion_slope_ps_nm2_km},
            {"gamma_per_w_km", f.gamma_per_w_km}};
}

} // namespace

ScenarioConfig config_from_json(const json& root)
{
    expect_object(root, "$");
    check_keys(root, "$",
               {"name", "seed", "grid", "channels", "transmitter", "span", "loops", "demux",
                "receiver", "step", "metrics"});

    ScenarioConfig cfg;
    cfg.name = get_str(root, "name", "$", cfg.name);
    cfg.seed = get_uint(root, "seed", "$", cfg.seed);

    if (const json* grid = find(root, "grid")) {
        expect_object(*grid, "grid");
        check_keys(*grid, "grid", {"samples_per_bit", "n_bits"});
        cfg.samples_per_bit = get_uint(*grid, "samples_per_bit", "grid", cfg.samples_per_bit);
        cfg.n_bits = get_uint(*grid, "n_bits", "grid", cfg.n_bits);
    }

    if (const json* ch = find(root, "channels")) {
        expect_object(*ch, "channels");
        check_keys(*ch, "channels", {"count", "first_wavelength_nm", "spacing_nm", "overrides"});
        cfg.plan.n_channels = static_cast<int>(get_int(*ch, "count", "channels", 1));
        cfg.plan.first_wavelength =
            get_num(*ch, "first_wavelength_nm", "channels", 1550.0) * 1e-9;
        cfg.plan.spacing = get_num(*ch, "spacing_nm", "channels", 0.4) * 1e-9;
        if (const json* ovr = find(*ch, "overrides")) {
            if (!ovr->is_array())
                fail("channels.overrides", "expected an array");
            int idx = 0;
            for (const auto& o : *ovr) {
                const std::string path = "channels.overrides[" + std::to_string(idx++) + "]";
                expect_object(o, path);
                check_keys(o, path,
                           {"channel", "laser_power_dbm", "extinction_ratio_db",
                            "pre_dcm_ps_nm", "prbs_seed"});
                const json* which = find(o, "channel");
                if (!which || !which->is_number_integer())
                    fail(path, "needs an integer 'channel'");
                TxOverride t;
                if (find(o, "laser_power_dbm"))
                    t.laser_power_dbm = get_num(o, "laser_power_dbm", path, 0.0);
                if (find(o, "extinction_ratio_db"))
                    t.extinction_ratio_db = get_extinction(o, "extinction_ratio_db", path, 0.0);
                if (find(o, "pre_dcm_ps_nm"))
                    t.pre_dcm_ps_nm = get_num(o, "pre_dcm_ps_nm", path, 0.0);
                if (find(o, "prbs_seed"))
                    t.prbs_seed = static_cast<std::uint32_t>(get_uint(o, "prbs_seed", path, 1));
                cfg.overrides[which->get<int>()] = t;
            }
        }
    }

    if (const json* tx = find(root, "transmitter")) {
        expect_object(*tx, "transmitter");
        check_keys(*tx, "transmitter",
                   {"bit_rate_gbps", "prbs_order", "prbs_seed", "laser_power_dbm",
                    "extinction_ratio_db", "rise_time_fraction", "pre_dcm_ps_nm",
                    "tx_filter_fwhm_nm", "tx_filter_order"});
        cfg.tx.bit_rate = get_num(*tx, "bit_rate_gbps", "transmitter", 40.0) * 1e9;
        cfg.tx.prbs_order = static_cast<int>(get_int(*tx, "prbs_order", "transmitter", 9));
        cfg.tx.prbs_seed =
            static_cast<std::uint32_t>(get_uint(*tx, "prbs_seed", "transmitter", 1));
        cfg.tx.laser_power_dbm = get_num(*tx, "laser_power_dbm", "transmitter", -12.0);
        cfg.tx.extinction_ratio_db =
            get_extinction(*tx, "extinction_ratio_db", "transmitter", 30.0);
        const double rise_frac = get_num(*tx, "rise_time_fraction", "transmitter", 0.25);
        if (!(rise_frac >= 0.0 && rise_frac < 1.0))
            fail("transmitter.rise_time_fraction", "must lie in [0, 1)");
        cfg.tx.rise_time = rise_frac / cfg.tx.bit_rate;
        cfg.tx.pre_dcm_ps_nm = get_num(*tx, "pre_dcm_ps_nm", "transmitter", 0.0);
        cfg.tx.tx_filter_fwhm_nm = get_num(*tx, "tx_filter_fwhm_nm", "transmitter", 0.0);
        if (!(cfg.tx.tx_filter_fwhm_nm >= 0.0))
            fail("transmitter.tx_filter_fwhm_nm", "must be non-negative");
        cfg.tx.tx_filter_order =
            static_cast<int>(get_int(*tx, "tx_filter_order", "transmitter", 2));
        if (cfg.tx.tx_filter_order < 1 || cfg.tx.tx_filter_order > 4)
            fail("transmitter.tx_filter_order", "must lie in [1, 4]");
    }
    cfg.tx.laser_wavelength = cfg.plan.first_wavelength;

    cfg.span.has_dcf = false;
    cfg.span.has_edfa = false;
    cfg.span.smf.length_km = 0.0;
    cfg.span.smf.label = "smf";
    cfg.span.dcf.label = "dcf";
    if (const json* span = find(root, "span")) {
        expect_object(*span, "span");
        check_keys(*span, "span", {"smf", "dcf", "edfa"});
        if (const json* smf = find(*span, "smf"))
            cfg.span.smf = parse_fiber(*smf, "span.smf", "smf");
        if (const json* dcf = find(*span, "dcf")) {
            cfg.span.dcf = parse_fiber(*dcf, "span.dcf", "dcf");
            cfg.span.has_dcf = true;
        }
        if (const json* edfa = find(*span, "edfa")) {
            expect_object(*edfa, "span.edfa");
            check_keys(*edfa, "span.edfa",
                       {"gain_db", "noise_figure_db", "saturation_power_dbm", "ase"});
            cfg.span.edfa.gain_db = get_num(*edfa, "gain_db", "span.edfa", 0.0);
            cfg.span.edfa.noise_figure_db = get_num(*edfa, "noise_figure_db", "span.edfa", 5.0);
            cfg.span.edfa.saturation_power_dbm = get_num(
                *edfa, "saturation_power_dbm", "span.edfa", cfg.span.edfa.saturation_power_dbm);
            cfg.span.edfa.ase_enabled = get_bool(*edfa, "ase", "span.edfa", true);
            cfg.span.has_edfa = true;
        }
    }

    cfg.loops = static_cast<int>(get_int(root, "loops", "$", 1));

    if (const json* dm = find(root, "demux")) {
        expect_object(*dm, "demux");
        check_keys(*dm, "demux", {"shape", "order", "fwhm_nm", "spacing_nm"});
        const std::string shape = get_str(*dm, "shape", "demux", "super_gaussian");
        cfg.demux.order = static_cast<int>(get_int(*dm, "order", "demux", 2));
        if (shape == "gaussian") {
            if (find(*dm, "order") && cfg.demux.order != 1)
                fail("demux.order", "a gaussian filter is order 1");
            cfg.demux.order = 1;
        } else if (shape != "super_gaussian") {
            fail("demux.shape", "expected \"gaussian\" or \"super_gaussian\"");
        }
        cfg.demux.fwhm_nm = get_num(*dm, "fwhm_nm", "demux", cfg.demux.fwhm_nm);
        cfg.demux.spacing_nm = get_num(*dm, "spacing_nm", "demux", cfg.demux.spacing_nm);
    }

    if (const json* rx = find(root, "receiver")) {
        expect_object(*rx, "receiver");
        check_keys(*rx, "receiver",
                   {"responsivity_a_w", "dark_current_na", "thermal_noise_pa_sqrt_hz",
                    "electrical_bandwidth_ghz", "electrical_filter", "filter_order", "noise"});
        cfg.receiver.responsivity = get_num(*rx, "responsivity_a_w", "receiver", 1.0);
        cfg.receiver.dark_current = get_num(*rx, "dark_current_na", "receiver", 10.0) * 1e-9;
        cfg.receiver.thermal_noise_density =
            get_num(*rx, "thermal_noise_pa_sqrt_hz", "receiver", 5.0) * 1e-12;
        cfg.receiver.electrical_bandwidth =
            get_num(*rx, "electrical_bandwidth_ghz", "receiver", 30.0) * 1e9;
        const std::string filt = get_str(*rx, "electrical_filter", "receiver", "bessel");
        if (filt == "bessel")
            cfg.receiver.filter = ReceiverSpec::Filter::bessel;
        else if (filt == "gaussian")
            cfg.receiver.filter = ReceiverSpec::Filter::gaussian;
        else
            fail("receiver.electrical_filter", "expected \"bessel\" or \"gaussian\"");
        cfg.receiver.filter_order = static_cast<int>(get_int(
            *rx, "filter_order", "receiver",
            cfg.receiver.filter == ReceiverSpec::Filter::gaussian ? 1 : 4));
        cfg.receiver.noise_enabled = get_bool(*rx, "noise", "receiver", true);
    }

    if (const json* st = find(root, "step")) {
        expect_object(*st, "step");
        check_keys(*st, "step", {"mode", "step_km", "max_nonlinear_phase_rad"});
        const std::string mode = get_str(*st, "mode", "step", "fixed");
        if (mode == "fixed")
            cfg.step.mode = StepControl::Mode::fixed;
        else if (mode == "adaptive")
            cfg.step.mode = StepControl::Mode::adaptive;
        else
            fail("step.mode", "expected \"fixed\" or \"adaptive\"");
        cfg.step.step_km = get_num(*st, "step_km", "step", cfg.step.step_km);
        cfg.step.max_nonlinear_phase_rad =
            get_num(*st, "max_nonlinear_phase_rad", "step", cfg.step.max_nonlinear_phase_rad);
    }

    if (const json* m = find(root, "metrics")) {
        expect_object(*m, "metrics");
        check_keys(*m, "metrics", {"rbw_ghz", "eyes", "spectra", "eye_amp_bins"});
        cfg.metrics.rbw_ghz = get_num(*m, "rbw_ghz", "metrics", cfg.metrics.rbw_ghz);
        cfg.metrics.emit_eyes = get_bool(*m, "eyes", "metrics", cfg.metrics.emit_eyes);
        cfg.metrics.emit_spectra = get_bool(*m, "spectra", "metrics", cfg.metrics.emit_spectra);
        cfg.metrics.eye_amp_bins = get_uint(*m, "eye_amp_bins", "metrics", cfg.metrics.eye_amp_bins);
    }

    cfg.validate();
    return cfg;
}

void ScenarioConfig::validate() const
{
    try {
        if (n_bits < 64 || !is_power_of_two(n_bits))
            throw std::invalid_argument("grid.n_bits must be a power of two >= 64");
        if (samples_per_bit < 4 || !is_power_of_two(samples_per_bit))
            throw std::invalid_argument("grid.samples_per_bit must be a power of two >= 4");
        plan.validate();
        if (plan.n_channels > 256)
            throw std::invalid_argument("channels.count above 256 is not supported");
        tx.validate();
        if (loops < 0)
            throw std::invalid_argument("loops must be non-negative");
        if (loops > 0) { // back-to-back runs may omit the span entirely
            span.smf.validate();
            if (span.has_dcf)
                span.dcf.validate();
            if (span.has_edfa)
                span.edfa.validate();
        }
        if (!(demux.fwhm_nm > 0.0))
            throw std::invalid_argument("demux.fwhm_nm must be positive");
        if (demux.order < 1 || demux.order > 4)
            throw std::invalid_argument("demux.order must lie in [1, 4]");
        if (plan.n_channels > 1 && !(demux.spacing_nm > 0.0))
            throw std::invalid_argument("demux.spacing_nm must be positive");
        receiver.validate();
        step.validate();
        if (!(metrics.rbw_ghz > 0.0))
            throw std::invalid_argument("metrics.rbw_ghz must be positive");
        if (metrics.eye_amp_bins < 2 || metrics.eye_amp_bins > 4096)
            throw std::invalid_argument("metrics.eye_amp_bins must lie in [2, 4096]");
        for (const auto& [idx, ovr] : overrides) {
            if (idx < 0 || idx >= plan.n_channels)
                throw std::invalid_argument("override channel " + std::to_string(idx) +
                                            " out of range");
            (void)ovr;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

namespace {

// Serialization must emit a value that parses back to the stored double
// bit-for-bit, or dump -> parse -> dump (and the config hash) would drift.
// Search a few ulps around the naive inverse for an exact preimage.
template <class F>
double preimage(double stored, double guess, F&& forward)
{
    if (forward(guess) == stored)
        return guess;
    double lo = guess, hi = guess;
    for (int i = 0; i < 4; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        if (forward(lo) == stored)
            return lo;
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
        if (forward(hi) == stored)
            return hi;
    }
    return guess;
}

double unscale(double stored, double scale)
{
    return preimage(stored, stored / scale, [scale](double g) { return g * scale; });
}

} // namespace

nlohmann::json config_to_json(const ScenarioConfig& cfg)
{
    json root;
    root["name"] = cfg.name;
    root["seed"] = cfg.seed;
    root["grid"] = {{"samples_per_bit", cfg.samples_per_bit}, {"n_bits", cfg.n_bits}};

    json overrides = json::array();
    for (const auto& [idx, o] : cfg.overrides) {
        json jo{{"channel", idx}};
        if (o.laser_power_dbm)
            jo["laser_power_dbm"] = *o.laser_power_dbm;
        if (o.extinction_ratio_db) {
            if (std::isinf(*o.extinction_ratio_db))
                jo["extinction_ratio_db"] = "inf";
            else
                jo["extinction_ratio_db"] = *o.extinction_ratio_db;
        }
        if (o.pre_dcm_ps_nm)
            jo["pre_dcm_ps_nm"] = *o.pre_dcm_ps_nm;
        if (o.prbs_seed)
            jo["prbs_seed"] = *o.prbs_seed;
        overrides.push_back(jo);
    }
    root["channels"] = {{"count", cfg.plan.n_channels},
                        {"first_wavelength_nm", unscale(cfg.plan.first_wavelength, 1e-9)},
                        {"spacing_nm", unscale(cfg.plan.spacing, 1e-9)},
                        {"overrides", overrides}};

    const double rate = cfg.tx.bit_rate;
    json tx{{"bit_rate_gbps", unscale(rate, 1e9)},
            {"prbs_order", cfg.tx.prbs_order},
            {"prbs_seed", cfg.tx.prbs_seed},
            {"laser_power_dbm", cfg.tx.laser_power_dbm},
            {"rise_time_fraction", preimage(cfg.tx.rise_time, cfg.tx.rise_time * rate,
                                            [rate](double g) { return g / rate; })},
            {"pre_dcm_ps_nm", cfg.tx.pre_dcm_ps_nm},
            {"tx_filter_fwhm_nm", cfg.tx.tx_filter_fwhm_nm},
            {"tx_filter_order", cfg.tx.tx_filter_order}};
    if (std::isinf(cfg.tx.extinction_ratio_db))
        tx["extinction_ratio_db"] = "inf";
    else
        tx["extinction_ratio_db"] = cfg.tx.extinction_ratio_db;
    root["transmitter"] = tx;

    json span{{"smf", fiber_to_json(cfg.span.smf)}};
    if (cfg.span.has_dcf)
        span["dcf"] = fiber_to_json(cfg.span.dcf);
    if (cfg.span.has_edfa) {
        json edfa{{"gain_db", cfg.span.edfa.gain_db},
                  {"noise_figure_db", cfg.span.edfa.noise_figure_db},
                  {"ase", cfg.span.edfa.ase_enabled}};
        if (!std::isnan(cfg.span.edfa.saturation_power_dbm))
            edfa["saturation_power_dbm"] = cfg.span.edfa.saturation_power_dbm;
        span["edfa"] = edfa;
    }
    root["span"] = span;

    root["loops"] = cfg.loops;
    root["demux"] = {{"shape", cfg.demux.order == 1 ? "gaussian" : "super_gaussian"},
                     {"order", cfg.demux.order},
                     {"fwhm_nm", cfg.demux.fwhm_nm},
                     {"spacing_nm", cfg.demux.spacing_nm}};
    root["receiver"] = {
        {"responsivity_a_w", cfg.receiver.responsivity},
        {"dark_current_na", unscale(cfg.receiver.dark_current, 1e-9)},
        {"thermal_noise_pa_sqrt_hz", unscale(cfg.receiver.thermal_noise_density, 1e-12)},
        {"electrical_bandwidth_ghz", unscale(cfg.receiver.electrical_bandwidth, 1e9)},
        {"electrical_filter",
         cfg.receiver.filter == ReceiverSpec::Filter::bessel ? "bessel" : "gaussian"},
        {"filter_order", cfg.receiver.filter_order},
        {"noise", cfg.receiver.noise_enabled}};
    root["step"] = {
        {"mode", cfg.step.mode == StepControl::Mode::fixed ? "fixed" : "adaptive"},
        {"step_km", cfg.step.step_km},
        {"max_nonlinear_phase_rad", cfg.step.max_nonlinear_phase_rad}};
    root["metrics"] = {{"rbw_ghz", cfg.metrics.rbw_ghz},
                       {"eyes", cfg.metrics.emit_eyes},
                       {"spectra", cfg.metrics.emit_spectra},
                       {"eye_amp_bins", cfg.metrics.eye_amp_bins}};
    return root;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse failure in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

std::uint64_t config_hash(const ScenarioConfig& cfg)
{
    const std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace wdmsim
