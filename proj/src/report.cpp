#include "wdmsim/report.hpp"

#include "wdmsim/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wdmsim {

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + p.string() + "'");
    return out;
}

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_dispersion_csv(const std::vector<DispersionMapPoint>& map,
                          const std::filesystem::path& p)
{
    auto out = open_out(p);
    out << "distance_km,cumulative_dispersion_ps_nm,element_label\n";
    for (const auto& pt : map)
        out << format_number(pt.position_km) << ',' << format_number(pt.cumulative_ps_nm) << ','
            << pt.element << '\n';
}

void write_spectrum_csv(const std::vector<SpectrumPoint>& spec, const std::filesystem::path& p)
{
    auto out = open_out(p);
    out << "frequency_thz,psd_dbm_per_ghz\n";
    for (const auto& pt : spec) {
        // W/Hz -> dBm/GHz: 10 log10(psd * 1e9 / 1e-3)
        const double dbm_ghz = pt.psd_w_hz > 0.0 ? 10.0 * std::log10(pt.psd_w_hz * 1e12)
                                                 : -400.0; // floor for empty bins
        out << format_number(pt.frequency_hz / 1e12) << ',' << format_number(dbm_ghz) << '\n';
    }
}

void write_eye_pgm(const EyeData& eye, const std::filesystem::path& p)
{
    std::uint32_t peak = 0;
    for (auto c : eye.counts)
        peak = std::max(peak, c);

    auto out = open_out(p);
    out << "P5\n" << eye.phase_bins << ' ' << eye.amp_bins << "\n255\n";
    // rows top-down = high amplitude first; log brightness
    const double denom = std::log1p(static_cast<double>(peak));
    for (std::size_t a = eye.amp_bins; a-- > 0;) {
        for (std::size_t ph = 0; ph < eye.phase_bins; ++ph) {
            const double c = static_cast<double>(eye.at(ph, a));
            const int v = peak == 0 ? 0
                                    : static_cast<int>(std::llround(255.0 * std::log1p(c) / denom));
            out.put(static_cast<char>(v));
        }
    }
}

void write_eye_csv(const EyeData& eye, const std::filesystem::path& p)
{
    auto out = open_out(p);
    out << "phase_bin,amp_bin,amp_low_a,count\n";
    const double step = (eye.amp_hi - eye.amp_lo) / static_cast<double>(eye.amp_bins);
    for (std::size_t ph = 0; ph < eye.phase_bins; ++ph)
        for (std::size_t a = 0; a < eye.amp_bins; ++a) {
            const auto c = eye.at(ph, a);
            if (c == 0)
                continue;
            out << ph << ',' << a << ','
                << format_number(eye.amp_lo + static_cast<double>(a) * step) << ',' << c << '\n';
        }
}

// Minimal SVG polyline chart, enough for sweep/map visuals.
void write_svg_line(const std::filesystem::path& p, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<double>& xs, const std::vector<double>& ys)
{
    const int width = 720, height = 480, margin = 60;
    double x_lo = xs.front(), x_hi = xs.front(), y_lo = ys.front(), y_hi = ys.front();
    for (double x : xs) {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
    }
    for (double y : ys) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo)
        x_hi = x_lo + 1.0;
    if (y_hi == y_lo)
        y_hi = y_lo + 1.0;
    const double x_pad = 0.03 * (x_hi - x_lo), y_pad = 0.06 * (y_hi - y_lo);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double x) {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    };

    auto out = open_out(p);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << height / 2 << ")\">" << y_label << "</text>\n";

    // ticks
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        out << "<line x1=\"" << format_number(px(xv)) << "\" y1=\"" << height - margin
            << "\" x2=\"" << format_number(px(xv)) << "\" y2=\"" << height - margin + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << format_number(px(xv)) << "\" y=\"" << height - margin + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(xv) << "</text>\n";
        out << "<line x1=\"" << margin - 5 << "\" y1=\"" << format_number(py(yv)) << "\" x2=\""
            << margin << "\" y2=\"" << format_number(py(yv)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << margin - 8 << "\" y=\"" << format_number(py(yv) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(yv) << "</text>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_number(px(xs[i])) << ',' << format_number(py(ys[i])) << ' ';
    out << "\"/>\n";

    for (std::size_t i = 0; i < xs.size(); ++i)
        out << "<circle cx=\"" << format_number(px(xs[i])) << "\" cy=\""
            << format_number(py(ys[i])) << "\" r=\"2.5\" fill=\"#1565c0\"/>\n";
    out << "</svg>\n";
}

} // namespace

void write_run_outputs(const RunResult& run, const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);

    {
        auto out = open_out(out_dir / "metrics.csv");
        out << "channel_index,wavelength_nm,rx_power_dbm,q_db,ber_estimated,ber_counted,"
               "eye_opening,aligned\n";
        for (const auto& ch : run.channels) {
            out << ch.channel_index << ',' << format_number(ch.wavelength_nm) << ','
                << format_number(ch.rx_power_dbm) << ',' << format_number(ch.qber.q_db) << ','
                << format_number(ch.qber.ber_estimated) << ',';
            if (ch.qber.ber_counted)
                out << format_number(*ch.qber.ber_counted);
            out << ',' << format_number(ch.eye.eye_opening) << ',' << (ch.qber.aligned ? 1 : 0)
                << '\n';
        }
    }

    write_dispersion_csv(run.map, out_dir / "dispersion_map.csv");

    if (!run.tx_spectrum.empty())
        write_spectrum_csv(run.tx_spectrum, out_dir / "spectrum_tx.csv");
    if (!run.rx_spectrum.empty())
        write_spectrum_csv(run.rx_spectrum, out_dir / "spectrum_rx.csv");

    if (run.config.metrics.emit_eyes) {
        for (const auto& ch : run.channels) {
            char name[32];
            std::snprintf(name, sizeof(name), "eye_ch%03d", ch.channel_index);
            write_eye_pgm(ch.eye, out_dir / (std::string(name) + ".pgm"));
            write_eye_csv(ch.eye, out_dir / (std::string(name) + ".csv"));
        }
    }

    {
        nlohmann::json info;
        char hash_hex[20];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(run.hash));
        info["name"] = run.config.name;
        info["config_hash"] = hash_hex;
        info["seed"] = run.config.seed;
        info["channels"] = run.config.plan.n_channels;
        info["loops"] = run.config.loops;
        info["line_total_ps_nm"] = run.line_total_ps_nm;
        info["residual_ps_nm"] = run.residual_ps_nm;
        info["elapsed_seconds"] = run.elapsed_seconds; // varies run to run, by design
        auto out = open_out(out_dir / "run_info.json");
        out << info.dump(2) << '\n';
    }
}

void write_sweep_outputs(const std::vector<SweepPoint>& points, const std::string& param,
                         const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);
    {
        auto out = open_out(out_dir / "sweep.csv");
        out << "value,worst_q_db,worst_ber_estimated,mean_q_db,mean_rx_power_dbm\n";
        for (const auto& pt : points)
            out << format_number(pt.value) << ',' << format_number(pt.worst_q_db) << ','
                << format_number(pt.worst_ber_estimated) << ',' << format_number(pt.mean_q_db)
                << ',' << format_number(pt.mean_rx_power_dbm) << '\n';
    }

    std::vector<double> xs, ys;
    for (const auto& pt : points) {
        xs.push_back(pt.value);
        // clamp so perfect channels stay plottable
        ys.push_back(std::log10(std::max(pt.worst_ber_estimated, 1e-40)));
    }
    write_svg_line(out_dir / "sweep_ber.svg", "worst-channel BER vs " + param, param,
                   "log10(BER)", xs, ys);
}

void write_map_outputs(const std::vector<DispersionMapPoint>& map, double line_total_ps_nm,
                       double residual_ps_nm, const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);
    write_dispersion_csv(map, out_dir / "dispersion_map.csv");

    std::vector<double> xs, ys;
    for (const auto& pt : map) {
        xs.push_back(pt.position_km);
        ys.push_back(pt.cumulative_ps_nm);
    }
    std::ostringstream title;
    title << "dispersion map (line total " << format_number(line_total_ps_nm)
          << " ps/nm, residual " << format_number(residual_ps_nm) << " ps/nm)";
    write_svg_line(out_dir / "dispersion_map.svg", title.str(), "position [km]",
                   "cumulative dispersion [ps/nm]", xs, ys);
}

} // namespace wdmsim
