#pragma once

#include "wdmsim/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wdmsim {

/// Shortest-faithful float formatting used by every emitter ("%.9g");
/// repeated runs therefore produce byte-identical files.
std::string format_number(double v);

/// metrics.csv, dispersion_map.csv, spectra, eye rasters/histograms and
/// run_info.json under out_dir (created if needed).
void write_run_outputs(const RunResult& run, const std::filesystem::path& out_dir);

/// sweep.csv and a BER-vs-parameter SVG plot.
void write_sweep_outputs(const std::vector<SweepPoint>& points, const std::string& param,
                         const std::filesystem::path& out_dir);

/// dispersion_map.csv plus an SVG rendering of the map.
void write_map_outputs(const std::vector<DispersionMapPoint>& map, double line_total_ps_nm,
                       double residual_ps_nm, const std::filesystem::path& out_dir);

} // namespace wdmsim
