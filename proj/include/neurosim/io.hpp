// io.hpp - result serialization: CSV tables, the line-oriented event log,
// JSON summaries, the run manifest, and a small self-contained SVG renderer
// for optional plots. All numeric output uses 9 significant digits and is a
// pure function of the data, so identical runs produce identical bytes.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "neurosim/config.hpp"
#include "neurosim/engine.hpp"

namespace neurosim {

/// 9-significant-digit representation used in all CSV output.
std::string fmt_sig9(double v);

/// Write via a temp file + rename so readers never observe partial content.
void write_text_atomic(const std::string& path, const std::string& content);

void write_json_atomic(const std::string& path, const nlohmann::json& j);

/// Long-format trace table: time_s,signal_id,value_A.
std::string traces_to_csv(const TraceSet& traces);

/// Spike table: neuron_id,time_s (ids resolved through the network).
std::string spikes_to_csv(const std::vector<SpikeRecord>& spikes,
                          const std::vector<std::string>& neuron_ids);

/// Event log lines: `t=<seconds> kind=<event> id=<id> detail=<text>`.
std::string events_to_log(const std::vector<LoggedEvent>& log);

/// Manifest written after all other files: resolved config snapshot, seed,
/// tool version, the created file list, and wall-clock duration.
void write_manifest(const std::string& out_dir, const Config& cfg,
                    std::uint64_t seed, const std::vector<std::string>& files,
                    double wall_clock_s);

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal deterministic SVG line chart. Log axes drop non-positive points.
std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<PlotSeries>& series,
                            bool logx = false, bool logy = false);

}  // namespace neurosim
