// io.cpp - serialization and plotting.
#include "neurosim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace neurosim {

std::string fmt_sig9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("io: cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("io: write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

std::string traces_to_csv(const TraceSet& traces) {
    std::ostringstream out;
    out << "time_s,signal_id,value_A\n";
    for (std::size_t i = 0; i < traces.times.size(); ++i) {
        const std::string t = fmt_sig9(traces.times[i]);
        for (const auto& sig : traces.signals)
            out << t << ',' << sig.id << ',' << fmt_sig9(sig.values[i]) << '\n';
    }
    return out.str();
}

std::string spikes_to_csv(const std::vector<SpikeRecord>& spikes,
                          const std::vector<std::string>& neuron_ids) {
    std::ostringstream out;
    out << "neuron_id,time_s\n";
    for (const auto& s : spikes)
        out << neuron_ids.at(s.neuron) << ',' << fmt_sig9(s.t) << '\n';
    return out.str();
}

std::string events_to_log(const std::vector<LoggedEvent>& log) {
    std::ostringstream out;
    for (const auto& e : log)
        out << "t=" << fmt_sig9(e.t) << " kind=" << e.kind << " id=" << e.id
            << " detail=" << e.detail << '\n';
    return out.str();
}

void write_manifest(const std::string& out_dir, const Config& cfg,
                    std::uint64_t seed, const std::vector<std::string>& files,
                    double wall_clock_s) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = print_config(cfg);
    j["outputs"] = files;
    j["wall_clock_s"] = wall_clock_s;
    write_json_atomic((std::filesystem::path(out_dir) / "manifest.json").string(), j);
}

// ---------------------------------------------------------------------------
// SVG plotting
// ---------------------------------------------------------------------------

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<PlotSeries>& series, bool logx,
                            bool logy) {
    constexpr double W = 720, H = 460, L = 80, R = 24, T = 40, B = 58;
    const double plot_w = W - L - R, plot_h = H - T - B;

    // Transformed data extents.
    auto tx = [&](double v) { return logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return logy ? std::log10(v) : v; };
    bool any = false;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((logx && !(s.x[i] > 0.0)) || (logy && !(s.y[i] > 0.0))) continue;
            const double x = tx(s.x[i]), y = ty(s.y[i]);
            if (!any) { x0 = x1 = x; y0 = y1 = y; any = true; }
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    }
    if (!any) { x0 = y0 = 0; x1 = y1 = 1; }
    if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
    if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
    const double ypad = 0.05 * (y1 - y0);
    y0 -= ypad; y1 += ypad;

    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double v) { return T + plot_h - (ty(v) - y0) / (y1 - y0) * plot_h; };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
    constexpr int n_colors = 6;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(title)
        << "</text>\n";

    // Grid and ticks: 6 uniform divisions of the transformed range.
    for (int i = 0; i <= 5; ++i) {
        const double fx = x0 + (x1 - x0) * i / 5.0;
        const double fy = y0 + (y1 - y0) * i / 5.0;
        const double gx = L + plot_w * i / 5.0;
        const double gy = T + plot_h - plot_h * i / 5.0;
        out << "<line x1=\"" << fmt_coord(gx) << "\" y1=\"" << T << "\" x2=\""
            << fmt_coord(gx) << "\" y2=\"" << T + plot_h
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << L << "\" y1=\"" << fmt_coord(gy) << "\" x2=\""
            << L + plot_w << "\" y2=\"" << fmt_coord(gy)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        const double xv = logx ? std::pow(10.0, fx) : fx;
        const double yv = logy ? std::pow(10.0, fy) : fy;
        out << "<text x=\"" << fmt_coord(gx) << "\" y=\"" << T + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(xv) << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << fmt_coord(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(yv) << "</text>\n";
    }
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << L + plot_w / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(xlabel) << "</text>\n";
    out << "<text x=\"18\" y=\"" << T + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << T + plot_h / 2 << ")\">"
        << escape_xml(ylabel) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = colors[si % n_colors];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((logx && !(s.x[i] > 0.0)) || (logy && !(s.y[i] > 0.0))) continue;
            pts << fmt_coord(px(s.x[i])) << ',' << fmt_coord(py(s.y[i])) << ' ';
        }
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        const double ly = T + 16 + 16 * static_cast<double>(si);
        out << "<line x1=\"" << L + plot_w - 150 << "\" y1=\"" << fmt_coord(ly - 4)
            << "\" x2=\"" << L + plot_w - 126 << "\" y2=\"" << fmt_coord(ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << L + plot_w - 120 << "\" y=\"" << fmt_coord(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << escape_xml(s.name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace neurosim
