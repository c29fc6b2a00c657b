// experiments.cpp - experiment drivers and their file-emitting wrappers.
#include "neurosim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "neurosim/io.hpp"

namespace neurosim {

namespace {

namespace fs = std::filesystem;

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> neuron_spike_times(const RunResult& rr, std::size_t neuron) {
    std::vector<double> t;
    for (const auto& s : rr.spikes)
        if (s.neuron == neuron) t.push_back(s.t);
    return t;
}

std::size_t threads_from_env(std::size_t n_tasks) {
    std::size_t t = 0;
    if (const char* e = std::getenv("NEUROSIM_THREADS"); e && *e) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(e, &end, 10);
        if (end && *end == '\0') t = static_cast<std::size_t>(v);
    }
    if (t == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        t = hw ? hw : 1;
    }
    if (n_tasks == 0) n_tasks = 1;
    return std::max<std::size_t>(1, std::min(t, n_tasks));
}

}  // namespace

// ---------------------------------------------------------------------------
// Tau sweep
// ---------------------------------------------------------------------------

const std::vector<double>& reference_i_tau_sweep() {
    static const std::vector<double> v = {1e-15,   5e-15,   10e-15,  20e-15,
                                          50e-15,  100e-15, 200e-15, 300e-15,
                                          400e-15, 500e-15};
    return v;
}

const std::vector<double>& reference_tau_fits() {
    static const std::vector<double> v = {5.81,  3.42,  2.21,  1.26,  0.535,
                                          0.270, 0.138, 0.093, 0.070, 0.056};
    return v;
}

std::vector<TauSweepRow> compute_tau_sweep(const Config& cfg,
                                           const std::vector<double>& i_taus) {
    if (i_taus.empty()) throw ConfigError("fit-tau: empty I_tau sweep");
    if (cfg.trains.empty())
        throw ConfigError("fit-tau: configuration defines no stimulus train");
    const TrainDecl& tr = cfg.trains.front();

    std::vector<TauSweepRow> rows;
    rows.reserve(i_taus.size());
    for (const double i_tau : i_taus) {
        if (!(i_tau > 0.0)) throw ConfigError("fit-tau: I_tau values must be > 0");
        DpiSynapseParams sp = cfg.synapse;
        sp.I_tau = i_tau;
        validate(sp);

        const double tau_pred = effective_tau(sp.C_syn, i_tau, cfg.leak, cfg.constants);
        const double decay_window = std::min(5.0 * tau_pred, 40.0);
        EngineConfig ec = cfg.engine;
        ec.duration = tr.stop + decay_window;
        ec.sample_interval = std::clamp(tau_pred / 200.0, 1e-6, 20e-3);
        ec.record_traces = true;
        ec.record_events = false;

        auto run_once = [&](const DpiSynapseParams& p) {
            Network net;
            net.constants = cfg.constants;
            net.leak = cfg.leak;
            net.synapses.push_back({"s0", p, 0});
            StimulusProgram prog;
            prog.trains.push_back(
                {0, tr.rate_hz, tr.start, tr.stop, tr.poisson, tr.weight});
            return run(net, prog, ec);
        };

        // The EPSC is proportional to I_w, so one probe run fixes the weight
        // that lands the peak exactly on the 1 nA reference amplitude.
        RunResult probe = run_once(sp);
        const auto& probe_vals = probe.traces.signals.at(0).values;
        const double probe_peak = *std::max_element(probe_vals.begin(), probe_vals.end());
        if (!(probe_peak > 0.0))
            throw FitError("fit-tau: stimulus produced no synaptic current");
        sp.I_w *= 1e-9 / probe_peak;

        RunResult rr = run_once(sp);
        const auto& times = rr.traces.times;
        const auto& vals = rr.traces.signals.at(0).values;

        std::vector<double> t_fit, v_fit;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] >= tr.stop - 1e-12) {
                t_fit.push_back(times[i]);
                v_fit.push_back(vals[i]);
            }
        }
        const TauFitResult fit = fit_tau(t_fit, v_fit);

        TauSweepRow row;
        row.i_tau_a = i_tau;
        row.tau_theory_s =
            sp.C_syn * cfg.constants.U_T / (cfg.constants.kappa * i_tau);
        row.tau_fit_s = fit.tau_s;
        row.r2 = fit.r2;
        row.peak_a = *std::max_element(vals.begin(), vals.end());
        row.i_w_a = sp.I_w;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// F-I
// ---------------------------------------------------------------------------

namespace {

void apply_bias(AdexNeuronParams& p, const std::string& name, double value) {
    if (name == "I_ref") p.I_ref = value;
    else if (name == "I_thr") p.I_thr = value;
    else if (name == "gain_ratio") p.gain_ratio_leak = value;
    else throw ConfigError("fi: unknown sweep bias '" + name +
                           "' (expected I_ref, gain_ratio, or I_thr)");
}

}  // namespace

std::vector<FiSweepResult> compute_fi(const Config& cfg,
                                      const std::vector<double>& iin_grid,
                                      const std::string& bias_name,
                                      const std::vector<double>& bias_values) {
    if (iin_grid.empty()) throw ConfigError("fi: empty I_in grid");
    for (std::size_t i = 1; i < iin_grid.size(); ++i)
        if (!(iin_grid[i] > iin_grid[i - 1]))
            throw ConfigError("fi: I_in grid must be strictly increasing");
    if (!bias_name.empty() && bias_values.empty())
        throw ConfigError("fi: bias sweep named but no values given");

    EngineConfig ec = cfg.engine;
    ec.record_traces = false;
    ec.record_events = false;
    const double warmup = 0.1 * ec.duration;

    std::vector<FiSweepResult> results;
    const std::size_t n_bias = bias_name.empty() ? 1 : bias_values.size();
    for (std::size_t b = 0; b < n_bias; ++b) {
        FiSweepResult res;
        AdexNeuronParams np = cfg.neuron;
        if (!bias_name.empty()) {
            res.bias_name = bias_name;
            res.bias_value = bias_values[b];
            apply_bias(np, bias_name, bias_values[b]);
        }
        validate(np);
        for (const double i_in : iin_grid) {
            Network net;
            net.constants = cfg.constants;
            net.leak = cfg.leak;
            net.neurons.push_back({"n0", np});
            StimulusProgram prog;
            prog.steps.push_back({0, i_in, 0.0, ec.duration});
            const RunResult rr = run(net, prog, ec);
            const double rate =
                rate_from_spikes(neuron_spike_times(rr, 0), warmup, ec.duration);
            res.curve.points.push_back({i_in, rate});
        }
        results.push_back(std::move(res));
    }
    return results;
}

// ---------------------------------------------------------------------------
// Adaptation
// ---------------------------------------------------------------------------

AdaptResult compute_adapt(const Config& cfg, double i_in) {
    EngineConfig ec = cfg.engine;
    ec.record_events = false;
    const double warmup = 0.1 * ec.duration;

    auto run_one = [&](bool ahp_on, bool traces) {
        AdexNeuronParams np = cfg.neuron;
        np.ahp_enabled = ahp_on;
        validate(np);
        Network net;
        net.constants = cfg.constants;
        net.leak = cfg.leak;
        net.neurons.push_back({"n0", np});
        StimulusProgram prog;
        prog.steps.push_back({0, i_in, 0.0, ec.duration});
        EngineConfig e = ec;
        e.record_traces = traces;
        return run(net, prog, e);
    };

    AdaptResult out;
    out.run_on = run_one(true, true);
    const RunResult run_off = run_one(false, false);

    const auto t_on = neuron_spike_times(out.run_on, 0);
    if (t_on.size() < 4)
        throw FitError("adapt: need >= 4 spikes to measure ISI trend, got " +
                       std::to_string(t_on.size()));
    out.n_spikes = t_on.size();
    out.first_isi_s = t_on[1] - t_on[0];
    out.steady_isi_s = t_on[t_on.size() - 1] - t_on[t_on.size() - 2];
    out.rate_on_hz = rate_from_spikes(t_on, warmup, ec.duration);
    out.rate_off_hz =
        rate_from_spikes(neuron_spike_times(run_off, 0), warmup, ec.duration);

    // Signals for a synapse-free single neuron: [0] = I_mem, [1] = I_ahp.
    const auto& ahp_vals = out.run_on.traces.signals.at(1).values;
    out.max_i_ahp_a = ahp_vals.empty()
                          ? 0.0
                          : *std::max_element(ahp_vals.begin(), ahp_vals.end());
    return out;
}

// ---------------------------------------------------------------------------
// Energy
// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> compute_energy_curve(const PowerModel& model,
                                                            double f_lo, double f_hi,
                                                            std::size_t steps) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo))
        throw ConfigError("energy: need 0 < F1 < F2 in the frequency grid");
    if (steps < 2) throw ConfigError("energy: need >= 2 grid steps");
    std::vector<std::pair<double, double>> out;
    out.reserve(steps);
    const double ratio = f_hi / f_lo;
    for (std::size_t i = 0; i < steps; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(steps - 1);
        const double f = (i + 1 == steps) ? f_hi : f_lo * std::pow(ratio, frac);
        out.push_back({f, energy_per_spike(model, f)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

McOutcome compute_mc(const Config& cfg, std::size_t n_runs) {
    if (n_runs < 1) throw ConfigError("mc: need at least 1 run");
    const BuiltNetwork base = build_network(cfg);
    if (base.net.neurons.empty())
        throw ConfigError("mc: the configured network has no neurons");
    const StimulusProgram prog = build_stimulus(cfg, base);

    EngineConfig ec = cfg.engine;
    ec.record_traces = false;
    ec.record_events = false;
    const double warmup = 0.1 * ec.duration;

    auto rate_for = [&](bool perturb, std::uint64_t run_idx) {
        Network net = base.net;
        if (perturb)
            for (auto& inst : net.neurons)
                inst.params = apply_mismatch(inst.params, cfg.mismatch, run_idx);
        const RunResult rr = run(net, prog, ec);
        return rate_from_spikes(neuron_spike_times(rr, 0), warmup, ec.duration);
    };

    McOutcome out;
    out.nominal_hz = rate_for(false, 0);
    out.rates_hz.assign(n_runs, 0.0);

    const std::size_t n_threads = threads_from_env(n_runs);
    if (n_threads <= 1) {
        for (std::size_t r = 0; r < n_runs; ++r) out.rates_hz[r] = rate_for(true, r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            for (;;) {
                const std::size_t r = next.fetch_add(1);
                if (r >= n_runs) return;
                try {
                    out.rates_hz[r] = rate_for(true, r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    out.stats = summarize(out.rates_hz);
    out.hist = make_histogram(out.rates_hz, 20);
    return out;
}

// ---------------------------------------------------------------------------
// IO wrappers
// ---------------------------------------------------------------------------

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void finish(const std::string& out_dir, const Config& cfg, std::uint64_t seed,
            std::vector<std::string>& files,
            std::chrono::steady_clock::time_point t0) {
    files.push_back("manifest.json");
    write_manifest(out_dir, cfg, seed, files, elapsed_s(t0));
}

}  // namespace

std::vector<std::string> run_simulate(const Config& cfg, const std::string& out_dir,
                                      bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const BuiltNetwork b = build_network(cfg);
    const StimulusProgram prog = build_stimulus(cfg, b);
    const RunResult rr = run(b.net, prog, cfg.engine);

    std::vector<std::string> neuron_ids;
    for (const auto& n : b.net.neurons) neuron_ids.push_back(n.id);

    std::vector<std::string> files;
    write_text_atomic(join_path(out_dir, "traces.csv"), traces_to_csv(rr.traces));
    files.push_back("traces.csv");
    write_text_atomic(join_path(out_dir, "spikes.csv"),
                      spikes_to_csv(rr.spikes, neuron_ids));
    files.push_back("spikes.csv");
    write_text_atomic(join_path(out_dir, "events.log"), events_to_log(rr.log));
    files.push_back("events.log");

    nlohmann::json j;
    j["duration_s"] = cfg.engine.duration;
    j["n_spikes"] = rr.spikes.size();
    j["n_aer_events"] = rr.aer_events.size();
    nlohmann::json per;
    for (std::size_t i = 0; i < neuron_ids.size(); ++i) {
        std::size_t count = 0;
        for (const auto& s : rr.spikes)
            if (s.neuron == i) ++count;
        per[neuron_ids[i]] = count;
    }
    j["spikes_per_neuron"] = per;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        std::vector<PlotSeries> series;
        for (const auto& sig : rr.traces.signals)
            series.push_back({sig.id, rr.traces.times, sig.values});
        write_text_atomic(join_path(out_dir, "traces.svg"),
                          render_svg_plot("Simulated traces", "time [s]",
                                          "current [A]", series));
        files.push_back("traces.svg");
    }
    finish(out_dir, cfg, cfg.engine.seed, files, t0);
    return files;
}

std::vector<std::string> run_fit_tau(const Config& cfg,
                                     const std::vector<double>& i_taus,
                                     const std::string& out_dir, bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const auto rows = compute_tau_sweep(cfg, i_taus);

    std::ostringstream csv;
    csv << "I_tau_A,tau_theoretical_s,tau_fitted_s,r2\n";
    for (const auto& r : rows)
        csv << fmt_sig9(r.i_tau_a) << ',' << fmt_sig9(r.tau_theory_s) << ','
            << fmt_sig9(r.tau_fit_s) << ',' << fmt_sig9(r.r2) << '\n';

    std::vector<std::string> files;
    write_text_atomic(join_path(out_dir, "tau_sweep.csv"), csv.str());
    files.push_back("tau_sweep.csv");

    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["i_tau_a"] = r.i_tau_a;
        row["tau_s"] = r.tau_fit_s;
        row["tau_theory_s"] = r.tau_theory_s;
        row["r2"] = r.r2;
        row["peak_a"] = r.peak_a;
        arr.push_back(row);
    }
    j["rows"] = arr;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        PlotSeries fitted{"fitted", {}, {}};
        PlotSeries theory{"theory", {}, {}};
        for (const auto& r : rows) {
            fitted.x.push_back(r.i_tau_a);
            fitted.y.push_back(r.tau_fit_s);
            theory.x.push_back(r.i_tau_a);
            theory.y.push_back(r.tau_theory_s);
        }
        write_text_atomic(
            join_path(out_dir, "tau_sweep.svg"),
            render_svg_plot("Synapse time constant vs decay bias", "I_tau [A]",
                            "tau [s]", {fitted, theory}, true, true));
        files.push_back("tau_sweep.svg");
    }
    finish(out_dir, cfg, cfg.engine.seed, files, t0);
    return files;
}

std::vector<std::string> run_fi(const Config& cfg, const std::vector<double>& grid,
                                const std::string& bias_name,
                                const std::vector<double>& bias_values,
                                const std::string& out_dir, bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const auto results = compute_fi(cfg, grid, bias_name, bias_values);

    std::vector<std::string> files;
    nlohmann::json fi_json = nlohmann::json::array();
    std::vector<PlotSeries> series;
    for (const auto& res : results) {
        std::string stem = "fi";
        std::string label = "F-I";
        if (!res.bias_name.empty()) {
            stem += "_" + res.bias_name + "_" + fmt_sig9(res.bias_value);
            label = res.bias_name + "=" + fmt_sig9(res.bias_value);
        }
        std::ostringstream csv;
        csv << "I_in_A,rate_hz\n";
        PlotSeries s{label, {}, {}};
        nlohmann::json points = nlohmann::json::array();
        for (const auto& p : res.curve.points) {
            csv << fmt_sig9(p.i_in) << ',' << fmt_sig9(p.rate_hz) << '\n';
            s.x.push_back(p.i_in);
            s.y.push_back(p.rate_hz);
            points.push_back({{"i_in_a", p.i_in}, {"rate_hz", p.rate_hz}});
        }
        write_text_atomic(join_path(out_dir, stem + ".csv"), csv.str());
        files.push_back(stem + ".csv");
        nlohmann::json entry;
        entry["bias"] = res.bias_name;
        entry["value"] = res.bias_value;
        entry["points"] = points;
        fi_json.push_back(entry);
        series.push_back(std::move(s));
    }
    nlohmann::json j;
    j["fi"] = fi_json;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        write_text_atomic(join_path(out_dir, "fi.svg"),
                          render_svg_plot("Firing rate vs input current",
                                          "I_in [A]", "rate [Hz]", series));
        files.push_back("fi.svg");
    }
    finish(out_dir, cfg, cfg.engine.seed, files, t0);
    return files;
}

std::vector<std::string> run_adapt(const Config& cfg, double i_in,
                                   const std::string& out_dir, bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const AdaptResult res = compute_adapt(cfg, i_in);

    std::vector<std::string> files;
    write_text_atomic(join_path(out_dir, "traces.csv"),
                      traces_to_csv(res.run_on.traces));
    files.push_back("traces.csv");
    write_text_atomic(join_path(out_dir, "spikes.csv"),
                      spikes_to_csv(res.run_on.spikes, {"n0"}));
    files.push_back("spikes.csv");

    nlohmann::json j;
    j["first_isi_s"] = res.first_isi_s;
    j["steady_isi_s"] = res.steady_isi_s;
    j["rate_on_hz"] = res.rate_on_hz;
    j["rate_off_hz"] = res.rate_off_hz;
    j["max_i_ahp_a"] = res.max_i_ahp_a;
    j["n_spikes"] = res.n_spikes;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        std::vector<PlotSeries> series;
        for (const auto& sig : res.run_on.traces.signals)
            series.push_back({sig.id, res.run_on.traces.times, sig.values});
        write_text_atomic(join_path(out_dir, "adapt.svg"),
                          render_svg_plot("Adaptation under constant drive",
                                          "time [s]", "current [A]", series));
        files.push_back("adapt.svg");
    }
    finish(out_dir, cfg, cfg.engine.seed, files, t0);
    return files;
}

std::vector<std::string> run_energy(const Config& cfg, double f_lo, double f_hi,
                                    std::size_t steps, const std::string& out_dir,
                                    bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const auto curve = compute_energy_curve(cfg.power, f_lo, f_hi, steps);

    std::ostringstream csv;
    csv << "rate_hz,energy_j\n";
    for (const auto& [f, e] : curve)
        csv << fmt_sig9(f) << ',' << fmt_sig9(e) << '\n';

    std::vector<std::string> files;
    write_text_atomic(join_path(out_dir, "energy.csv"), csv.str());
    files.push_back("energy.csv");

    nlohmann::json j;
    j["p_static_w"] = cfg.power.p_static_w;
    j["e_switch_j"] = cfg.power.e_switch_j;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [f, e] : curve)
        arr.push_back({{"rate_hz", f}, {"energy_pj", e * 1e12}});
    j["energy_pj"] = arr;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        PlotSeries s{"energy per spike", {}, {}};
        for (const auto& [f, e] : curve) {
            s.x.push_back(f);
            s.y.push_back(e);
        }
        write_text_atomic(join_path(out_dir, "energy.svg"),
                          render_svg_plot("Energy per spike vs firing rate",
                                          "rate [Hz]", "energy [J]", {s}, true,
                                          true));
        files.push_back("energy.svg");
    }
    finish(out_dir, cfg, cfg.engine.seed, files, t0);
    return files;
}

std::vector<std::string> run_mc(const Config& cfg, std::size_t n_runs,
                                const std::string& out_dir, bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const McOutcome out = compute_mc(cfg, n_runs);

    std::vector<std::string> files;
    std::ostringstream hist_csv;
    hist_csv << "bin_low_hz,bin_high_hz,count\n";
    for (const auto& b : out.hist)
        hist_csv << fmt_sig9(b.lo) << ',' << fmt_sig9(b.hi) << ',' << b.count << '\n';
    write_text_atomic(join_path(out_dir, "histogram.csv"), hist_csv.str());
    files.push_back("histogram.csv");

    std::ostringstream rates_csv;
    rates_csv << "run,rate_hz\n";
    for (std::size_t r = 0; r < out.rates_hz.size(); ++r)
        rates_csv << r << ',' << fmt_sig9(out.rates_hz[r]) << '\n';
    write_text_atomic(join_path(out_dir, "rates.csv"), rates_csv.str());
    files.push_back("rates.csv");

    nlohmann::json j;
    nlohmann::json mc;
    mc["n_runs"] = out.rates_hz.size();
    mc["mean_hz"] = out.stats.mean;
    mc["std_hz"] = out.stats.stddev;
    mc["cv"] = out.stats.cv;
    mc["nominal_hz"] = out.nominal_hz;
    mc["zero_rate_runs"] = out.stats.zero_count;
    j["mc"] = mc;
    j["seed"] = cfg.mismatch.seed;
    write_json_atomic(join_path(out_dir, "summary.json"), j);
    files.push_back("summary.json");

    if (plot) {
        PlotSeries s{"runs per bin", {}, {}};
        for (const auto& b : out.hist) {
            s.x.push_back(0.5 * (b.lo + b.hi));
            s.y.push_back(static_cast<double>(b.count));
        }
        write_text_atomic(join_path(out_dir, "mc.svg"),
                          render_svg_plot("Firing-rate distribution under mismatch",
                                          "rate [Hz]", "runs", {s}));
        files.push_back("mc.svg");
    }
    finish(out_dir, cfg, cfg.mismatch.seed, files, t0);
    return files;
}

}  // namespace neurosim
