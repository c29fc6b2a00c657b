// Standalone acceptance harness. Each criterion prints exactly one line:
//   CRITERION <n>: PASS|FAIL - <detail>
// The process exits nonzero if any criterion fails. Criteria that drive the
// command-line binary receive its path via --cli <path>.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neurosim/experiments.hpp"
#include "neurosim/numerics.hpp"

using namespace neurosim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string& detail) {
    std::printf("CRITERION %d: %s - %s\n", n, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Criteria 1-3: synapse time-constant sweeps
// ---------------------------------------------------------------------------

void criterion_1_tau_table(const std::vector<TauSweepRow>& rows, double runtime_s) {
    const auto& ref = reference_tau_fits();
    bool outer_ok = true, inner_ok = true;
    double worst_outer = 0.0, worst_inner = 0.0;
    double worst_inner_itau = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double rel = rows[i].tau_fit_s / ref[i] - 1.0;
        if (std::abs(rel) > std::abs(worst_outer)) worst_outer = rel;
        if (std::abs(rel) > 0.10) outer_ok = false;
        if (rows[i].i_tau_a >= 100e-15 - 1e-21) {
            if (std::abs(rel) > std::abs(worst_inner)) {
                worst_inner = rel;
                worst_inner_itau = rows[i].i_tau_a;
            }
            if (std::abs(rel) > 0.03) inner_ok = false;
        }
    }
    const bool time_ok = runtime_s < 120.0;
    report(1, outer_ok && inner_ok && time_ok,
           fmt("reference-table sweep: all rows within 10%% (worst %+.2f%%): %s; "
               "rows >= 100 fA within 3%% (worst %+.2f%% at %.0f fA): %s; "
               "runtime %.2f s < 120 s: %s",
               100.0 * worst_outer, outer_ok ? "yes" : "no", 100.0 * worst_inner,
               worst_inner_itau * 1e15, inner_ok ? "yes" : "no", runtime_s,
               time_ok ? "yes" : "no"));
}

void criterion_2_leak_off_theory(const Config& base) {
    Config cfg = base;
    cfg.leak.enabled = false;
    const auto rows = compute_tau_sweep(cfg, reference_i_tau_sweep());
    double worst = 0.0;
    for (const auto& r : rows) {
        const double rel = r.tau_fit_s / r.tau_theory_s - 1.0;
        if (std::abs(rel) > std::abs(worst)) worst = rel;
    }
    report(2, std::abs(worst) <= 0.01,
           fmt("leak disabled: fitted tau vs C*U_T/(kappa*I_tau) worst "
               "deviation %+.4f%% (tolerance 1%%)",
               100.0 * worst));
}

void criterion_3_saturation(const Config& base) {
    const auto rows = compute_tau_sweep(base, {0.1e-15, 1e-15});
    const double tau_01 = rows[0].tau_fit_s;
    const double tau_1 = rows[1].tau_fit_s;
    const double ceiling = base.synapse.C_syn * base.constants.U_T /
                           (base.constants.kappa * base.leak.total());
    const bool ceiling_ok = tau_01 <= ceiling;
    const double excess = tau_01 / tau_1 - 1.0;
    const bool margin_ok = excess < 0.10;
    report(3, ceiling_ok && margin_ok,
           fmt("tau(0.1 fA) = %.3f s vs ceiling %.3f s: %s; exceeds tau(1 fA) "
               "= %.3f s by %.1f%% (< 10%% required): %s",
               tau_01, ceiling, ceiling_ok ? "yes" : "no", tau_1, 100.0 * excess,
               margin_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Criterion 4: integrator oracles
// ---------------------------------------------------------------------------

void criterion_4_integrator(const Config& base) {
    const PhysicalConstants consts = base.constants;
    const LeakModel leak = base.leak;

    // (a) Membrane step response vs the first-order closed form.
    AdexNeuronParams np = base.neuron;
    np.I_fb0 = 0.0;
    np.ahp_enabled = false;
    const double tau = membrane_tau(np, leak, consts);
    const double i_in = 0.5e-9;  // settles at half threshold: never spikes
    Network net;
    net.constants = consts;
    net.leak = leak;
    net.neurons.push_back({"n0", np});
    StimulusProgram stim;
    EngineConfig ec;
    ec.duration = 10.0 * tau;
    ec.sample_interval = 1e-3;
    ec.record_events = false;
    stim.steps.push_back({0, i_in, 0.0, ec.duration});
    const RunResult rr = run(net, stim, ec);
    double worst_mem = 0.0;
    for (std::size_t i = 0; i < rr.traces.times.size(); ++i) {
        const double t = rr.traces.times[i];
        const double closed =
            np.gain_ratio_leak * i_in * (1.0 - std::exp(-t / tau));
        const double rel =
            std::abs(rr.traces.signals[0].values[i] - closed) /
            (np.gain_ratio_leak * i_in);
        worst_mem = std::max(worst_mem, rel);
    }
    const bool mem_ok = worst_mem < 1e-6 && rr.spikes.empty();

    // (b) Engine synapse channel vs the closed-form step composition.
    Network snet;
    snet.constants = consts;
    snet.leak = leak;
    snet.synapses.push_back({"s0", base.synapse, 0});
    StimulusProgram sstim;
    sstim.trains.push_back({0, 50.0, 0.0, 0.015, false, 1.0});  // one pulse
    EngineConfig sec;
    sec.duration = 0.1;
    sec.sample_interval = 1e-3;
    sec.record_events = false;
    const RunResult sr = run(snet, sstim, sec);
    SynapseState on;
    on.pulse_active = true;
    const double w = base.synapse.pulse_width;
    const double peak = exact_step(base.synapse, on, w, leak, consts);
    SynapseState off;
    off.I_syn = peak;
    double worst_syn = 0.0;
    for (std::size_t i = 0; i < sr.traces.times.size(); ++i) {
        const double t = sr.traces.times[i];
        double expected = 0.0;
        if (t > 0.0)
            expected = (t <= w)
                           ? exact_step(base.synapse, on, t, leak, consts)
                           : exact_step(base.synapse, off, t - w, leak, consts);
        const double denom = std::max(std::abs(expected), 1e-30);
        worst_syn = std::max(
            worst_syn, std::abs(sr.traces.signals[0].values[i] - expected) / denom);
    }
    const bool syn_ok = worst_syn <= 1e-12;

    report(4, mem_ok && syn_ok,
           fmt("membrane step vs closed form: worst rel err %.2e (< 1e-6): %s; "
               "synapse channel vs exact composition: worst rel err %.2e "
               "(<= 1e-12): %s",
               worst_mem, mem_ok ? "yes" : "no", worst_syn,
               syn_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Criteria 5-7: firing behavior
// ---------------------------------------------------------------------------

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = (i + 1 == n) ? hi
                            : lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
    return g;
}

void criterion_5_fi(const Config& base) {
    Config cfg = base;
    cfg.neuron.ahp_enabled = false;

    // (a) Linear region: 5..50 nA, R^2 of the straight-line fit.
    const auto lin = compute_fi(cfg, linear_grid(5e-9, 50e-9, 10), "", {});
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(lin[0].curve.points.size());
    for (const auto& p : lin[0].curve.points) {
        sx += p.i_in;
        sy += p.rate_hz;
        sxx += p.i_in * p.i_in;
        sxy += p.i_in * p.rate_hz;
        syy += p.rate_hz * p.rate_hz;
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double r2 = cov * cov / (vx * vy);
    const bool linear_ok = r2 > 0.99;

    // (b) Long refractory: I_ref = 2 nA -> t_ref = 100 us -> 10 kHz bound.
    Config slow = cfg;
    slow.neuron.I_ref = 2e-9;
    const auto sat =
        compute_fi(slow, linear_grid(100e-9, 5e-6, 8), "", {});
    const double bound = 1.0 / refractory_period(slow.neuron);
    const double top = sat[0].curve.points.back().rate_hz;
    const bool sat_ok = std::abs(top / bound - 1.0) <= 0.05;

    // (c) Short refractory: I_ref = 1 uA, monotone growth across the grid.
    Config fast = cfg;
    fast.neuron.I_ref = 1e-6;
    const auto open = compute_fi(fast, linear_grid(100e-9, 5e-6, 8), "", {});
    bool mono_ok = true;
    for (std::size_t i = 1; i < open[0].curve.points.size(); ++i)
        if (open[0].curve.points[i].rate_hz <=
            open[0].curve.points[i - 1].rate_hz)
            mono_ok = false;

    report(5, linear_ok && sat_ok && mono_ok,
           fmt("linear-region R^2 = %.6f (> 0.99): %s; saturation %.0f Hz vs "
               "1/t_ref %.0f Hz (within 5%%): %s; I_ref = 1 uA grows "
               "monotonically to %.0f Hz at grid end: %s",
               r2, linear_ok ? "yes" : "no", top, bound,
               sat_ok ? "yes" : "no", open[0].curve.points.back().rate_hz,
               mono_ok ? "yes" : "no"));
}

void criterion_6_gain_ratio(const Config& base) {
    Config cfg = base;
    cfg.neuron.ahp_enabled = false;
    const auto res = compute_fi(cfg, {3e-9}, "gain_ratio", {1.0, 2.0, 4.0});
    const double r1 = res[0].curve.points[0].rate_hz;
    const double r2 = res[1].curve.points[0].rate_hz;
    const double r4 = res[2].curve.points[0].rate_hz;
    const bool ok = r1 < r2 && r2 < r4;
    report(6, ok,
           fmt("rates at I_in = 3 nA for gain_ratio_leak {1, 2, 4}: %.1f / %.1f "
               "/ %.1f Hz, strictly increasing: %s",
               r1, r2, r4, ok ? "yes" : "no"));
}

void criterion_7_adaptation(const Config& base) {
    Config cfg = base;
    cfg.neuron.t_pex = 1e-3;      // extender long enough to feed the slow filter
    cfg.neuron.I_tau_ahp = 3e-12;
    cfg.engine.duration = 2.0;
    const AdaptResult res = compute_adapt(cfg, 3e-9);
    const bool isi_ok = res.first_isi_s < res.steady_isi_s;
    const bool rate_ok = res.rate_on_hz < res.rate_off_hz;
    const double ahp_cap = cfg.neuron.gain_ratio_ahp * cfg.neuron.I_a;
    const bool cap_ok = res.max_i_ahp_a <= ahp_cap;
    report(7, isi_ok && rate_ok && cap_ok,
           fmt("first ISI %.2f ms < steady ISI %.2f ms: %s; adapted rate %.1f "
               "Hz < AHP-off rate %.1f Hz: %s; peak I_ahp %.3g A <= bound "
               "%.3g A: %s",
               1e3 * res.first_isi_s, 1e3 * res.steady_isi_s,
               isi_ok ? "yes" : "no", res.rate_on_hz, res.rate_off_hz,
               rate_ok ? "yes" : "no", res.max_i_ahp_a, ahp_cap,
               cap_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Criterion 8: energy model
// ---------------------------------------------------------------------------

void criterion_8_energy() {
    const PowerModel m = calibrate_power({{30.0, 16e-12}, {2100.0, 1e-12}});
    // Derived oracle named by the criterion: the exact 2x2 linear solve of
    // E(f) = P/f + Es through (30 Hz, 16 pJ) and (2100 Hz, 1 pJ), which gives
    // P = 456.521739 pW and Es = 0.782608696 pJ. (The prose figures quoted
    // alongside the criterion are mutually inconsistent with that solve: a
    // static power of 456.5 fW would put E(30 Hz) at ~1 pJ, not 16 pJ.)
    const double p_ref = 456.5217391304348e-12;
    const double es_ref = 0.7826086956521744e-12;
    const bool p_ok = std::abs(m.p_static_w / p_ref - 1.0) <= 0.01;
    const bool es_ok = std::abs(m.e_switch_j / es_ref - 1.0) <= 0.01;

    const auto curve = compute_energy_curve(m, 10.0, 10000.0, 60);
    bool decreasing = true;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].second >= curve[i - 1].second) decreasing = false;
    const bool anchors_ok =
        std::abs(energy_per_spike(m, 30.0) / 16e-12 - 1.0) < 1e-12 &&
        std::abs(energy_per_spike(m, 2100.0) / 1e-12 - 1.0) < 1e-12;

    report(8, p_ok && es_ok && decreasing && anchors_ok,
           fmt("2x2 solve: P_static %.6g W, E_switch %.6g J, each within 1%% of "
               "the derived oracle: %s; curve strictly decreasing: %s; passes "
               "through 16 pJ @ 30 Hz and 1 pJ @ 2.1 kHz exactly: %s",
               m.p_static_w, m.e_switch_j, (p_ok && es_ok) ? "yes" : "no",
               decreasing ? "yes" : "no", anchors_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Criterion 9: Monte Carlo
// ---------------------------------------------------------------------------

Config mc_operating_point() {
    return parse_config(
        "[neuron]\n"
        "ahp_enabled = false\n"
        "[engine]\n"
        "duration = 2s\n"
        "[network]\n"
        "neuron n0\n"
        "[stimulus]\n"
        "dc n0 amp=1.54nA start=0s stop=2s\n");
}

void criterion_9_monte_carlo() {
    const auto t0 = std::chrono::steady_clock::now();

    Config zero = mc_operating_point();
    for (auto& [name, sigma] : zero.mismatch.sigma) sigma = 0.0;
    const McOutcome base = compute_mc(zero, 50);
    const bool zero_ok = base.stats.stddev == 0.0;

    const Config cfg = mc_operating_point();
    const McOutcome mc = compute_mc(cfg, 500);
    const double mean_rel = mc.stats.mean / mc.nominal_hz - 1.0;
    const bool mean_ok = std::abs(mean_rel) <= 0.05;
    const bool cv_ok = mc.stats.cv >= 0.11 && mc.stats.cv <= 0.15;
    const double runtime = seconds_since(t0);
    const bool time_ok = runtime < 600.0;

    report(9, zero_ok && mean_ok && cv_ok && time_ok,
           fmt("sigma = 0: std = %.3g over 50 runs: %s; calibrated sigma, n = "
               "500: mean %.2f Hz vs nominal %.2f Hz (%+.2f%%, within 5%%): %s; "
               "CV = %.4f in [0.11, 0.15]: %s; runtime %.1f s < 600 s: %s",
               base.stats.stddev, zero_ok ? "yes" : "no", mc.stats.mean,
               mc.nominal_hz, 100.0 * mean_rel, mean_ok ? "yes" : "no",
               mc.stats.cv, cv_ok ? "yes" : "no", runtime,
               time_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Criterion 10: AER protocol properties
// ---------------------------------------------------------------------------

void criterion_10_aer(const Config& base) {
    // (a) Randomized schedule: 1e5 signals, only the four-phase order accepted.
    const HsSignal all[4] = {HsSignal::ReqRise, HsSignal::AckRise,
                             HsSignal::ReqFall, HsSignal::AckFall};
    HandshakeState hs;
    int walk = 0;
    std::uint64_t accepted = 0, rejected = 0, order_breaks = 0;
    double t = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const HsSignal sig = all[hash_counters(2024, i, 0) % 4];
        t += 1e-9;
        try {
            hs_step(hs, sig, t);
            if (sig != all[walk]) ++order_breaks;  // accepted out of order
            walk = (walk + 1) % 4;
            ++accepted;
        } catch (const ProtocolViolation&) {
            if (static_cast<int>(hs.phase) != walk) ++order_breaks;
            ++rejected;
        }
    }
    const bool fsm_ok = order_breaks == 0 && accepted + rejected == 100000;

    // (b) Spike count equals the analytic upward-crossing count on a suite of
    // step and staircase drives (closed-form first-passage times).
    AdexNeuronParams np = base.neuron;
    np.I_fb0 = 0.0;
    np.ahp_enabled = false;
    const double tau = membrane_tau(np, base.leak, base.constants);
    const double t_ref = refractory_period(np);
    EngineConfig ec;
    ec.duration = 1.0;
    ec.record_traces = false;
    const double period_tail = ec.receiver.ack_delay + t_ref;

    bool counts_ok = true;
    std::string mismatch_note;
    const auto run_case = [&](const StimulusProgram& stim,
                              std::size_t expected, const char* label) {
        Network net;
        net.constants = base.constants;
        net.leak = base.leak;
        net.neurons.push_back({"n0", np});
        const RunResult rr = run(net, stim, ec);
        if (rr.spikes.size() != expected || rr.aer_events.size() != expected) {
            counts_ok = false;
            if (mismatch_note.empty())
                mismatch_note = fmt(" (first mismatch: %s gave %zu spikes, "
                                    "expected %zu)",
                                    label, rr.spikes.size(), expected);
        }
    };

    // Constant steps: first passage t1 = -tau*ln(1 - I_thr/I_inf), then a
    // fixed period of ack + refractory + t1.
    for (const double amp : {1.2e-9, 1.5e-9, 2e-9, 3e-9}) {
        const double i_inf = np.gain_ratio_leak * amp;
        const double t1 = -tau * std::log1p(-np.I_thr / i_inf);
        const double period = period_tail + t1;
        const std::size_t expected =
            (t1 > ec.duration)
                ? 0
                : 1 + static_cast<std::size_t>(
                          std::floor((ec.duration - t1) / period));
        StimulusProgram stim;
        stim.steps.push_back({0, amp, 0.0, ec.duration});
        run_case(stim, expected, fmt("step %.1f nA", amp * 1e9).c_str());
    }

    // Subthreshold step: no crossings at all.
    {
        StimulusProgram stim;
        stim.steps.push_back({0, 0.8e-9, 0.0, ec.duration});
        run_case(stim, 0, "subthreshold step");
    }

    // Staircase ramp: a subthreshold shelf then a suprathreshold segment.
    // The first crossing of the second segment starts from the settled shelf
    // current: t1 = tau * ln((I_inf - I_0)/(I_inf - I_thr)).
    {
        const double shelf = 0.8e-9, top = 1.6e-9, t_switch = 0.5;
        StimulusProgram stim;
        stim.steps.push_back({0, shelf, 0.0, t_switch});
        stim.steps.push_back({0, top, t_switch, ec.duration});
        const double i0 = np.gain_ratio_leak * shelf;  // settled over 36 tau
        const double i_inf = np.gain_ratio_leak * top;
        const double t1 = tau * std::log((i_inf - i0) / (i_inf - np.I_thr));
        const double t1_zero = -tau * std::log1p(-np.I_thr / i_inf);
        const double period = period_tail + t1_zero;
        const double window = ec.duration - t_switch;
        const std::size_t expected =
            (t1 > window)
                ? 0
                : 1 + static_cast<std::size_t>(
                          std::floor((window - t1) / period));
        run_case(stim, expected, "staircase ramp");
    }

    report(10, fsm_ok && counts_ok,
           fmt("randomized schedule (100000 signals): %llu accepted, %llu "
               "rejected, 0 out-of-order acceptances: %s; spike count equals "
               "closed-form crossing count on 6 step/ramp drives: %s%s",
               static_cast<unsigned long long>(accepted),
               static_cast<unsigned long long>(rejected), fsm_ok ? "yes" : "no",
               counts_ok ? "yes" : "no", mismatch_note.c_str()));
}

// ---------------------------------------------------------------------------
// Criterion 11: byte-level determinism through the CLI
// ---------------------------------------------------------------------------

int run_cli(const std::string& cli, const std::string& args, int threads) {
    std::string cmd = "NEUROSIM_THREADS=" + std::to_string(threads) + " \"" +
                      cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

bool same_outputs(const fs::path& a, const fs::path& b, std::string& note) {
    // manifest.json carries wall-clock timing and is exempt from the
    // byte-identity requirement; everything else must match exactly.
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(a))
        names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        if (name == "manifest.json") continue;
        if (!fs::exists(b / name)) {
            note = name + " missing from rerun";
            return false;
        }
        if (read_file(a / name) != read_file(b / name)) {
            note = name + " differs between reruns";
            return false;
        }
    }
    return !names.empty();
}

void criterion_11_determinism(const std::string& cli) {
    if (cli.empty()) {
        report(11, false, "no --cli path given; cannot drive the binary");
        return;
    }
    const fs::path root =
        fs::temp_directory_path() / "neurosim_acceptance_determinism";
    std::error_code ec;
    fs::remove_all(root, ec);
    fs::create_directories(root);
    const fs::path cfg_path = root / "mc.ini";
    {
        std::ofstream out(cfg_path);
        out << "[neuron]\nahp_enabled = false\n[engine]\nduration = 2s\n"
               "[network]\nneuron n0\n[stimulus]\n"
               "dc n0 amp=1.54nA start=0s stop=2s\n";
    }

    bool ok = true;
    std::string note = "simulate, fit-tau, and mc outputs byte-identical "
                       "across reruns and thread counts (manifest exempt)";
    std::string why;

    const auto check_pair = [&](const std::string& args_a, const fs::path& dir_a,
                                int threads_a, const std::string& args_b,
                                const fs::path& dir_b, int threads_b,
                                const char* label) {
        if (!ok) return;
        if (run_cli(cli, args_a + " --out \"" + dir_a.string() + "\"",
                    threads_a) != 0 ||
            run_cli(cli, args_b + " --out \"" + dir_b.string() + "\"",
                    threads_b) != 0) {
            ok = false;
            note = fmt("%s: CLI run failed", label);
            return;
        }
        if (!same_outputs(dir_a, dir_b, why)) {
            ok = false;
            note = fmt("%s: %s", label, why.c_str());
        }
    };

    check_pair("simulate --seed 5", root / "sim_a", 1, "simulate --seed 5",
               root / "sim_b", 1, "simulate rerun");
    check_pair("fit-tau --sweep I_tau=100fA,300fA", root / "tau_a", 1,
               "fit-tau --sweep I_tau=100fA,300fA", root / "tau_b", 1,
               "fit-tau rerun");
    const std::string mc_args =
        "mc --runs 48 --config \"" + cfg_path.string() + "\"";
    check_pair(mc_args, root / "mc_a", 1, mc_args, root / "mc_b", 3,
               "mc across NEUROSIM_THREADS 1 vs 3");

    report(11, ok, note);
    fs::remove_all(root, ec);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    const Config base = default_config();

    const auto t0 = std::chrono::steady_clock::now();
    const auto table_rows = compute_tau_sweep(base, reference_i_tau_sweep());
    const double table_runtime = seconds_since(t0);

    criterion_1_tau_table(table_rows, table_runtime);
    criterion_2_leak_off_theory(base);
    criterion_3_saturation(base);
    criterion_4_integrator(base);
    criterion_5_fi(base);
    criterion_6_gain_ratio(base);
    criterion_7_adaptation(base);
    criterion_8_energy();
    criterion_9_monte_carlo();
    criterion_10_aer(base);
    criterion_11_determinism(cli);

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: 11/11 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d/11 criteria passed (%d failed)\n",
                11 - g_failures, g_failures);
    return 1;
}
