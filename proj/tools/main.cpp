// main.cpp - neurosim command line interface.
//
// Exit codes: 0 on success, 1 for configuration/usage errors, 2 for
// runtime failures (fit failures, protocol violations, IO errors).
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neurosim/experiments.hpp"

namespace {

using neurosim::Config;
using neurosim::ConfigError;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = "out";
    bool plot = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "INI configuration file");
    sub->add_option("--set", o.sets,
                    "Override a config key, e.g. --set neuron.I_thr=2nA "
                    "(repeatable)");
    sub->add_option("--out", o.out_dir, "Output directory (default: out)");
    sub->add_flag("--plot", o.plot, "Also write SVG plots");
}

Config load_cfg(const CommonOpts& o) {
    Config cfg = o.config_path.empty() ? neurosim::default_config()
                                       : neurosim::load_config_file(o.config_path);
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        neurosim::apply_override(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    return cfg;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(text.substr(pos));
            return parts;
        }
        parts.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::size_t parse_steps(const std::string& text, const std::string& what) {
    std::size_t idx = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &idx);
    } catch (const std::exception&) {
        throw ConfigError(what + ": step count '" + text + "' is not an integer");
    }
    if (idx != text.size() || v == 0)
        throw ConfigError(what + ": step count '" + text + "' must be a positive integer");
    return static_cast<std::size_t>(v);
}

// "START:STOP:STEPS" with SI currents -> linear inclusive grid.
std::vector<double> parse_linear_current_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw ConfigError("--iin-grid expects START:STOP:STEPS, got '" + text + "'");
    const double lo = neurosim::parse_si_current(parts[0]);
    const double hi = neurosim::parse_si_current(parts[1]);
    const std::size_t steps = parse_steps(parts[2], "--iin-grid");
    if (steps == 1) {
        if (lo != hi)
            throw ConfigError("--iin-grid: a single step needs START == STOP");
        return {lo};
    }
    if (!(hi > lo))
        throw ConfigError("--iin-grid: STOP must be greater than START");
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(steps - 1);
        grid[i] = (i + 1 == steps) ? hi : lo + (hi - lo) * frac;
    }
    return grid;
}

// "NAME=v1,v2,..." where NAME is I_ref, gain_ratio, or I_thr.
void parse_bias_sweep(const std::string& text, std::string& name,
                      std::vector<double>& values) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size())
        throw ConfigError("--sweep-bias expects NAME=v1,v2,..., got '" + text + "'");
    name = text.substr(0, eq);
    if (name != "I_ref" && name != "gain_ratio" && name != "I_thr")
        throw ConfigError("--sweep-bias: unknown bias '" + name +
                          "' (expected I_ref, gain_ratio, or I_thr)");
    for (const auto& tok : split(text.substr(eq + 1), ',')) {
        values.push_back(name == "gain_ratio" ? neurosim::parse_si_dimensionless(tok)
                                              : neurosim::parse_si_current(tok));
    }
}

// "I_tau=v1,v2,..." with SI currents.
std::vector<double> parse_tau_sweep(const std::string& text) {
    const std::string prefix = "I_tau=";
    if (text.rfind(prefix, 0) != 0 || text.size() <= prefix.size())
        throw ConfigError("--sweep expects I_tau=v1,v2,..., got '" + text + "'");
    std::vector<double> values;
    for (const auto& tok : split(text.substr(prefix.size()), ','))
        values.push_back(neurosim::parse_si_current(tok));
    return values;
}

// "f1:e1,f2:e2,..." with SI frequencies and energies.
std::vector<std::pair<double, double>> parse_calibration(const std::string& text) {
    std::vector<std::pair<double, double>> points;
    for (const auto& tok : split(text, ',')) {
        const auto parts = split(tok, ':');
        if (parts.size() != 2)
            throw ConfigError("--calibrate expects f1:e1,f2:e2,..., got '" + tok + "'");
        points.push_back({neurosim::parse_si_frequency(parts[0]),
                          neurosim::parse_si_energy(parts[1])});
    }
    return points;
}

void report_outputs(const std::string& out_dir, const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << "wrote " << out_dir << "/" << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neurosim: behavioral simulator for subthreshold neuromorphic circuits"};
    app.require_subcommand(0, 1);

    bool print_defaults = false;
    bool print_cfg = false;
    std::string top_config;
    std::vector<std::string> top_sets;
    app.add_flag("--print-defaults", print_defaults,
                 "Print the built-in default configuration and exit");
    app.add_flag("--print-config", print_cfg,
                 "Print the effective configuration after --config/--set and exit");
    app.add_option("--config", top_config, "INI configuration file (with --print-config)");
    app.add_option("--set", top_sets, "Override a config key (with --print-config)");

    CommonOpts sim_o;
    std::string sim_duration, sim_seed;
    CLI::App* sim = app.add_subcommand("simulate", "Run the configured network");
    add_common(sim, sim_o);
    sim->add_option("--duration", sim_duration, "Simulated time, e.g. 2s");
    sim->add_option("--seed", sim_seed, "Engine RNG seed");

    CommonOpts tau_o;
    std::string tau_sweep;
    CLI::App* tau = app.add_subcommand(
        "fit-tau", "Sweep the synapse decay bias and fit the time constant");
    add_common(tau, tau_o);
    tau->add_option("--sweep", tau_sweep, "I_tau sweep, e.g. I_tau=1fA,10fA,100fA");

    CommonOpts fi_o;
    std::string fi_grid, fi_bias;
    CLI::App* fi = app.add_subcommand("fi", "Measure firing rate vs input current");
    add_common(fi, fi_o);
    fi->add_option("--iin-grid", fi_grid, "Input grid START:STOP:STEPS, e.g. 5nA:50nA:10")
        ->required();
    fi->add_option("--sweep-bias", fi_bias,
                   "Repeat the sweep per bias value, e.g. I_ref=2nA,20nA");

    CommonOpts adapt_o;
    std::string adapt_iin;
    CLI::App* adapt = app.add_subcommand(
        "adapt", "Characterize spike-frequency adaptation under constant drive");
    add_common(adapt, adapt_o);
    adapt->add_option("--iin", adapt_iin, "Constant input current, e.g. 3nA")->required();

    CommonOpts energy_o;
    std::string energy_cal, energy_grid = "10Hz:10kHz:50";
    CLI::App* energy = app.add_subcommand(
        "energy", "Evaluate the energy-per-spike model over a rate grid");
    add_common(energy, energy_o);
    energy->add_option("--calibrate", energy_cal,
                       "Fit the power model to rate:energy anchors, e.g. "
                       "30Hz:16pJ,2.1kHz:1pJ");
    energy->add_option("--grid", energy_grid,
                       "Geometric rate grid F1:F2:STEPS (default 10Hz:10kHz:50)");

    CommonOpts mc_o;
    std::string mc_seed;
    std::size_t mc_runs = 500;
    CLI::App* mc = app.add_subcommand(
        "mc", "Monte Carlo mismatch sweep of the configured network");
    add_common(mc, mc_o);
    mc->add_option("--runs", mc_runs, "Number of mismatch samples (default 500)");
    mc->add_option("--seed", mc_seed, "Seed for both the engine and the mismatch sampler");

    try {
        app.parse(argc, argv);

        if (print_defaults) {
            std::cout << neurosim::print_config(neurosim::default_config());
            return 0;
        }
        if (print_cfg) {
            CommonOpts o;
            o.config_path = top_config;
            o.sets = top_sets;
            std::cout << neurosim::print_config(load_cfg(o));
            return 0;
        }

        if (sim->parsed()) {
            Config cfg = load_cfg(sim_o);
            if (!sim_duration.empty())
                cfg.engine.duration = neurosim::parse_si_time(sim_duration);
            if (!sim_seed.empty())
                neurosim::apply_override(cfg, "engine.seed", sim_seed);
            report_outputs(sim_o.out_dir,
                           neurosim::run_simulate(cfg, sim_o.out_dir, sim_o.plot));
            return 0;
        }
        if (tau->parsed()) {
            const Config cfg = load_cfg(tau_o);
            const std::vector<double> sweep = tau_sweep.empty()
                                                  ? neurosim::reference_i_tau_sweep()
                                                  : parse_tau_sweep(tau_sweep);
            report_outputs(tau_o.out_dir,
                           neurosim::run_fit_tau(cfg, sweep, tau_o.out_dir, tau_o.plot));
            return 0;
        }
        if (fi->parsed()) {
            const Config cfg = load_cfg(fi_o);
            std::string bias_name;
            std::vector<double> bias_values;
            if (!fi_bias.empty()) parse_bias_sweep(fi_bias, bias_name, bias_values);
            report_outputs(fi_o.out_dir,
                           neurosim::run_fi(cfg, parse_linear_current_grid(fi_grid),
                                            bias_name, bias_values, fi_o.out_dir,
                                            fi_o.plot));
            return 0;
        }
        if (adapt->parsed()) {
            const Config cfg = load_cfg(adapt_o);
            report_outputs(adapt_o.out_dir,
                           neurosim::run_adapt(cfg, neurosim::parse_si_current(adapt_iin),
                                               adapt_o.out_dir, adapt_o.plot));
            return 0;
        }
        if (energy->parsed()) {
            Config cfg = load_cfg(energy_o);
            if (!energy_cal.empty())
                cfg.power = neurosim::calibrate_power(parse_calibration(energy_cal));
            const auto parts = split(energy_grid, ':');
            if (parts.size() != 3)
                throw ConfigError("--grid expects F1:F2:STEPS, got '" + energy_grid + "'");
            const double f_lo = neurosim::parse_si_frequency(parts[0]);
            const double f_hi = neurosim::parse_si_frequency(parts[1]);
            const std::size_t steps = parse_steps(parts[2], "--grid");
            report_outputs(energy_o.out_dir,
                           neurosim::run_energy(cfg, f_lo, f_hi, steps, energy_o.out_dir,
                                                energy_o.plot));
            return 0;
        }
        if (mc->parsed()) {
            Config cfg = load_cfg(mc_o);
            if (mc_runs == 0) throw ConfigError("mc: --runs must be >= 1");
            if (!mc_seed.empty()) {
                neurosim::apply_override(cfg, "engine.seed", mc_seed);
                neurosim::apply_override(cfg, "mismatch.seed", mc_seed);
            }
            report_outputs(mc_o.out_dir,
                           neurosim::run_mc(cfg, mc_runs, mc_o.out_dir, mc_o.plot));
            return 0;
        }

        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
