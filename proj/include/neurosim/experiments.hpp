// experiments.hpp - experiment drivers behind the CLI subcommands. The
// compute_* functions are pure (no file IO) so tests can call them directly;
// the run_* wrappers execute a compute, write CSV/JSON (and optional SVG)
// outputs into a directory, and finish with a manifest listing every file.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "neurosim/analysis.hpp"
#include "neurosim/config.hpp"
#include "neurosim/engine.hpp"

namespace neurosim {

// ---------------------------------------------------------------------------
// Synapse time-constant sweep
// ---------------------------------------------------------------------------

struct TauSweepRow {
    double i_tau_a = 0.0;        // programmed decay bias
    double tau_theory_s = 0.0;   // C*U_T/(kappa*I_tau), leak-free theory
    double tau_fit_s = 0.0;      // fitted from the simulated decay
    double r2 = 0.0;
    double peak_a = 0.0;         // EPSC peak after I_w tuning
    double i_w_a = 0.0;          // tuned weight bias
};

/// The ten reference decay-bias values characterized in the sweep.
const std::vector<double>& reference_i_tau_sweep();

/// Reference fitted time constants measured on silicon for the ten sweep
/// rows (seconds); used by tests comparing simulation against measurement.
const std::vector<double>& reference_tau_fits();

/// For each I_tau: stimulate one synapse with the config's pulse train,
/// tune I_w so the EPSC peaks at 1 nA, then fit the post-stimulus decay.
std::vector<TauSweepRow> compute_tau_sweep(const Config& cfg,
                                           const std::vector<double>& i_taus);

// ---------------------------------------------------------------------------
// F-I characterization
// ---------------------------------------------------------------------------

struct FiSweepResult {
    std::string bias_name;  // empty when no bias sweep was requested
    double bias_value = 0.0;
    FiCurve curve;
};

/// F-I curves: one neuron driven by DC steps over `iin_grid`, repeated for
/// each value of the swept bias ("I_ref", "gain_ratio", or "I_thr"). Firing
/// rates exclude a 10% warm-up window.
std::vector<FiSweepResult> compute_fi(const Config& cfg,
                                      const std::vector<double>& iin_grid,
                                      const std::string& bias_name,
                                      const std::vector<double>& bias_values);

// ---------------------------------------------------------------------------
// Adaptation
// ---------------------------------------------------------------------------

struct AdaptResult {
    double first_isi_s = 0.0;   // between the first two spikes
    double steady_isi_s = 0.0;  // between the last two spikes
    double rate_on_hz = 0.0;    // adaptation enabled
    double rate_off_hz = 0.0;   // same drive, adaptation disabled
    double max_i_ahp_a = 0.0;   // largest sampled adaptation current
    std::size_t n_spikes = 0;   // spikes with adaptation enabled
    RunResult run_on;           // traces with adaptation enabled
};

/// Constant-current adaptation experiment: I_mem / I_ahp traces and ISI
/// trend with the AHP block enabled, plus the rate with it disabled.
AdaptResult compute_adapt(const Config& cfg, double i_in);

// ---------------------------------------------------------------------------
// Energy model
// ---------------------------------------------------------------------------

/// Energy-per-spike over a geometric frequency grid.
std::vector<std::pair<double, double>> compute_energy_curve(const PowerModel& model,
                                                            double f_lo, double f_hi,
                                                            std::size_t steps);

// ---------------------------------------------------------------------------
// Monte Carlo mismatch
// ---------------------------------------------------------------------------

struct McOutcome {
    std::vector<double> rates_hz;  // per-run firing rate, by run index
    McStats stats;
    std::vector<HistogramBin> hist;
    double nominal_hz = 0.0;  // rate with unperturbed parameters
};

/// n independent runs of the config's network/stimulus with per-run mismatch
/// applied to every neuron's parameters. Runs execute on a small thread pool
/// (capped by the NEUROSIM_THREADS environment variable; 0 or unset = auto)
/// and results are keyed by run index, so the outcome is identical for any
/// thread count. Zero-spike runs are kept as rate 0.
McOutcome compute_mc(const Config& cfg, std::size_t n_runs);

// ---------------------------------------------------------------------------
// IO wrappers (CLI back ends). Each returns the file names it wrote into
// out_dir, manifest included.
// ---------------------------------------------------------------------------

std::vector<std::string> run_simulate(const Config& cfg, const std::string& out_dir,
                                      bool plot);
std::vector<std::string> run_fit_tau(const Config& cfg,
                                     const std::vector<double>& i_taus,
                                     const std::string& out_dir, bool plot);
std::vector<std::string> run_fi(const Config& cfg, const std::vector<double>& grid,
                                const std::string& bias_name,
                                const std::vector<double>& bias_values,
                                const std::string& out_dir, bool plot);
std::vector<std::string> run_adapt(const Config& cfg, double i_in,
                                   const std::string& out_dir, bool plot);
std::vector<std::string> run_energy(const Config& cfg, double f_lo, double f_hi,
                                    std::size_t steps, const std::string& out_dir,
                                    bool plot);
std::vector<std::string> run_mc(const Config& cfg, std::size_t n_runs,
                                const std::string& out_dir, bool plot);

}  // namespace neurosim
