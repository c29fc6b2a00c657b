// analysis.hpp - post-processing: exponential-decay time-constant fits,
// firing-rate extraction, the static+switching energy-per-spike model, and
// summary statistics for mismatch batches.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace neurosim {

/// Raised when a recorded trace violates the assumptions of a fit
/// (too few usable samples, non-positive or non-monotone decay, ...).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TauFitResult {
    double tau_s = 0.0;
    double r2 = 0.0;
    std::size_t n_samples = 0;
};

/// Fit a single exponential-decay time constant to a sampled trace.
/// The fit window starts at the trace maximum and keeps samples down to
/// `floor_frac` of that peak; within the window the trace must be strictly
/// positive and non-increasing, and at least `min_samples` samples must
/// survive. The fit is ordinary least squares of ln(I / I_peak) against
/// time; tau is -1/slope.
TauFitResult fit_tau(const std::vector<double>& times,
                     const std::vector<double>& values, double floor_frac = 0.01,
                     std::size_t min_samples = 10);

/// Mean firing rate over (warmup, duration]: spikes at t >= warmup divided
/// by the remaining observation window.
double rate_from_spikes(const std::vector<double>& spike_times, double warmup,
                        double duration);

struct FiPoint {
    double i_in = 0.0;    // injected current, A
    double rate_hz = 0.0; // steady firing rate, Hz
};

struct FiCurve {
    std::vector<FiPoint> points;
};

/// Energy-per-spike model E(f) = P_static / f + E_switch: a rate-independent
/// switching charge per event plus the static bias power amortized over the
/// inter-spike interval.
struct PowerModel {
    double p_static_w = 0.0;  // W
    double e_switch_j = 0.0;  // J
};

double energy_per_spike(const PowerModel& m, double rate_hz);

/// Calibrate the power model from (rate, energy-per-spike) observations.
/// Two points solve the 2x2 system exactly; three or more are fit by least
/// squares on the basis (1/f, 1). Requires >= 2 points with distinct rates
/// and a positive resulting static power.
PowerModel calibrate_power(const std::vector<std::pair<double, double>>& points);

struct McStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1)
    double cv = 0.0;      // stddev / mean
    std::size_t n = 0;
    std::size_t zero_count = 0;  // observations that are exactly zero
};

/// Two-pass mean / sample standard deviation / coefficient of variation.
McStats summarize(const std::vector<double>& values);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

/// Equal-width histogram over [min, max]. All-equal inputs produce a single
/// degenerate bin holding every observation.
std::vector<HistogramBin> make_histogram(const std::vector<double>& values,
                                         std::size_t bins = 20);

}  // namespace neurosim
