// analysis.cpp - fits, rates, energy model, batch statistics.
#include "neurosim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neurosim/numerics.hpp"

namespace neurosim {

TauFitResult fit_tau(const std::vector<double>& times,
                     const std::vector<double>& values, double floor_frac,
                     std::size_t min_samples) {
    if (times.size() != values.size())
        throw FitError("fit_tau: times/values size mismatch");
    if (times.empty()) throw FitError("fit_tau: empty trace");
    if (!(floor_frac > 0.0 && floor_frac < 1.0))
        throw FitError("fit_tau: floor fraction must lie in (0,1)");
    if (min_samples < 2) throw FitError("fit_tau: need at least 2 samples");

    const std::size_t peak_idx = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    const double peak = values[peak_idx];
    if (!(peak > 0.0)) throw FitError("fit_tau: trace peak is not positive");

    const double floor = floor_frac * peak;
    std::vector<double> t, lny;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = peak_idx; i < values.size(); ++i) {
        const double v = values[i];
        if (v < floor) break;
        if (!(v > 0.0)) throw FitError("fit_tau: non-positive sample in decay window");
        // Allow half-ulp-scale wiggle; a real reversal means the trace is
        // not a plain decay and the single-exponential model does not apply.
        if (v > prev * (1.0 + 1e-9))
            throw FitError("fit_tau: decay window is not monotone");
        prev = v;
        t.push_back(times[i]);
        lny.push_back(std::log(v / peak));
    }
    if (t.size() < min_samples)
        throw FitError("fit_tau: only " + std::to_string(t.size()) +
                       " usable samples in decay window, need " +
                       std::to_string(min_samples));

    const OlsFit fit = ols_fit(t, lny);
    if (!(fit.slope < 0.0)) throw FitError("fit_tau: decay slope is not negative");
    TauFitResult r;
    r.tau_s = -1.0 / fit.slope;
    r.r2 = fit.r2;
    r.n_samples = t.size();
    return r;
}

double rate_from_spikes(const std::vector<double>& spike_times, double warmup,
                        double duration) {
    if (!(duration > warmup))
        throw FitError("rate_from_spikes: duration must exceed warmup");
    std::size_t n = 0;
    for (double t : spike_times)
        if (t >= warmup) ++n;
    return static_cast<double>(n) / (duration - warmup);
}

double energy_per_spike(const PowerModel& m, double rate_hz) {
    if (!(rate_hz > 0.0))
        throw FitError("energy_per_spike: rate must be > 0");
    return m.p_static_w / rate_hz + m.e_switch_j;
}

PowerModel calibrate_power(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw FitError("calibrate_power: need >= 2 (rate, energy) points");
    std::vector<double> x, e;
    for (const auto& [f, energy] : points) {
        if (!(f > 0.0)) throw FitError("calibrate_power: rates must be > 0");
        x.push_back(1.0 / f);
        e.push_back(energy);
    }
    PowerModel m;
    if (points.size() == 2) {
        const double dx = x[0] - x[1];
        if (dx == 0.0) throw FitError("calibrate_power: rates must be distinct");
        m.p_static_w = (e[0] - e[1]) / dx;
        m.e_switch_j = e[0] - m.p_static_w * x[0];
    } else {
        OlsFit fit;
        try {
            fit = ols_fit(x, e);
        } catch (const std::invalid_argument&) {
            throw FitError("calibrate_power: rates must be distinct");
        }
        m.p_static_w = fit.slope;
        m.e_switch_j = fit.intercept;
    }
    if (!(m.p_static_w > 0.0))
        throw FitError("calibrate_power: inferred static power is not positive");
    return m;
}

McStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw FitError("summarize: no observations");
    McStats s;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        if (v == 0.0) ++s.zero_count;
    }
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - s.mean;
            ss += d * d;
        }
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    s.cv = (s.mean != 0.0) ? s.stddev / s.mean : 0.0;
    return s;
}

std::vector<HistogramBin> make_histogram(const std::vector<double>& values,
                                         std::size_t bins) {
    if (values.empty()) throw FitError("make_histogram: no observations");
    if (bins == 0) throw FitError("make_histogram: need >= 1 bin");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        HistogramBin b{lo, hi, values.size()};
        return {b};
    }
    std::vector<HistogramBin> out(bins);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        out[i].lo = lo + w * static_cast<double>(i);
        out[i].hi = (i + 1 == bins) ? hi : lo + w * static_cast<double>(i + 1);
    }
    for (double v : values) {
        auto k = static_cast<std::size_t>((v - lo) / w);
        if (k >= bins) k = bins - 1;  // v == hi lands in the last bin
        out[k].count += 1;
    }
    return out;
}

}  // namespace neurosim
