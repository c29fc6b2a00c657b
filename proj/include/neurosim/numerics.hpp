// numerics.hpp - small numeric building blocks shared across the simulator:
// classical RK4 stepping, ordinary least squares, bisection root localization,
// and a counter-based uniform/normal generator for reproducible sampling.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace neurosim {

// ---------------------------------------------------------------------------
// RK4
// ---------------------------------------------------------------------------

/// One classical Runge-Kutta step for a fixed-size state vector.
/// `rhs(t, y)` returns dy/dt; the step is from t to t + h.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(const Rhs& rhs, double t,
                               const std::array<double, N>& y, double h) {
    const auto k1 = rhs(t, y);
    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const auto k4 = rhs(t + h, tmp);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares of y against x. Requires >= 2 points and
/// non-degenerate x. Moments are computed about the means for stability.
inline OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols_fit: need >= 2 paired samples");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("ols_fit: degenerate abscissa");
    OlsFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    // All-equal ordinates fit exactly; define r2 = 1 in that corner.
    f.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

// ---------------------------------------------------------------------------
// Bisection
// ---------------------------------------------------------------------------

/// Locate the earliest time in (t_lo, t_hi] at which `value(t)` reaches
/// `threshold`, given value(t_lo) < threshold <= value(t_hi) and a trace that
/// crosses once in the bracket. Bisects until the bracket is narrower than
/// `tol` and returns the upper end (first time at/above threshold). With
/// tol >= t_hi - t_lo the call degenerates to returning t_hi.
inline double bisect_first_above(const std::function<double(double)>& value,
                                 double t_lo, double t_hi, double threshold,
                                 double tol) {
    if (!(t_hi > t_lo)) throw std::invalid_argument("bisect_first_above: empty bracket");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_first_above: tol must be > 0");
    double lo = t_lo, hi = t_hi;
    // Cap iterations defensively; 200 halvings exhaust double precision.
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        if (value(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Counter-based random sampling
// ---------------------------------------------------------------------------
// Mismatch draws must be a pure function of (seed, run index, parameter
// ordinal) so that runs can execute in any order, on any number of threads,
// and still reproduce bit-identical results. A keyed SplitMix64 chain gives
// a well-mixed 64-bit word per counter tuple without any shared state.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_counters(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b) {
    std::uint64_t h = splitmix64(seed ^ 0x243F6A8885A308D3ull);
    h = splitmix64(h ^ (a + 0x13198A2E03707344ull));
    h = splitmix64(h ^ (b + 0xA4093822299F31D0ull));
    return h;
}

/// Uniform double in the open interval (0, 1) from a 64-bit word.
inline double u01_from_bits(std::uint64_t bits) {
    // 53 mantissa bits, offset by half an ulp so 0 and 1 are excluded.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// absolute error < 1.2e-9 over (0,1)). Deterministic and branch-stable,
/// which keeps counter-based draws reproducible.
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    constexpr double phigh = 1.0 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

/// Standard normal deviate for a counter tuple.
inline double normal_from_counters(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b) {
    return inverse_normal_cdf(u01_from_bits(hash_counters(seed, a, b)));
}

}  // namespace neurosim
