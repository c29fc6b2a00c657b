// neuron.hpp - current-mode adaptive exponential integrate-and-fire neuron.
// The membrane state is carried as a current I_mem with first-order leak
// dynamics, an exponential positive-feedback term that sharpens the spike
// upswing, and a spike-frequency-adaptation current I_ahp fed by a
// retriggerable pulse extender. A classic voltage-domain adaptive exponential
// model is included as an independent reference for qualitative cross-checks.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "neurosim/devices.hpp"

namespace neurosim {

struct AdexNeuronParams {
    // Block capacitances, F.
    double C_mem = 821e-15;  // membrane integrator
    double C_ahp = 1e-12;    // adaptation integrator
    double C_ref = 102e-15;  // refractory timing cap
    double C_pex = 136e-15;  // pulse-extender timing cap
    double C_cc = 116e-15;   // threshold comparator coupling cap

    // Leak / input block.
    double I_leak = 2e-12;         // membrane leak bias, A (sets tau_mem)
    double gain_ratio_leak = 1.0;  // input coupling ratio I_gain / I_leak

    // Positive feedback block.
    double I_fb0 = 50e-15;       // feedback current at I_mem = 0, A
    double I_norm = -1.0;        // feedback e-fold scale, A; < 0 means I_thr / 5
    double fb_clamp_ratio = 100; // feedback ceiling as a multiple of I_thr

    // Spike generation.
    double I_thr = 1e-9;    // comparator threshold on I_mem, A
    double I_reset = 0.0;   // membrane current after reset, A
    double Q_ref = 200e-15; // charge metered out during refractory, C
    double I_ref = 1e-6;    // refractory discharge bias, A (t_ref = Q_ref / I_ref)

    // Adaptation (slow potassium-like) block.
    bool ahp_enabled = true;
    double I_a = 6e-9;            // adaptation weight bias, A
    double I_tau_ahp = 3e-12;     // adaptation decay bias, A (sets tau_ahp)
    double gain_ratio_ahp = 1.0;  // adaptation coupling ratio
    double t_pex = 1e-6;          // pulse-extender window, s

    double resolved_i_norm() const { return I_norm < 0.0 ? I_thr / 5.0 : I_norm; }
};

inline void validate(const AdexNeuronParams& p) {
    if (!(p.C_mem > 0.0) || !(p.C_ahp > 0.0)) throw ConfigError("capacitances must be > 0");
    if (p.I_leak < 0.0) throw ConfigError("I_leak must be >= 0");
    if (!(p.gain_ratio_leak > 0.0)) throw ConfigError("gain_ratio_leak must be > 0");
    if (!(p.I_thr > 0.0)) throw ConfigError("I_thr must be > 0");
    if (p.I_fb0 < 0.0) throw ConfigError("I_fb0 must be >= 0");
    if (!(p.fb_clamp_ratio > 0.0)) throw ConfigError("fb_clamp_ratio must be > 0");
    if (p.I_reset < 0.0) throw ConfigError("I_reset must be >= 0");
    if (!(p.Q_ref > 0.0)) throw ConfigError("Q_ref must be > 0");
    if (!(p.I_ref > 0.0)) throw ConfigError("I_ref must be > 0 (refractory period undefined)");
    if (p.ahp_enabled) {
        if (p.I_a < 0.0) throw ConfigError("I_a must be >= 0");
        if (p.I_tau_ahp < 0.0) throw ConfigError("I_tau_ahp must be >= 0");
        if (!(p.gain_ratio_ahp > 0.0)) throw ConfigError("gain_ratio_ahp must be > 0");
        if (!(p.t_pex > 0.0)) throw ConfigError("t_pex must be > 0");
    }
}

struct NeuronState {
    double I_mem = 0.0;  // membrane current, A
    double I_ahp = 0.0;  // adaptation current, A
    double refractory_until = -1.0;  // s; membrane clamped at I_reset before this
    double pex_until = -1.0;         // s; adaptation drive active before this
};

inline double membrane_tau(const AdexNeuronParams& p, const LeakModel& leak,
                           const PhysicalConstants& consts) {
    return effective_tau(p.C_mem, p.I_leak, leak, consts);
}

inline double ahp_tau(const AdexNeuronParams& p, const LeakModel& leak,
                      const PhysicalConstants& consts) {
    return effective_tau(p.C_ahp, p.I_tau_ahp, leak, consts);
}

/// Refractory period metered by discharging Q_ref at I_ref.
inline double refractory_period(const AdexNeuronParams& p) {
    if (!(p.I_ref > 0.0)) throw ConfigError("I_ref must be > 0 (refractory period undefined)");
    return p.Q_ref / p.I_ref;
}

/// Exponential positive feedback, clamped so the post-threshold transient
/// stays integrable: f(I) = min(I_fb0 * exp(I / I_norm), fb_clamp_ratio * I_thr).
inline double f_positive_feedback(const AdexNeuronParams& p, double i_mem) {
    if (p.I_fb0 == 0.0) return 0.0;
    const double ceiling = p.fb_clamp_ratio * p.I_thr;
    const double arg = i_mem / p.resolved_i_norm();
    if (arg > 700.0) return ceiling;  // exp would overflow; deep in the clamp
    const double f = p.I_fb0 * std::exp(arg);
    return f < ceiling ? f : ceiling;
}

/// Membrane and adaptation derivatives:
///   tau_mem * dI_mem/dt = -I_mem + gain_ratio_leak * (f(I_mem) - I_ahp + I_in)
///   tau_ahp * dI_ahp/dt = I_ahp_target - I_ahp
/// with I_ahp_target = gain_ratio_ahp * I_a while the pulse extender is
/// active and 0 otherwise. During refractory the membrane is held at I_reset
/// (dI_mem = 0), and the membrane current never integrates below zero.
inline std::array<double, 2> neuron_rhs(const AdexNeuronParams& p, double i_mem,
                                        double i_ahp, double i_in, bool refractory,
                                        bool pex_active, const LeakModel& leak,
                                        const PhysicalConstants& consts) {
    std::array<double, 2> d{0.0, 0.0};
    if (!refractory) {
        const double drive =
            p.gain_ratio_leak * (f_positive_feedback(p, i_mem) - i_ahp + i_in);
        d[0] = (drive - i_mem) / membrane_tau(p, leak, consts);
        if (i_mem <= 0.0 && d[0] < 0.0) d[0] = 0.0;  // currents cannot go negative
    }
    if (p.ahp_enabled) {
        const double target = pex_active ? p.gain_ratio_ahp * p.I_a : 0.0;
        d[1] = (target - i_ahp) / ahp_tau(p, leak, consts);
        if (i_ahp <= 0.0 && d[1] < 0.0) d[1] = 0.0;
    }
    return d;
}

/// Threshold comparator: a spike request fires when I_mem reaches I_thr
/// (inclusive). Callers gate this on the handshake being idle and the
/// refractory window having elapsed.
inline bool check_threshold(const AdexNeuronParams& p, double i_mem) {
    return i_mem >= p.I_thr;
}

/// Reset applied when the acknowledged spike at t_spike retires: membrane
/// back to I_reset, refractory window metered from the reset time.
inline void apply_reset(const AdexNeuronParams& p, NeuronState& s, double t_reset) {
    s.I_mem = p.I_reset;
    s.refractory_until = t_reset + refractory_period(p);
}

/// Retriggerable pulse-extender window opened by a spike request at t_req:
/// a new request while the window is open restarts it.
inline void trigger_pulse_extender(const AdexNeuronParams& p, NeuronState& s,
                                   double t_req) {
    const double until = t_req + p.t_pex;
    if (until > s.pex_until) s.pex_until = until;
}

// ---------------------------------------------------------------------------
// Voltage-domain reference model
// ---------------------------------------------------------------------------

/// Classic adaptive exponential integrate-and-fire neuron in the voltage
/// domain:
///   C dV/dt    = -g_L (V - E_L) + g_L Delta_T exp((V - V_T)/Delta_T) - w + I
///   tau_w dw/dt = a (V - E_L) - w
/// with a reset V -> V_reset, w -> w + b_increment when V reaches V_peak.
/// Used as an independent sanity reference for adaptation behavior; it shares
/// no code with the current-mode model.
struct AdexVoltageParams {
    double C = 281e-12;        // F
    double g_L = 30e-9;        // S
    double E_L = -70.6e-3;     // V
    double Delta_T = 2e-3;     // V
    double V_T = -50.4e-3;     // V
    double a = 4e-9;           // S
    double tau_w = 0.144;      // s
    double b_increment = 80.5e-12;  // A
    double V_reset = -70.6e-3; // V
    double V_peak = -30e-3;    // V; numerical spike-detection ceiling
};

inline std::array<double, 2> adexp_voltage_rhs(const AdexVoltageParams& p, double v,
                                               double w, double i_in) {
    double arg = (v - p.V_T) / p.Delta_T;
    if (arg > 30.0) arg = 30.0;  // keep the upswing finite for the integrator
    const double dv =
        (-p.g_L * (v - p.E_L) + p.g_L * p.Delta_T * std::exp(arg) - w + i_in) / p.C;
    const double dw = (p.a * (v - p.E_L) - w) / p.tau_w;
    return {dv, dw};
}

/// Fixed-step reference integration under a constant current step.
/// Returns spike times; spike timing is only dt-accurate, which is enough
/// for qualitative rate-trend comparisons.
std::vector<double> run_voltage_reference(const AdexVoltageParams& p, double i_step,
                                          double duration, double dt);

}  // namespace neurosim
