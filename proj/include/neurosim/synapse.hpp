// synapse.hpp - behavioral model of a log-domain pulse integrator synapse.
// The excitatory post-synaptic current obeys a first-order linear ODE: while
// a pre-synaptic pulse is active the current relaxes toward
// (I_gain / I_tau_eff) * I_w, and between pulses it decays to zero, both with
// time constant tau = C_syn * U_T / (kappa * I_tau_eff). Because the dynamics
// are piecewise linear-with-constant-drive, steps between pulse edges are
// advanced in closed form rather than by numeric integration.
#pragma once

#include <cmath>

#include "neurosim/devices.hpp"

namespace neurosim {

struct DpiSynapseParams {
    double C_syn = 821e-15;      // integration capacitor, F
    double I_tau = 100e-15;      // programmed decay bias, A
    double I_gain = -1.0;        // gain bias, A; < 0 means "auto" = 4 * I_tau
    double I_w = 100e-9;         // weight bias, A
    double pulse_width = 100e-9; // pre-synaptic pulse duration, s

    double resolved_gain() const { return I_gain < 0.0 ? 4.0 * I_tau : I_gain; }
};

inline void validate(const DpiSynapseParams& p) {
    if (!(p.C_syn > 0.0)) throw ConfigError("C_syn must be > 0");
    if (p.I_tau < 0.0) throw ConfigError("I_tau must be >= 0");
    if (p.I_w < 0.0) throw ConfigError("I_w must be >= 0");
    if (!(p.pulse_width > 0.0)) throw ConfigError("pulse_width must be > 0");
}

/// Dynamic state. `i_w_scale` carries the weight of the event that opened the
/// current pulse (1 for plain stimulus pulses); it only matters while
/// `pulse_active` is set.
struct SynapseState {
    double I_syn = 0.0;        // output current, A
    bool pulse_active = false;
    double i_w_scale = 1.0;
};

/// Decay bias with capacitor leakage folded in. The leak adds to the
/// programmed I_tau, which both shortens the attainable time constant and
/// reduces the effective gain I_gain / I_tau_eff below its nominal ratio.
inline double synapse_i_tau_eff(const DpiSynapseParams& p, const LeakModel& leak) {
    return effective_bias(p.I_tau, leak);
}

inline double synapse_tau(const DpiSynapseParams& p, const LeakModel& leak,
                          const PhysicalConstants& consts) {
    return effective_tau(p.C_syn, p.I_tau, leak, consts);
}

/// Asymptotic current the synapse relaxes toward in its present pulse state.
inline double synapse_target(const DpiSynapseParams& p, const SynapseState& s,
                             const LeakModel& leak) {
    if (!s.pulse_active) return 0.0;
    return p.resolved_gain() / synapse_i_tau_eff(p, leak) * (p.I_w * s.i_w_scale);
}

/// Right-hand side dI_syn/dt for the current pulse state.
inline double synapse_rhs(const DpiSynapseParams& p, const SynapseState& s,
                          const LeakModel& leak, const PhysicalConstants& consts) {
    return (synapse_target(p, s, leak) - s.I_syn) / synapse_tau(p, leak, consts);
}

/// Advance the state by dt in closed form. Exact for any dt because the
/// drive is constant between pulse edges; composing two steps equals one
/// combined step to floating-point rounding, so the engine may split steps
/// at arbitrary event boundaries without drift.
inline double exact_step(const DpiSynapseParams& p, const SynapseState& s, double dt,
                         const LeakModel& leak, const PhysicalConstants& consts) {
    if (dt < 0.0) throw ConfigError("exact_step: dt must be >= 0");
    if (dt == 0.0) return s.I_syn;
    const double target = synapse_target(p, s, leak);
    return target + (s.I_syn - target) * std::exp(-dt / synapse_tau(p, leak, consts));
}

/// Value the synapse would hold a fraction `dt` into a step, given the state
/// at the step start. Same closed form as exact_step; used to evaluate
/// synaptic input at integrator stage times without committing the state.
inline double interpolate(const DpiSynapseParams& p, const SynapseState& s, double dt,
                          const LeakModel& leak, const PhysicalConstants& consts) {
    return exact_step(p, s, dt, leak, consts);
}

struct SteadyStateEnvelope {
    double peak = 0.0;    // current right after a pulse, A
    double trough = 0.0;  // current right before the next pulse, A
};

/// Periodic steady state reached under a regular pulse train of the given
/// rate: the fixed point of the one-period map
///   peak   = target + (trough - target) * exp(-width / tau)
///   trough = peak * exp(-(T - width) / tau),  T = 1 / rate.
/// In the long-tau limit the peak tends to target * width * rate (the duty-
/// cycled drive), and as rate -> 0 the trough tends to 0.
SteadyStateEnvelope steady_state_envelope(const DpiSynapseParams& p, double rate_hz,
                                          const LeakModel& leak,
                                          const PhysicalConstants& consts);

}  // namespace neurosim
