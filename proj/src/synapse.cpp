// synapse.cpp - steady-state envelope of the pulse integrator.
#include "neurosim/synapse.hpp"

namespace neurosim {

SteadyStateEnvelope steady_state_envelope(const DpiSynapseParams& p, double rate_hz,
                                          const LeakModel& leak,
                                          const PhysicalConstants& consts) {
    validate(p);
    if (!(rate_hz > 0.0)) throw ConfigError("steady_state_envelope: rate must be > 0");
    const double period = 1.0 / rate_hz;
    if (!(p.pulse_width < period))
        throw ConfigError("steady_state_envelope: pulse_width must be shorter than the period");
    const double tau = synapse_tau(p, leak, consts);
    SynapseState on;
    on.pulse_active = true;
    const double target = synapse_target(p, on, leak);
    const double a = std::exp(-p.pulse_width / tau);          // decay across a pulse
    const double b = std::exp(-(period - p.pulse_width) / tau);  // decay between pulses
    // Fixed point of peak -> trough -> peak.
    SteadyStateEnvelope env;
    env.peak = target * (1.0 - a) / (1.0 - a * b);
    env.trough = env.peak * b;
    return env;
}

}  // namespace neurosim
