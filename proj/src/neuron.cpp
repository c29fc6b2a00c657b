// neuron.cpp - voltage-domain reference integration.
#include "neurosim/neuron.hpp"

#include "neurosim/numerics.hpp"

namespace neurosim {

std::vector<double> run_voltage_reference(const AdexVoltageParams& p, double i_step,
                                          double duration, double dt) {
    if (!(dt > 0.0) || !(duration > 0.0))
        throw ConfigError("run_voltage_reference: duration and dt must be > 0");
    std::vector<double> spikes;
    std::array<double, 2> y{p.E_L, 0.0};  // start at rest, no adaptation
    const auto rhs = [&](double, const std::array<double, 2>& s) {
        return adexp_voltage_rhs(p, s[0], s[1], i_step);
    };
    const auto steps = static_cast<long>(duration / dt);
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        y = rk4_step<2>(rhs, t, y, dt);
        if (y[0] >= p.V_peak) {
            spikes.push_back(t + dt);
            y[0] = p.V_reset;
            y[1] += p.b_increment;
        }
    }
    return spikes;
}

}  // namespace neurosim
