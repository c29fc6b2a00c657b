// devices.hpp - device-level building blocks shared by the synapse and neuron
// models: subthreshold physical constants, the capacitor leak model that
// limits attainable time constants, the translinear time-constant relation,
// and deterministic lognormal mismatch sampling for Monte Carlo analysis.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace neurosim {

/// Raised for invalid parameter values and malformed configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Subthreshold operating constants.
struct PhysicalConstants {
    double U_T = 0.025;    // thermal voltage, V
    double kappa = 0.75;   // subthreshold slope factor
    double V_dd = 0.8;     // supply rail, V
};

/// Parasitic leakage acting on a capacitor node. The dominant term is the
/// baseline leak of the MOM/MIM capacitor itself; a small floor accounts for
/// the off-state leakage of the transistors attached to the node. Both leaks
/// act like an extra bias current on the node, so they add to the programmed
/// current that sets a time constant.
struct LeakModel {
    bool enabled = true;
    double cap_leak_baseline = 3.5e-15;    // A
    double transistor_leak_floor = 1e-16;  // A

    double total() const { return enabled ? cap_leak_baseline + transistor_leak_floor : 0.0; }
};

inline void validate(const PhysicalConstants& c) {
    if (!(c.U_T > 0.0)) throw ConfigError("U_T must be > 0");
    if (!(c.kappa > 0.0 && c.kappa <= 1.0)) throw ConfigError("kappa must lie in (0, 1]");
    if (!(c.V_dd > 0.0)) throw ConfigError("V_dd must be > 0");
}

inline void validate(const LeakModel& l) {
    if (l.cap_leak_baseline < 0.0 || l.transistor_leak_floor < 0.0)
        throw ConfigError("leak currents must be >= 0");
}

/// Current that effectively discharges/charges the node once leakage is
/// folded in. This is the denominator current of every time constant.
inline double effective_bias(double i_programmed, const LeakModel& leak) {
    if (i_programmed < 0.0) throw ConfigError("bias current must be >= 0");
    return i_programmed + leak.total();
}

/// Time constant of a capacitor node driven through a subthreshold
/// translinear loop: tau = C * U_T / (kappa * I_eff). With the leak enabled
/// the effective bias saturates the attainable tau at
/// C * U_T / (kappa * I_leak_total) as the programmed current approaches 0.
inline double effective_tau(double capacitance, double i_programmed,
                            const LeakModel& leak, const PhysicalConstants& consts) {
    if (!(capacitance > 0.0)) throw ConfigError("capacitance must be > 0");
    const double i_eff = effective_bias(i_programmed, leak);
    if (!(i_eff > 0.0))
        throw ConfigError("effective bias current is zero: tau undefined (enable leak or set a bias)");
    return capacitance * consts.U_T / (consts.kappa * i_eff);
}

// ---------------------------------------------------------------------------
// Mismatch
// ---------------------------------------------------------------------------

/// Device mismatch description for Monte Carlo runs: per-parameter relative
/// sigma of a multiplicative lognormal factor (median 1). A draw is a pure
/// function of (seed, run_index, parameter ordinal); the ordinal is the
/// parameter's position in the name-sorted sigma map, so a given spec and
/// seed always reproduce the same perturbed parameter sets on any thread
/// count or run order.
struct MismatchSpec {
    std::map<std::string, double> sigma;  // parameter name -> relative sigma
    std::uint64_t seed = 1;

    bool empty() const { return sigma.empty(); }
};

inline void validate(const MismatchSpec& spec) {
    for (const auto& [name, s] : spec.sigma) {
        if (s < 0.0) throw ConfigError("mismatch sigma for '" + name + "' must be >= 0");
        if (name.empty()) throw ConfigError("mismatch sigma with empty parameter name");
    }
}

/// Multiplicative mismatch factor for one parameter of one run.
double mismatch_factor(const MismatchSpec& spec, std::uint64_t run_index,
                       std::uint64_t param_ordinal, double sigma);

/// Apply the spec to a named parameter set. Every name in the sigma map must
/// exist in `params` (unknown names are configuration errors, not typos to
/// ignore). Returns the perturbed copy; sigma = 0 entries return the nominal
/// value bit-for-bit since exp(0) == 1 exactly.
std::map<std::string, double> sample_mismatch(const std::map<std::string, double>& params,
                                              const MismatchSpec& spec,
                                              std::uint64_t run_index);

}  // namespace neurosim
