// devices.cpp - mismatch sampling implementation.
#include "neurosim/devices.hpp"

#include <cmath>

#include "neurosim/numerics.hpp"

namespace neurosim {

double mismatch_factor(const MismatchSpec& spec, std::uint64_t run_index,
                       std::uint64_t param_ordinal, double sigma) {
    if (sigma == 0.0) return 1.0;
    const double z = normal_from_counters(spec.seed, run_index, param_ordinal);
    return std::exp(sigma * z);
}

std::map<std::string, double> sample_mismatch(const std::map<std::string, double>& params,
                                              const MismatchSpec& spec,
                                              std::uint64_t run_index) {
    validate(spec);
    auto out = params;
    // std::map iterates in key order, which fixes each parameter's ordinal.
    std::uint64_t ordinal = 0;
    for (const auto& [name, sigma] : spec.sigma) {
        auto it = out.find(name);
        if (it == out.end())
            throw ConfigError("mismatch sigma names unknown parameter '" + name + "'");
        it->second *= mismatch_factor(spec, run_index, ordinal, sigma);
        ++ordinal;
    }
    return out;
}

}  // namespace neurosim
