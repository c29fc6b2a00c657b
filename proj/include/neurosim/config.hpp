// config.hpp - configuration document: INI-style sections with SI-suffixed
// quantities, network/stimulus directives, CLI overrides, and canonical
// printing that round-trips through the parser.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neurosim/aer.hpp"
#include "neurosim/analysis.hpp"
#include "neurosim/devices.hpp"
#include "neurosim/engine.hpp"
#include "neurosim/neuron.hpp"
#include "neurosim/synapse.hpp"

namespace neurosim {

inline constexpr const char* kToolVersion = "0.1.0";

/// `synapse <id> -> <neuron>` — a synapse instance feeding one neuron.
/// The target may be empty only in neuron-free (characterization) networks.
struct SynapseDecl {
    std::string id;
    std::string target;
};

/// `<neuron> -> <synapse> : <weight>` — spike fan-out edge.
struct EdgeDecl {
    std::string src;
    std::string dst;
    double weight = 1.0;
};

/// `train <synapse> rate=50Hz start=0s stop=1s kind=regular weight=1`
struct TrainDecl {
    std::string synapse;
    double rate_hz = 50.0;
    double start = 0.0;
    double stop = 1.0;
    double weight = 1.0;
    bool poisson = false;
};

/// `dc <neuron> amp=3nA start=0s stop=1s`
struct DcDecl {
    std::string neuron;
    double amplitude = 0.0;
    double start = 0.0;
    double stop = 1.0;
};

/// Fully resolved configuration. Every field has a default; a config file
/// only overrides what it names. Providing a [network] or [stimulus] section
/// replaces the default instances wholesale.
struct Config {
    PhysicalConstants constants;
    LeakModel leak;
    DpiSynapseParams synapse;  // prototype shared by all synapse instances
    AdexNeuronParams neuron;   // prototype shared by all neuron instances
    AdexVoltageParams oracle;
    EngineConfig engine;
    MismatchSpec mismatch;
    std::string mismatch_distribution = "lognormal";
    PowerModel power;

    std::vector<std::string> neuron_ids;
    std::vector<SynapseDecl> synapses;
    std::vector<EdgeDecl> edges;
    std::vector<TrainDecl> trains;
    std::vector<DcDecl> dcs;
};

/// Built-in defaults: one neuron `n0`, one synapse `s0 -> n0`, a 50 Hz / 1 s
/// regular pulse train into `s0`, and the calibrated power model.
Config default_config();

/// Parse a config document on top of the defaults. Unknown sections or keys,
/// malformed numbers, and unit/dimension mismatches are reported with their
/// line number.
Config parse_config(const std::string& text);

/// Read and parse a config file.
Config load_config_file(const std::string& path);

/// Apply one `--set section.key=value` override.
void apply_override(Config& cfg, const std::string& dotted_key,
                    const std::string& value);

/// Canonical text form. Parsing the printed text reproduces the document
/// (shortest-round-trip float formatting), so print(parse(print(c))) is
/// byte-identical to print(c).
std::string print_config(const Config& cfg);

/// Neuron parameters eligible for mismatch sigmas in [mismatch].
const std::vector<std::string>& mismatch_parameter_names();

/// SI-suffixed value parsers for command-line arguments (same grammar as
/// config values). Throw ConfigError on malformed input or wrong dimension.
double parse_si_time(const std::string& text);
double parse_si_current(const std::string& text);
double parse_si_frequency(const std::string& text);
double parse_si_energy(const std::string& text);
double parse_si_dimensionless(const std::string& text);

/// Copy of `p` with per-parameter lognormal mismatch factors applied for
/// the given run index.
AdexNeuronParams apply_mismatch(const AdexNeuronParams& p, const MismatchSpec& spec,
                                std::uint64_t run_index);

/// Network realized from the declaration lists, with id -> index maps for
/// stimulus resolution. Throws ConfigError on duplicate or dangling ids.
struct BuiltNetwork {
    Network net;
    std::map<std::string, std::size_t> neuron_index;
    std::map<std::string, std::size_t> synapse_index;
};

BuiltNetwork build_network(const Config& cfg);
StimulusProgram build_stimulus(const Config& cfg, const BuiltNetwork& built);

}  // namespace neurosim
