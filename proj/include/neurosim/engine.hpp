// engine.hpp - deterministic hybrid simulation engine.
//
// The engine advances a small network of pulse-integrator synapses and
// current-mode neurons through a merged timeline of discrete events (pulse
// edges, handshake transitions, refractory and pulse-extender expiries,
// stimulus boundaries) and continuous dynamics between them. Synapses step in
// closed form (their drive is constant between events); neuron state pairs
// (I_mem, I_ahp) advance with classical RK4, never across an event boundary
// and never further than dt_max. Threshold crossings are localized inside a
// step by bisection on re-integration from the step start, so spike times are
// resolved to crossing_tolerance rather than to the step size.
//
// Runs are single-threaded and fully deterministic: event ties break on
// (time, kind, index, insertion order), and all stochastic stimulus draws are
// counter-based functions of (seed, target, ordinal).
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "neurosim/aer.hpp"
#include "neurosim/devices.hpp"
#include "neurosim/neuron.hpp"
#include "neurosim/synapse.hpp"

namespace neurosim {

struct NeuronInstance {
    std::string id = "n0";
    AdexNeuronParams params;
};

/// A synapse instance feeds its output current into one target neuron's
/// input. Networks without neurons (synapse characterization runs) leave
/// targets unused.
struct SynapseInstance {
    std::string id = "s0";
    DpiSynapseParams params;
    std::size_t target = 0;
};

struct Network {
    PhysicalConstants constants;
    LeakModel leak;
    std::vector<NeuronInstance> neurons;
    std::vector<SynapseInstance> synapses;
    /// Spike fan-out (sender neuron -> driven synapses). May be empty.
    ConnectivityTable connectivity;
};

/// Pulse train driving one synapse. Regular trains fire at
/// start + k / rate while inside [start, stop); Poisson trains draw
/// exponential gaps from a counter-based stream keyed by (seed, synapse).
struct TrainStimulus {
    std::size_t synapse = 0;
    double rate_hz = 50.0;
    double start = 0.0;
    double stop = 1.0;
    bool poisson = false;
    double weight = 1.0;
};

/// Constant current injected into a neuron over [start, stop).
struct StepStimulus {
    std::size_t neuron = 0;
    double amplitude = 0.0;  // A
    double start = 0.0;
    double stop = 1.0;
};

struct StimulusProgram {
    std::vector<TrainStimulus> trains;
    std::vector<StepStimulus> steps;
};

struct EngineConfig {
    double duration = 1.0;             // s
    double dt_max = 1e-5;              // s; RK4 step ceiling
    double crossing_tolerance = 1e-9;  // s; spike-time localization
    double sample_interval = 1e-3;     // s; trace sampling grid
    std::uint64_t seed = 1;
    bool record_traces = true;
    bool record_events = true;
    ReceiverModel receiver;
};

struct SpikeRecord {
    std::size_t neuron = 0;
    double t = 0.0;  // s; threshold-crossing (request) time
};

struct TraceSignal {
    std::string id;  // "<instance>.I_syn", "<instance>.I_mem", "<instance>.I_ahp"
    std::vector<double> values;
};

struct TraceSet {
    std::vector<double> times;
    std::vector<TraceSignal> signals;
};

struct LoggedEvent {
    double t = 0.0;
    std::string kind;
    std::string id;
    std::string detail;
};

struct RunResult {
    TraceSet traces;
    std::vector<SpikeRecord> spikes;
    std::vector<AerEvent> aer_events;
    std::vector<LoggedEvent> log;
};

/// Earliest time in (t_lo, t_hi] at which the re-integrable scalar trace
/// reaches `threshold`, resolved to `tolerance` by bisection. With
/// tolerance >= t_hi - t_lo this degenerates to returning t_hi.
double locate_crossing(const std::function<double(double)>& trace, double t_lo,
                       double t_hi, double threshold, double tolerance);

/// Execute one run. Validates the network, stimulus, and engine settings
/// up front (throwing ConfigError / NetworkError) and returns sampled
/// traces, spike records, completed handshake events, and the event log.
RunResult run(const Network& net, const StimulusProgram& stim, const EngineConfig& cfg);

}  // namespace neurosim
