// aer.hpp - four-phase address-event handshake and spike routing.
// A spike raises Req; the receiver answers with Ack, upon which the sender
// lowers Req; the receiver then releases Ack, returning the link to idle.
// Every other signal order is a protocol violation. While a handshake is in
// flight the sender cannot issue a new request, so threshold crossings that
// occur mid-handshake are suppressed rather than queued.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace neurosim {

/// Raised when a handshake signal arrives in a phase that cannot accept it.
class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for spike routing problems (unknown source, bad wiring).
class NetworkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HsPhase { Idle, ReqHigh, AckHigh, ReqLow };
enum class HsSignal { ReqRise, AckRise, ReqFall, AckFall };

const char* to_string(HsPhase phase);
const char* to_string(HsSignal signal);

struct HandshakeState {
    HsPhase phase = HsPhase::Idle;
    double last_change = 0.0;  // s

    bool idle() const { return phase == HsPhase::Idle; }
};

/// Advance the handshake FSM by one signal edge at time t. The only legal
/// cycle is Idle -> ReqHigh -> AckHigh -> ReqLow -> Idle; any other edge
/// throws ProtocolViolation and leaves the state untouched. Time must not
/// run backwards between edges.
void hs_step(HandshakeState& state, HsSignal signal, double t);

/// One spike traversing the link: requested at t_req, acknowledged at t_ack.
struct AerEvent {
    std::size_t source = 0;  // index of the spiking neuron
    double t_req = 0.0;
    double t_ack = 0.0;
};

/// Receiver timing: delay from Req rise to Ack rise, and from Req fall to
/// Ack release.
struct ReceiverModel {
    double ack_delay = 10e-9;          // s
    double ack_release_delay = 10e-9;  // s
};

/// Directed fan-out wiring: for each source neuron, the synapses its spikes
/// drive, with a per-edge weight that scales the target synapse's I_w.
struct ConnectivityTable {
    // fanout[src] = list of (synapse index, weight)
    std::vector<std::vector<std::pair<std::size_t, double>>> fanout;
};

/// A pulse command produced by routing one acknowledged spike.
struct PulseCommand {
    std::size_t synapse = 0;
    double t_start = 0.0;  // pulse begins at the ack time
    double weight = 1.0;
};

/// Route an acknowledged spike to its fan-out targets: one pulse per edge,
/// starting at t_ack. An event whose source is outside the table is a wiring
/// error. An empty fan-out list is legal and yields no pulses.
std::vector<PulseCommand> deliver_event(const AerEvent& event,
                                        const ConnectivityTable& table);

}  // namespace neurosim
