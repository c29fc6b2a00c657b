// aer.cpp - handshake FSM transitions and spike routing.
#include "neurosim/aer.hpp"

namespace neurosim {

const char* to_string(HsPhase phase) {
    switch (phase) {
        case HsPhase::Idle: return "Idle";
        case HsPhase::ReqHigh: return "ReqHigh";
        case HsPhase::AckHigh: return "AckHigh";
        case HsPhase::ReqLow: return "ReqLow";
    }
    return "?";
}

const char* to_string(HsSignal signal) {
    switch (signal) {
        case HsSignal::ReqRise: return "ReqRise";
        case HsSignal::AckRise: return "AckRise";
        case HsSignal::ReqFall: return "ReqFall";
        case HsSignal::AckFall: return "AckFall";
    }
    return "?";
}

void hs_step(HandshakeState& state, HsSignal signal, double t) {
    if (t < state.last_change)
        throw ProtocolViolation("handshake time ran backwards at t=" + std::to_string(t));
    HsPhase next = state.phase;
    bool legal = false;
    switch (state.phase) {
        case HsPhase::Idle:
            legal = (signal == HsSignal::ReqRise);
            next = HsPhase::ReqHigh;
            break;
        case HsPhase::ReqHigh:
            legal = (signal == HsSignal::AckRise);
            next = HsPhase::AckHigh;
            break;
        case HsPhase::AckHigh:
            legal = (signal == HsSignal::ReqFall);
            next = HsPhase::ReqLow;
            break;
        case HsPhase::ReqLow:
            legal = (signal == HsSignal::AckFall);
            next = HsPhase::Idle;
            break;
    }
    if (!legal)
        throw ProtocolViolation(std::string("illegal handshake edge ") + to_string(signal) +
                                " in phase " + to_string(state.phase));
    state.phase = next;
    state.last_change = t;
}

std::vector<PulseCommand> deliver_event(const AerEvent& event,
                                        const ConnectivityTable& table) {
    if (event.source >= table.fanout.size())
        throw NetworkError("spike from unknown source index " + std::to_string(event.source));
    if (event.t_ack < event.t_req)
        throw ProtocolViolation("event acknowledged before it was requested");
    std::vector<PulseCommand> pulses;
    pulses.reserve(table.fanout[event.source].size());
    for (const auto& [syn, weight] : table.fanout[event.source]) {
        PulseCommand cmd;
        cmd.synapse = syn;
        cmd.t_start = event.t_ack;
        cmd.weight = weight;
        pulses.push_back(cmd);
    }
    return pulses;
}

}  // namespace neurosim
