// engine.cpp - hybrid event/ODE simulation loop.
#include "neurosim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "neurosim/numerics.hpp"

namespace neurosim {

namespace {

// Discrete event kinds. The enum order is the tie-break order for events
// scheduled at the same instant; expiries run before new activity so that a
// window ending exactly when another begins behaves as end-then-start.
enum class EvKind : int {
    RefractoryEnd = 0,
    PexEnd = 1,
    PulseEnd = 2,
    AckFall = 3,
    AckRise = 4,
    TrainPulse = 5,
    Boundary = 6,
};

struct Ev {
    double t = 0.0;
    EvKind kind = EvKind::Boundary;
    std::size_t idx = 0;
    std::uint64_t seq = 0;
};

struct EvLater {
    bool operator()(const Ev& a, const Ev& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
        if (a.idx != b.idx) return a.idx > b.idx;
        return a.seq > b.seq;
    }
};

struct SynRuntime {
    SynapseState state;
    double pulse_until = -1.0;
};

struct NeuRuntime {
    NeuronState state;
    HandshakeState hs;
    double pending_req = -1.0;  // request time of the in-flight handshake
};

struct TrainRuntime {
    std::uint64_t k = 0;   // ordinal of the next pulse
    double t_prev = 0.0;   // previous pulse time (Poisson gap chaining)
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double locate_crossing(const std::function<double(double)>& trace, double t_lo,
                       double t_hi, double threshold, double tolerance) {
    return bisect_first_above(trace, t_lo, t_hi, threshold, tolerance);
}

RunResult run(const Network& net, const StimulusProgram& stim, const EngineConfig& cfg) {
    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------
    validate(net.constants);
    validate(net.leak);
    for (const auto& n : net.neurons) validate(n.params);
    for (const auto& s : net.synapses) {
        validate(s.params);
        if (!net.neurons.empty() && s.target >= net.neurons.size())
            throw NetworkError("synapse '" + s.id + "' targets unknown neuron index");
    }
    if (!net.connectivity.fanout.empty() &&
        net.connectivity.fanout.size() != net.neurons.size())
        throw NetworkError("connectivity table size does not match neuron count");
    for (const auto& row : net.connectivity.fanout)
        for (const auto& edge : row)
            if (edge.first >= net.synapses.size())
                throw NetworkError("edge targets unknown synapse index");
    for (const auto& tr : stim.trains) {
        if (tr.synapse >= net.synapses.size())
            throw NetworkError("train stimulus targets unknown synapse index");
        if (!(tr.rate_hz > 0.0)) throw ConfigError("train rate must be > 0");
        if (tr.stop < tr.start) throw ConfigError("train stop precedes start");
    }
    for (const auto& st : stim.steps) {
        if (st.neuron >= net.neurons.size())
            throw NetworkError("step stimulus targets unknown neuron index");
        if (st.stop < st.start) throw ConfigError("step stimulus stop precedes start");
    }
    if (!(cfg.duration > 0.0)) throw ConfigError("duration must be > 0");
    if (!(cfg.dt_max > 0.0)) throw ConfigError("dt_max must be > 0");
    if (!(cfg.crossing_tolerance > 0.0)) throw ConfigError("crossing_tolerance must be > 0");
    if (!(cfg.sample_interval > 0.0)) throw ConfigError("sample_interval must be > 0");
    if (cfg.receiver.ack_delay < 0.0 || cfg.receiver.ack_release_delay < 0.0)
        throw ConfigError("receiver delays must be >= 0");

    const auto n_syn = net.synapses.size();
    const auto n_neu = net.neurons.size();

    RunResult out;

    // ------------------------------------------------------------------
    // Runtime state and helpers
    // ------------------------------------------------------------------
    std::vector<SynRuntime> syn(n_syn);
    std::vector<NeuRuntime> neu(n_neu);
    std::vector<TrainRuntime> trains(stim.trains.size());

    std::priority_queue<Ev, std::vector<Ev>, EvLater> queue;
    std::uint64_t seq = 0;
    auto push = [&](double t, EvKind kind, std::size_t idx) {
        queue.push(Ev{t, kind, idx, seq++});
    };

    auto log = [&](double t, const char* kind, const std::string& id,
                   std::string detail = std::string()) {
        if (cfg.record_events) out.log.push_back({t, kind, id, std::move(detail)});
    };

    if (cfg.record_traces) {
        out.traces.signals.reserve(n_syn + 2 * n_neu);
        for (const auto& s : net.synapses)
            out.traces.signals.push_back({s.id + ".I_syn", {}});
        for (const auto& n : net.neurons) {
            out.traces.signals.push_back({n.id + ".I_mem", {}});
            out.traces.signals.push_back({n.id + ".I_ahp", {}});
        }
    }
    auto record_sample = [&](double t) {
        out.traces.times.push_back(t);
        std::size_t col = 0;
        for (std::size_t i = 0; i < n_syn; ++i)
            out.traces.signals[col++].values.push_back(syn[i].state.I_syn);
        for (std::size_t i = 0; i < n_neu; ++i) {
            out.traces.signals[col++].values.push_back(neu[i].state.I_mem);
            out.traces.signals[col++].values.push_back(neu[i].state.I_ahp);
        }
    };

    // Constant current into a neuron over a step's interior (no stimulus
    // boundary lies inside a step, so one midpoint probe suffices).
    auto dc_input = [&](std::size_t i, double t_mid) {
        double sum = 0.0;
        for (const auto& st : stim.steps)
            if (st.neuron == i && st.start <= t_mid && t_mid < st.stop)
                sum += st.amplitude;
        return sum;
    };

    // Synaptic current into neuron i at offset `off` past the step start,
    // interpolated in closed form from committed synapse states.
    auto syn_input = [&](std::size_t i, double off) {
        double sum = 0.0;
        for (std::size_t s = 0; s < n_syn; ++s)
            if (net.synapses[s].target == i)
                sum += interpolate(net.synapses[s].params, syn[s].state, off,
                                   net.leak, net.constants);
        return sum;
    };

    // One RK4 step of neuron i over [t0, t0 + h]. Refractory and
    // pulse-extender flags are segment constants by construction.
    auto integrate_neuron = [&](std::size_t i, double t0, double h) {
        const auto& p = net.neurons[i].params;
        const auto& st = neu[i].state;
        const bool refractory = t0 < st.refractory_until;
        const bool pex = t0 < st.pex_until;
        const double dc = dc_input(i, t0 + 0.5 * h);
        auto rhs = [&](double s, const std::array<double, 2>& y) {
            return neuron_rhs(p, y[0], y[1], syn_input(i, s - t0) + dc, refractory,
                              pex, net.leak, net.constants);
        };
        auto y = rk4_step<2>(rhs, t0, {st.I_mem, st.I_ahp}, h);
        if (y[0] < 0.0) y[0] = 0.0;
        if (y[1] < 0.0) y[1] = 0.0;
        return y;
    };

    auto eligible = [&](std::size_t i, double t) {
        return neu[i].hs.idle() && !(t < neu[i].state.refractory_until);
    };

    // Spike request at time t: raise Req, open the pulse-extender window,
    // and schedule the receiver's acknowledge.
    auto fire = [&](std::size_t i, double t) {
        auto& r = neu[i];
        hs_step(r.hs, HsSignal::ReqRise, t);
        r.pending_req = t;
        trigger_pulse_extender(net.neurons[i].params, r.state, t);
        if (net.neurons[i].params.ahp_enabled)
            push(r.state.pex_until, EvKind::PexEnd, i);
        out.spikes.push_back({i, t});
        push(t + cfg.receiver.ack_delay, EvKind::AckRise, i);
        log(t, "spike", net.neurons[i].id);
        log(t, "req_rise", net.neurons[i].id);
    };

    auto pulse_on = [&](std::size_t s, double weight, double t, const char* why) {
        auto& r = syn[s];
        r.state.pulse_active = true;
        r.state.i_w_scale = weight;
        const double until = t + net.synapses[s].params.pulse_width;
        if (until > r.pulse_until) r.pulse_until = until;
        push(r.pulse_until, EvKind::PulseEnd, s);
        log(t, why, net.synapses[s].id);
    };

    // Advance all continuous state from t0 to t1. If an eligible neuron
    // crosses threshold inside the step, the earliest crossing is localized,
    // states are committed at the crossing instead, and the spike is issued.
    // Returns the time actually reached.
    auto advance = [&](double t0, double t1) -> double {
        // A neuron already at/above threshold the moment it is eligible
        // spikes immediately (no integration required).
        for (std::size_t i = 0; i < n_neu; ++i) {
            if (eligible(i, t0) &&
                check_threshold(net.neurons[i].params, neu[i].state.I_mem)) {
                fire(i, t0);
                return t0;
            }
        }
        if (!(t1 > t0)) return t0;
        const double h = t1 - t0;

        std::vector<std::array<double, 2>> trial(n_neu);
        double t_star = kInf;
        std::size_t who = 0;
        for (std::size_t i = 0; i < n_neu; ++i) {
            trial[i] = integrate_neuron(i, t0, h);
            const double thr = net.neurons[i].params.I_thr;
            if (eligible(i, t0) && neu[i].state.I_mem < thr && trial[i][0] >= thr) {
                const double tc = locate_crossing(
                    [&](double s) { return integrate_neuron(i, t0, s - t0)[0]; }, t0,
                    t1, thr, cfg.crossing_tolerance);
                if (tc < t_star) {
                    t_star = tc;
                    who = i;
                }
            }
        }

        const double t_reach = (t_star < kInf) ? t_star : t1;
        const double h_reach = t_reach - t0;
        for (std::size_t i = 0; i < n_neu; ++i) {
            auto y = (t_reach == t1) ? trial[i] : integrate_neuron(i, t0, h_reach);
            neu[i].state.I_mem = y[0];
            neu[i].state.I_ahp = y[1];
        }
        for (std::size_t s = 0; s < n_syn; ++s)
            syn[s].state.I_syn = exact_step(net.synapses[s].params, syn[s].state,
                                            h_reach, net.leak, net.constants);
        if (t_star < kInf) fire(who, t_star);
        return t_reach;
    };

    // ------------------------------------------------------------------
    // Initial event population
    // ------------------------------------------------------------------
    for (std::size_t ti = 0; ti < stim.trains.size(); ++ti) {
        const auto& tr = stim.trains[ti];
        double t0;
        if (tr.poisson) {
            const double u = u01_from_bits(
                hash_counters(cfg.seed, tr.synapse ^ 0x5DEECE66Dull, 0));
            t0 = tr.start - std::log(u) / tr.rate_hz;
            trains[ti].t_prev = t0;
        } else {
            t0 = tr.start;
        }
        trains[ti].k = 0;
        if (t0 < tr.stop && t0 <= cfg.duration) push(t0, EvKind::TrainPulse, ti);
    }
    for (const auto& st : stim.steps) {
        if (st.start > 0.0 && st.start <= cfg.duration)
            push(st.start, EvKind::Boundary, st.neuron);
        if (st.stop > 0.0 && st.stop <= cfg.duration)
            push(st.stop, EvKind::Boundary, st.neuron);
    }

    // ------------------------------------------------------------------
    // Event dispatch
    // ------------------------------------------------------------------
    auto dispatch = [&](const Ev& ev) {
        switch (ev.kind) {
            case EvKind::TrainPulse: {
                const auto& tr = stim.trains[ev.idx];
                auto& rt = trains[ev.idx];
                pulse_on(tr.synapse, tr.weight, ev.t, "pulse_start");
                rt.k += 1;
                double t_next;
                if (tr.poisson) {
                    const double u = u01_from_bits(hash_counters(
                        cfg.seed, tr.synapse ^ 0x5DEECE66Dull, rt.k));
                    t_next = rt.t_prev - std::log(u) / tr.rate_hz;
                    rt.t_prev = t_next;
                } else {
                    t_next = tr.start + static_cast<double>(rt.k) / tr.rate_hz;
                }
                if (t_next < tr.stop && t_next <= cfg.duration)
                    push(t_next, EvKind::TrainPulse, ev.idx);
                break;
            }
            case EvKind::PulseEnd: {
                auto& r = syn[ev.idx];
                if (ev.t < r.pulse_until) break;  // pulse was retriggered
                if (r.state.pulse_active) {
                    r.state.pulse_active = false;
                    log(ev.t, "pulse_end", net.synapses[ev.idx].id);
                }
                break;
            }
            case EvKind::AckRise: {
                auto& r = neu[ev.idx];
                hs_step(r.hs, HsSignal::AckRise, ev.t);
                log(ev.t, "ack_rise", net.neurons[ev.idx].id);
                AerEvent aer;
                aer.source = ev.idx;
                aer.t_req = r.pending_req;
                aer.t_ack = ev.t;
                out.aer_events.push_back(aer);
                apply_reset(net.neurons[ev.idx].params, r.state, ev.t);
                push(r.state.refractory_until, EvKind::RefractoryEnd, ev.idx);
                log(ev.t, "reset", net.neurons[ev.idx].id);
                if (!net.connectivity.fanout.empty()) {
                    for (const auto& cmd : deliver_event(aer, net.connectivity))
                        pulse_on(cmd.synapse, cmd.weight, cmd.t_start, "deliver");
                }
                hs_step(r.hs, HsSignal::ReqFall, ev.t);
                log(ev.t, "req_fall", net.neurons[ev.idx].id);
                push(ev.t + cfg.receiver.ack_release_delay, EvKind::AckFall, ev.idx);
                break;
            }
            case EvKind::AckFall: {
                hs_step(neu[ev.idx].hs, HsSignal::AckFall, ev.t);
                log(ev.t, "ack_fall", net.neurons[ev.idx].id);
                break;
            }
            case EvKind::RefractoryEnd: {
                log(ev.t, "refractory_end", net.neurons[ev.idx].id);
                break;
            }
            case EvKind::PexEnd: {
                if (ev.t < neu[ev.idx].state.pex_until) break;  // retriggered
                log(ev.t, "pex_end", net.neurons[ev.idx].id);
                break;
            }
            case EvKind::Boundary: {
                log(ev.t, "boundary", net.neurons.empty() ? "" : net.neurons[ev.idx].id);
                break;
            }
        }
    };

    auto process_events_at = [&](double t) {
        while (!queue.empty() && queue.top().t <= t) {
            const Ev ev = queue.top();
            queue.pop();
            dispatch(ev);
        }
    };

    // ------------------------------------------------------------------
    // Main loop
    // ------------------------------------------------------------------
    double t = 0.0;
    std::uint64_t sample_k = 0;
    double next_sample = 0.0;

    process_events_at(0.0);
    if (cfg.record_traces) {
        record_sample(0.0);
        sample_k = 1;
        next_sample = cfg.sample_interval;
    }

    while (t < cfg.duration) {
        double t_next = cfg.duration;
        if (!queue.empty()) t_next = std::min(t_next, queue.top().t);
        if (cfg.record_traces) t_next = std::min(t_next, next_sample);
        if (n_neu > 0) t_next = std::min(t_next, t + cfg.dt_max);

        const double reached = advance(t, t_next);
        t = reached;
        if (reached == t_next) process_events_at(t);
        if (cfg.record_traces && t == next_sample) {
            record_sample(t);
            sample_k += 1;
            next_sample = static_cast<double>(sample_k) * cfg.sample_interval;
        }
    }

    return out;
}

}  // namespace neurosim
