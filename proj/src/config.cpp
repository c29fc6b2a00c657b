// config.cpp - INI parsing with SI units and a per-key dimension schema.
#include "neurosim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace neurosim {

namespace {

// ---------------------------------------------------------------------------
// Quantity parsing
// ---------------------------------------------------------------------------

enum class Dim {
    None,  // dimensionless
    Current,
    Capacitance,
    Time,
    Frequency,
    Voltage,
    Conductance,
    Power,
    Energy,
    Charge,
};

const char* dim_name(Dim d) {
    switch (d) {
        case Dim::None: return "dimensionless";
        case Dim::Current: return "current";
        case Dim::Capacitance: return "capacitance";
        case Dim::Time: return "time";
        case Dim::Frequency: return "frequency";
        case Dim::Voltage: return "voltage";
        case Dim::Conductance: return "conductance";
        case Dim::Power: return "power";
        case Dim::Energy: return "energy";
        case Dim::Charge: return "charge";
    }
    return "?";
}

struct UnitInfo {
    Dim dim;
    const char* symbol;
};

bool lookup_unit(const std::string& s, Dim& out) {
    static const std::map<std::string, Dim> units = {
        {"A", Dim::Current},     {"F", Dim::Capacitance}, {"s", Dim::Time},
        {"Hz", Dim::Frequency},  {"V", Dim::Voltage},     {"S", Dim::Conductance},
        {"W", Dim::Power},       {"J", Dim::Energy},      {"C", Dim::Charge},
    };
    auto it = units.find(s);
    if (it == units.end()) return false;
    out = it->second;
    return true;
}

bool lookup_prefix(char c, double& mult) {
    switch (c) {
        case 'f': mult = 1e-15; return true;
        case 'p': mult = 1e-12; return true;
        case 'n': mult = 1e-9; return true;
        case 'u': mult = 1e-6; return true;
        case 'm': mult = 1e-3; return true;
        case 'k': mult = 1e3; return true;
        case 'M': mult = 1e6; return true;
        default: return false;
    }
}

const char* canonical_unit(Dim d) {
    switch (d) {
        case Dim::None: return "";
        case Dim::Current: return "A";
        case Dim::Capacitance: return "F";
        case Dim::Time: return "s";
        case Dim::Frequency: return "Hz";
        case Dim::Voltage: return "V";
        case Dim::Conductance: return "S";
        case Dim::Power: return "W";
        case Dim::Energy: return "J";
        case Dim::Charge: return "C";
    }
    return "";
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line > 0)
        throw ConfigError("config: line " + std::to_string(line) + ": " + msg);
    throw ConfigError("config: " + msg);
}

/// Parse "<number>[<prefix>]<unit>" where the unit must match `expected`.
/// A bare number is taken in base SI units of the expected dimension.
double parse_quantity(const std::string& raw, Dim expected, int line,
                      const std::string& key) {
    const std::string s = trim(raw);
    if (s.empty()) fail(line, "key '" + key + "': empty value");
    double number = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto res = std::from_chars(begin, end, number);
    if (res.ec != std::errc() || res.ptr == begin)
        fail(line, "key '" + key + "': malformed number '" + s + "'");
    std::string suffix = trim(std::string(res.ptr, end));
    if (suffix.empty()) return number;  // bare number: base SI units
    if (expected == Dim::None)
        fail(line, "key '" + key + "' is dimensionless, got unit '" + suffix + "'");
    Dim unit_dim;
    double mult = 1.0;
    if (!lookup_unit(suffix, unit_dim)) {
        double pfx;
        Dim rest_dim;
        if (suffix.size() >= 2 && lookup_prefix(suffix[0], pfx) &&
            lookup_unit(suffix.substr(1), rest_dim)) {
            unit_dim = rest_dim;
            mult = pfx;
        } else {
            fail(line, "key '" + key + "': unknown unit '" + suffix + "'");
        }
    }
    if (unit_dim != expected)
        fail(line, "key '" + key + "' expects " + dim_name(expected) + ", got " +
                       dim_name(unit_dim) + " ('" + suffix + "')");
    return number * mult;
}

bool parse_bool(const std::string& raw, int line, const std::string& key) {
    const std::string s = trim(raw);
    if (s == "true" || s == "on" || s == "1") return true;
    if (s == "false" || s == "off" || s == "0") return false;
    fail(line, "key '" + key + "': expected a boolean, got '" + s + "'");
}

std::uint64_t parse_integer(const std::string& raw, int line, const std::string& key) {
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(line, "key '" + key + "': expected a non-negative integer, got '" + s + "'");
    return v;
}

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_quantity(double v, Dim d) { return format_double(v) + canonical_unit(d); }

// ---------------------------------------------------------------------------
// Key schema
// ---------------------------------------------------------------------------

const std::set<std::string>& known_sections() {
    static const std::set<std::string> s = {"constants", "leak",    "synapse",
                                            "neuron",    "oracle",  "network",
                                            "stimulus",  "engine",  "mismatch",
                                            "power"};
    return s;
}

bool is_mismatch_param(const std::string& key) {
    const auto& names = mismatch_parameter_names();
    return std::find(names.begin(), names.end(), key) != names.end();
}

/// Apply one key = value assignment. `line` <= 0 means a --set override.
void apply_kv(Config& c, const std::string& sect, const std::string& key,
              const std::string& val, int line) {
    auto q = [&](Dim d) { return parse_quantity(val, d, line, key); };
    auto auto_or = [&](Dim d) {
        return trim(val) == "auto" ? -1.0 : parse_quantity(val, d, line, key);
    };

    if (sect == "constants") {
        if (key == "U_T") c.constants.U_T = q(Dim::Voltage);
        else if (key == "kappa") c.constants.kappa = q(Dim::None);
        else if (key == "V_dd") c.constants.V_dd = q(Dim::Voltage);
        else fail(line, "unknown key '" + key + "' in [constants]");
    } else if (sect == "leak") {
        if (key == "enabled") c.leak.enabled = parse_bool(val, line, key);
        else if (key == "cap_leak_baseline") c.leak.cap_leak_baseline = q(Dim::Current);
        else if (key == "transistor_leak_floor") c.leak.transistor_leak_floor = q(Dim::Current);
        else fail(line, "unknown key '" + key + "' in [leak]");
    } else if (sect == "synapse") {
        if (key == "C_syn") c.synapse.C_syn = q(Dim::Capacitance);
        else if (key == "I_tau") c.synapse.I_tau = q(Dim::Current);
        else if (key == "I_gain") c.synapse.I_gain = auto_or(Dim::Current);
        else if (key == "I_w") c.synapse.I_w = q(Dim::Current);
        else if (key == "pulse_width") c.synapse.pulse_width = q(Dim::Time);
        else fail(line, "unknown key '" + key + "' in [synapse]");
    } else if (sect == "neuron") {
        if (key == "C_mem") c.neuron.C_mem = q(Dim::Capacitance);
        else if (key == "C_ahp") c.neuron.C_ahp = q(Dim::Capacitance);
        else if (key == "C_ref") c.neuron.C_ref = q(Dim::Capacitance);
        else if (key == "C_pex") c.neuron.C_pex = q(Dim::Capacitance);
        else if (key == "C_cc") c.neuron.C_cc = q(Dim::Capacitance);
        else if (key == "I_leak") c.neuron.I_leak = q(Dim::Current);
        else if (key == "gain_ratio_leak") c.neuron.gain_ratio_leak = q(Dim::None);
        else if (key == "I_fb0") c.neuron.I_fb0 = q(Dim::Current);
        else if (key == "I_norm") c.neuron.I_norm = auto_or(Dim::Current);
        else if (key == "fb_clamp_ratio") c.neuron.fb_clamp_ratio = q(Dim::None);
        else if (key == "I_thr") c.neuron.I_thr = q(Dim::Current);
        else if (key == "I_reset") c.neuron.I_reset = q(Dim::Current);
        else if (key == "Q_ref") c.neuron.Q_ref = q(Dim::Charge);
        else if (key == "I_ref") c.neuron.I_ref = q(Dim::Current);
        else if (key == "ahp_enabled") c.neuron.ahp_enabled = parse_bool(val, line, key);
        else if (key == "I_a") c.neuron.I_a = q(Dim::Current);
        else if (key == "I_tau_ahp") c.neuron.I_tau_ahp = q(Dim::Current);
        else if (key == "gain_ratio_ahp") c.neuron.gain_ratio_ahp = q(Dim::None);
        else if (key == "t_pex") c.neuron.t_pex = q(Dim::Time);
        else fail(line, "unknown key '" + key + "' in [neuron]");
    } else if (sect == "oracle") {
        if (key == "C") c.oracle.C = q(Dim::Capacitance);
        else if (key == "g_L") c.oracle.g_L = q(Dim::Conductance);
        else if (key == "E_L") c.oracle.E_L = q(Dim::Voltage);
        else if (key == "Delta_T") c.oracle.Delta_T = q(Dim::Voltage);
        else if (key == "V_T") c.oracle.V_T = q(Dim::Voltage);
        else if (key == "a") c.oracle.a = q(Dim::Conductance);
        else if (key == "tau_w") c.oracle.tau_w = q(Dim::Time);
        else if (key == "b_increment") c.oracle.b_increment = q(Dim::Current);
        else if (key == "V_reset") c.oracle.V_reset = q(Dim::Voltage);
        else if (key == "V_peak") c.oracle.V_peak = q(Dim::Voltage);
        else fail(line, "unknown key '" + key + "' in [oracle]");
    } else if (sect == "engine") {
        if (key == "duration") c.engine.duration = q(Dim::Time);
        else if (key == "dt_max") c.engine.dt_max = q(Dim::Time);
        else if (key == "crossing_tolerance") c.engine.crossing_tolerance = q(Dim::Time);
        else if (key == "sample_interval") c.engine.sample_interval = q(Dim::Time);
        else if (key == "seed") c.engine.seed = parse_integer(val, line, key);
        else if (key == "ack_delay") c.engine.receiver.ack_delay = q(Dim::Time);
        else if (key == "ack_release_delay") c.engine.receiver.ack_release_delay = q(Dim::Time);
        else fail(line, "unknown key '" + key + "' in [engine]");
    } else if (sect == "mismatch") {
        if (key == "seed") c.mismatch.seed = parse_integer(val, line, key);
        else if (key == "distribution") {
            const std::string d = trim(val);
            if (d != "lognormal")
                fail(line, "key 'distribution': only 'lognormal' is supported, got '" + d + "'");
            c.mismatch_distribution = d;
        } else if (is_mismatch_param(key)) {
            const double sigma = q(Dim::None);
            if (sigma < 0.0) fail(line, "key '" + key + "': sigma must be >= 0");
            c.mismatch.sigma[key] = sigma;
        } else {
            fail(line, "unknown key '" + key + "' in [mismatch] (not a mismatchable parameter)");
        }
    } else if (sect == "power") {
        if (key == "P_static") c.power.p_static_w = q(Dim::Power);
        else if (key == "E_switch") c.power.e_switch_j = q(Dim::Energy);
        else fail(line, "unknown key '" + key + "' in [power]");
    } else {
        fail(line, "key '" + key + "' outside any known section");
    }
}

// ---------------------------------------------------------------------------
// Directive lines
// ---------------------------------------------------------------------------

std::vector<std::string> tokenize_directive(const std::string& line) {
    std::string padded;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == ':' || (line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>')) {
            padded += ' ';
            padded += line[i];
            if (line[i] == '-') {
                padded += '>';
                ++i;
            }
            padded += ' ';
        } else {
            padded += line[i];
        }
    }
    std::istringstream in(padded);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

double parse_plain_double(const std::string& s, int line, const std::string& what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(line, what + ": malformed number '" + s + "'");
    return v;
}

void parse_network_line(Config& c, const std::string& text, int line) {
    const auto toks = tokenize_directive(text);
    if (toks.empty()) return;
    if (toks[0] == "neuron") {
        if (toks.size() != 2) fail(line, "expected 'neuron <id>'");
        c.neuron_ids.push_back(toks[1]);
        return;
    }
    if (toks[0] == "synapse") {
        if (toks.size() == 2) {
            c.synapses.push_back({toks[1], ""});
            return;
        }
        if (toks.size() == 4 && toks[2] == "->") {
            c.synapses.push_back({toks[1], toks[3]});
            return;
        }
        fail(line, "expected 'synapse <id> [-> <neuron>]'");
    }
    // Edge: "<neuron> -> <synapse> [: <weight>]"
    if (toks.size() == 3 && toks[1] == "->") {
        c.edges.push_back({toks[0], toks[2], 1.0});
        return;
    }
    if (toks.size() == 5 && toks[1] == "->" && toks[3] == ":") {
        const double w = parse_plain_double(toks[4], line, "edge weight");
        if (!(w > 0.0)) fail(line, "edge weight must be > 0");
        c.edges.push_back({toks[0], toks[2], w});
        return;
    }
    fail(line, "unrecognized [network] directive '" + text + "'");
}

void parse_stimulus_line(Config& c, const std::string& text, int line) {
    const auto toks = tokenize_directive(text);
    if (toks.empty()) return;
    auto kv = [&](const std::string& tok, std::string& key, std::string& val) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            fail(line, "expected key=value, got '" + tok + "'");
        key = tok.substr(0, eq);
        val = tok.substr(eq + 1);
    };
    if (toks[0] == "train") {
        if (toks.size() < 2) fail(line, "expected 'train <synapse> key=value...'");
        TrainDecl t;
        t.synapse = toks[1];
        for (std::size_t i = 2; i < toks.size(); ++i) {
            std::string key, val;
            kv(toks[i], key, val);
            if (key == "rate") t.rate_hz = parse_quantity(val, Dim::Frequency, line, key);
            else if (key == "start") t.start = parse_quantity(val, Dim::Time, line, key);
            else if (key == "stop") t.stop = parse_quantity(val, Dim::Time, line, key);
            else if (key == "weight") t.weight = parse_quantity(val, Dim::None, line, key);
            else if (key == "kind") {
                if (val == "regular") t.poisson = false;
                else if (val == "poisson") t.poisson = true;
                else fail(line, "kind must be 'regular' or 'poisson', got '" + val + "'");
            } else fail(line, "unknown train key '" + key + "'");
        }
        if (!(t.rate_hz > 0.0)) fail(line, "train rate must be > 0");
        if (!(t.weight > 0.0)) fail(line, "train weight must be > 0");
        if (t.start < 0.0 || t.stop < t.start) fail(line, "train times must satisfy 0 <= start <= stop");
        c.trains.push_back(t);
        return;
    }
    if (toks[0] == "dc") {
        if (toks.size() < 2) fail(line, "expected 'dc <neuron> key=value...'");
        DcDecl d;
        d.neuron = toks[1];
        for (std::size_t i = 2; i < toks.size(); ++i) {
            std::string key, val;
            kv(toks[i], key, val);
            if (key == "amp") d.amplitude = parse_quantity(val, Dim::Current, line, key);
            else if (key == "start") d.start = parse_quantity(val, Dim::Time, line, key);
            else if (key == "stop") d.stop = parse_quantity(val, Dim::Time, line, key);
            else fail(line, "unknown dc key '" + key + "'");
        }
        if (d.start < 0.0 || d.stop < d.start) fail(line, "dc times must satisfy 0 <= start <= stop");
        c.dcs.push_back(d);
        return;
    }
    fail(line, "unrecognized [stimulus] directive '" + text + "'");
}

void validate_config(const Config& c) {
    validate(c.constants);
    validate(c.leak);
    validate(c.synapse);
    validate(c.neuron);
    validate(c.mismatch);
    if (!(c.power.p_static_w >= 0.0) || !(c.power.e_switch_j >= 0.0))
        throw ConfigError("config: [power] values must be >= 0");
}

}  // namespace

double parse_si_time(const std::string& text) {
    return parse_quantity(text, Dim::Time, 0, "value");
}
double parse_si_current(const std::string& text) {
    return parse_quantity(text, Dim::Current, 0, "value");
}
double parse_si_frequency(const std::string& text) {
    return parse_quantity(text, Dim::Frequency, 0, "value");
}
double parse_si_energy(const std::string& text) {
    return parse_quantity(text, Dim::Energy, 0, "value");
}
double parse_si_dimensionless(const std::string& text) {
    return parse_quantity(text, Dim::None, 0, "value");
}

const std::vector<std::string>& mismatch_parameter_names() {
    static const std::vector<std::string> names = {
        "I_a",   "I_fb0",          "I_leak",        "I_ref",
        "I_tau_ahp", "I_thr",      "gain_ratio_ahp", "gain_ratio_leak",
    };
    return names;
}

AdexNeuronParams apply_mismatch(const AdexNeuronParams& p, const MismatchSpec& spec,
                                std::uint64_t run_index) {
    std::map<std::string, double> nominal;
    nominal["I_a"] = p.I_a;
    nominal["I_fb0"] = p.I_fb0;
    nominal["I_leak"] = p.I_leak;
    nominal["I_ref"] = p.I_ref;
    nominal["I_tau_ahp"] = p.I_tau_ahp;
    nominal["I_thr"] = p.I_thr;
    nominal["gain_ratio_ahp"] = p.gain_ratio_ahp;
    nominal["gain_ratio_leak"] = p.gain_ratio_leak;
    const auto sampled = sample_mismatch(nominal, spec, run_index);
    AdexNeuronParams out = p;
    out.I_a = sampled.at("I_a");
    out.I_fb0 = sampled.at("I_fb0");
    out.I_leak = sampled.at("I_leak");
    out.I_ref = sampled.at("I_ref");
    out.I_tau_ahp = sampled.at("I_tau_ahp");
    out.I_thr = sampled.at("I_thr");
    out.gain_ratio_ahp = sampled.at("gain_ratio_ahp");
    out.gain_ratio_leak = sampled.at("gain_ratio_leak");
    return out;
}

Config default_config() {
    Config c;
    c.neuron_ids = {"n0"};
    c.synapses = {{"s0", "n0"}};
    c.trains = {TrainDecl{"s0", 50.0, 0.0, 1.0, 1.0, false}};
    // Power model calibrated from the two reference energy-per-spike points
    // (16 pJ at 30 Hz, 1 pJ at 2.1 kHz) via the exact 2x2 solve.
    c.power.p_static_w = 4.5652173913043475e-10;
    c.power.e_switch_j = 7.8260869565217441e-13;
    // Mismatch sigma profile calibrated so the 500-run Monte Carlo at the
    // nominal 70 Hz operating point lands at CV ~ 0.13.
    c.mismatch.sigma["I_leak"] = 0.052;
    c.mismatch.sigma["gain_ratio_leak"] = 0.052;
    c.mismatch.sigma["I_thr"] = 0.042;
    c.mismatch.sigma["I_ref"] = 0.016;
    return c;
}

Config parse_config(const std::string& text) {
    Config c = default_config();
    std::string sect;
    bool network_reset = false;
    bool stimulus_reset = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto cut = raw.find_first_of("#;");
        if (cut != std::string::npos) raw.erase(cut);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "malformed section header '" + line + "'");
            sect = trim(line.substr(1, line.size() - 2));
            if (!known_sections().count(sect))
                fail(lineno, "unknown section [" + sect + "]");
            if (sect == "network" && !network_reset) {
                c.neuron_ids.clear();
                c.synapses.clear();
                c.edges.clear();
                network_reset = true;
            }
            if (sect == "stimulus" && !stimulus_reset) {
                c.trains.clear();
                c.dcs.clear();
                stimulus_reset = true;
            }
            continue;
        }
        if (sect == "network") {
            parse_network_line(c, line, lineno);
            continue;
        }
        if (sect == "stimulus") {
            parse_stimulus_line(c, line, lineno);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (sect.empty()) fail(lineno, "key '" + key + "' before any [section]");
        apply_kv(c, sect, key, val, lineno);
    }
    validate_config(c);
    return c;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (" + path + ")");
    }
}

void apply_override(Config& cfg, const std::string& dotted_key,
                    const std::string& value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("--set requires section.key=value, got '" + dotted_key + "'");
    const std::string sect = trim(dotted_key.substr(0, dot));
    const std::string key = trim(dotted_key.substr(dot + 1));
    if (!known_sections().count(sect))
        throw ConfigError("--set: unknown section [" + sect + "]");
    if (sect == "network" || sect == "stimulus")
        throw ConfigError("--set cannot address [" + sect + "]; use the section's directive lines");
    apply_kv(cfg, sect, key, trim(value), 0);
    validate_config(cfg);
}

std::string print_config(const Config& c) {
    std::ostringstream out;
    auto qty = [&](const char* key, double v, Dim d) {
        out << key << " = " << format_quantity(v, d) << "\n";
    };
    auto dimless = [&](const char* key, double v) {
        out << key << " = " << format_double(v) << "\n";
    };
    auto boolean = [&](const char* key, bool v) {
        out << key << " = " << (v ? "true" : "false") << "\n";
    };
    auto auto_qty = [&](const char* key, double v, Dim d) {
        if (v < 0.0) out << key << " = auto\n";
        else qty(key, v, d);
    };

    out << "[constants]\n";
    qty("U_T", c.constants.U_T, Dim::Voltage);
    dimless("kappa", c.constants.kappa);
    qty("V_dd", c.constants.V_dd, Dim::Voltage);

    out << "\n[leak]\n";
    boolean("enabled", c.leak.enabled);
    qty("cap_leak_baseline", c.leak.cap_leak_baseline, Dim::Current);
    qty("transistor_leak_floor", c.leak.transistor_leak_floor, Dim::Current);

    out << "\n[synapse]\n";
    qty("C_syn", c.synapse.C_syn, Dim::Capacitance);
    qty("I_tau", c.synapse.I_tau, Dim::Current);
    auto_qty("I_gain", c.synapse.I_gain, Dim::Current);
    qty("I_w", c.synapse.I_w, Dim::Current);
    qty("pulse_width", c.synapse.pulse_width, Dim::Time);

    out << "\n[neuron]\n";
    qty("C_mem", c.neuron.C_mem, Dim::Capacitance);
    qty("C_ahp", c.neuron.C_ahp, Dim::Capacitance);
    qty("C_ref", c.neuron.C_ref, Dim::Capacitance);
    qty("C_pex", c.neuron.C_pex, Dim::Capacitance);
    qty("C_cc", c.neuron.C_cc, Dim::Capacitance);
    qty("I_leak", c.neuron.I_leak, Dim::Current);
    dimless("gain_ratio_leak", c.neuron.gain_ratio_leak);
    qty("I_fb0", c.neuron.I_fb0, Dim::Current);
    auto_qty("I_norm", c.neuron.I_norm, Dim::Current);
    dimless("fb_clamp_ratio", c.neuron.fb_clamp_ratio);
    qty("I_thr", c.neuron.I_thr, Dim::Current);
    qty("I_reset", c.neuron.I_reset, Dim::Current);
    qty("Q_ref", c.neuron.Q_ref, Dim::Charge);
    qty("I_ref", c.neuron.I_ref, Dim::Current);
    boolean("ahp_enabled", c.neuron.ahp_enabled);
    qty("I_a", c.neuron.I_a, Dim::Current);
    qty("I_tau_ahp", c.neuron.I_tau_ahp, Dim::Current);
    dimless("gain_ratio_ahp", c.neuron.gain_ratio_ahp);
    qty("t_pex", c.neuron.t_pex, Dim::Time);

    out << "\n[oracle]\n";
    qty("C", c.oracle.C, Dim::Capacitance);
    qty("g_L", c.oracle.g_L, Dim::Conductance);
    qty("E_L", c.oracle.E_L, Dim::Voltage);
    qty("Delta_T", c.oracle.Delta_T, Dim::Voltage);
    qty("V_T", c.oracle.V_T, Dim::Voltage);
    qty("a", c.oracle.a, Dim::Conductance);
    qty("tau_w", c.oracle.tau_w, Dim::Time);
    qty("b_increment", c.oracle.b_increment, Dim::Current);
    qty("V_reset", c.oracle.V_reset, Dim::Voltage);
    qty("V_peak", c.oracle.V_peak, Dim::Voltage);

    out << "\n[engine]\n";
    qty("duration", c.engine.duration, Dim::Time);
    qty("dt_max", c.engine.dt_max, Dim::Time);
    qty("crossing_tolerance", c.engine.crossing_tolerance, Dim::Time);
    qty("sample_interval", c.engine.sample_interval, Dim::Time);
    out << "seed = " << c.engine.seed << "\n";
    qty("ack_delay", c.engine.receiver.ack_delay, Dim::Time);
    qty("ack_release_delay", c.engine.receiver.ack_release_delay, Dim::Time);

    out << "\n[mismatch]\n";
    out << "distribution = " << c.mismatch_distribution << "\n";
    out << "seed = " << c.mismatch.seed << "\n";
    for (const auto& [name, sigma] : c.mismatch.sigma)
        out << name << " = " << format_double(sigma) << "\n";

    out << "\n[power]\n";
    qty("P_static", c.power.p_static_w, Dim::Power);
    qty("E_switch", c.power.e_switch_j, Dim::Energy);

    out << "\n[network]\n";
    for (const auto& id : c.neuron_ids) out << "neuron " << id << "\n";
    for (const auto& s : c.synapses) {
        out << "synapse " << s.id;
        if (!s.target.empty()) out << " -> " << s.target;
        out << "\n";
    }
    for (const auto& e : c.edges)
        out << e.src << " -> " << e.dst << " : " << format_double(e.weight) << "\n";

    out << "\n[stimulus]\n";
    for (const auto& t : c.trains)
        out << "train " << t.synapse << " rate=" << format_double(t.rate_hz)
            << "Hz start=" << format_double(t.start) << "s stop="
            << format_double(t.stop) << "s kind=" << (t.poisson ? "poisson" : "regular")
            << " weight=" << format_double(t.weight) << "\n";
    for (const auto& d : c.dcs)
        out << "dc " << d.neuron << " amp=" << format_double(d.amplitude)
            << "A start=" << format_double(d.start) << "s stop="
            << format_double(d.stop) << "s\n";

    return out.str();
}

BuiltNetwork build_network(const Config& cfg) {
    BuiltNetwork b;
    b.net.constants = cfg.constants;
    b.net.leak = cfg.leak;
    for (const auto& id : cfg.neuron_ids) {
        if (b.neuron_index.count(id))
            throw ConfigError("config: duplicate neuron id '" + id + "'");
        b.neuron_index[id] = b.net.neurons.size();
        b.net.neurons.push_back({id, cfg.neuron});
    }
    for (const auto& s : cfg.synapses) {
        if (b.synapse_index.count(s.id) || b.neuron_index.count(s.id))
            throw ConfigError("config: duplicate instance id '" + s.id + "'");
        SynapseInstance inst;
        inst.id = s.id;
        inst.params = cfg.synapse;
        if (s.target.empty()) {
            if (!b.net.neurons.empty())
                throw ConfigError("config: synapse '" + s.id +
                                  "' needs a target neuron in a network with neurons");
            inst.target = 0;
        } else {
            auto it = b.neuron_index.find(s.target);
            if (it == b.neuron_index.end())
                throw ConfigError("config: synapse '" + s.id +
                                  "' targets unknown neuron '" + s.target + "'");
            inst.target = it->second;
        }
        b.synapse_index[s.id] = b.net.synapses.size();
        b.net.synapses.push_back(inst);
    }
    if (!cfg.edges.empty()) {
        b.net.connectivity.fanout.resize(b.net.neurons.size());
        for (const auto& e : cfg.edges) {
            auto src = b.neuron_index.find(e.src);
            if (src == b.neuron_index.end())
                throw ConfigError("config: edge source '" + e.src + "' is not a neuron");
            auto dst = b.synapse_index.find(e.dst);
            if (dst == b.synapse_index.end())
                throw ConfigError("config: edge target '" + e.dst + "' is not a synapse");
            if (!(e.weight > 0.0))
                throw ConfigError("config: edge weight must be > 0");
            b.net.connectivity.fanout[src->second].push_back({dst->second, e.weight});
        }
    }
    return b;
}

StimulusProgram build_stimulus(const Config& cfg, const BuiltNetwork& built) {
    StimulusProgram prog;
    for (const auto& t : cfg.trains) {
        auto it = built.synapse_index.find(t.synapse);
        if (it == built.synapse_index.end())
            throw ConfigError("config: train targets unknown synapse '" + t.synapse + "'");
        TrainStimulus ts;
        ts.synapse = it->second;
        ts.rate_hz = t.rate_hz;
        ts.start = t.start;
        ts.stop = t.stop;
        ts.poisson = t.poisson;
        ts.weight = t.weight;
        prog.trains.push_back(ts);
    }
    for (const auto& d : cfg.dcs) {
        auto it = built.neuron_index.find(d.neuron);
        if (it == built.neuron_index.end())
            throw ConfigError("config: dc targets unknown neuron '" + d.neuron + "'");
        StepStimulus ss;
        ss.neuron = it->second;
        ss.amplitude = d.amplitude;
        ss.start = d.start;
        ss.stop = d.stop;
        prog.steps.push_back(ss);
    }
    return prog;
}

}  // namespace neurosim
