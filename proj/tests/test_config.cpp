// Configuration: SI quantity parsing, INI round-tripping, overrides, and
// network/stimulus directive handling.
#include <string>

#include "doctest.h"
#include "neurosim/config.hpp"

using namespace neurosim;

TEST_CASE("SI suffixes parse across the prefix table") {
    CHECK(parse_si_current("100fA") == doctest::Approx(1e-13).epsilon(1e-12));
    CHECK(parse_si_current("2nA") == doctest::Approx(2e-9).epsilon(1e-12));
    CHECK(parse_si_current("1uA") == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(parse_si_current("3.5pA") == doctest::Approx(3.5e-12).epsilon(1e-12));
    CHECK(parse_si_current("1mA") == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(parse_si_time("10ms") == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(parse_si_time("100ns") == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(parse_si_time("2s") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(parse_si_frequency("2.1kHz") == doctest::Approx(2100.0).epsilon(1e-12));
    CHECK(parse_si_frequency("50Hz") == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(parse_si_energy("16pJ") == doctest::Approx(16e-12).epsilon(1e-12));
    CHECK(parse_si_energy("1J") == doctest::Approx(1.0).epsilon(1e-12));
    // Bare numbers are base SI units.
    CHECK(parse_si_current("1e-9") == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(parse_si_time("0.25") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(parse_si_dimensionless("4") == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("SI parsing rejects wrong dimensions and malformed text") {
    CHECK_THROWS_AS(parse_si_current("2s"), ConfigError);
    CHECK_THROWS_AS(parse_si_time("2A"), ConfigError);
    CHECK_THROWS_AS(parse_si_frequency("16pJ"), ConfigError);
    CHECK_THROWS_AS(parse_si_dimensionless("1nA"), ConfigError);
    CHECK_THROWS_AS(parse_si_current("abc"), ConfigError);
    CHECK_THROWS_AS(parse_si_current(""), ConfigError);
    CHECK_THROWS_AS(parse_si_current("1qA"), ConfigError);  // unknown prefix
}

TEST_CASE("default config prints and re-parses byte-identically") {
    const Config def = default_config();
    const std::string once = print_config(def);
    const Config re = parse_config(once);
    const std::string twice = print_config(re);
    CHECK(once == twice);
}

TEST_CASE("a customized config round-trips byte-identically") {
    Config cfg = default_config();
    apply_override(cfg, "synapse.I_gain", "1.3pA");
    apply_override(cfg, "neuron.I_norm", "150pA");
    apply_override(cfg, "engine.duration", "2.5s");
    apply_override(cfg, "mismatch.I_thr", "0.1");
    apply_override(cfg, "leak.enabled", "false");
    const std::string once = print_config(cfg);
    const std::string twice = print_config(parse_config(once));
    CHECK(once == twice);
}

TEST_CASE("unknown keys and sections carry their line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("[synapse]\nbogus = 1\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[florp]\n"), doctest::Contains("line 1"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[synapse]\nI_tau\n"),
                         doctest::Contains("line 2"), ConfigError);
}

TEST_CASE("dimension errors name the offending key") {
    Config cfg = default_config();
    CHECK_THROWS_AS(apply_override(cfg, "neuron.I_thr", "2s"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "engine.duration", "2nA"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "no_such.key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "neuron.bogus", "1"), ConfigError);
}

TEST_CASE("auto sentinels parse and print as the literal word") {
    Config cfg = default_config();
    apply_override(cfg, "synapse.I_gain", "2pA");
    CHECK(cfg.synapse.I_gain == doctest::Approx(2e-12).epsilon(1e-12));
    apply_override(cfg, "synapse.I_gain", "auto");
    CHECK(cfg.synapse.I_gain < 0.0);
    const std::string text = print_config(cfg);
    CHECK(text.find("I_gain = auto") != std::string::npos);
    CHECK(text.find("I_norm = auto") != std::string::npos);
}

TEST_CASE("boolean keys accept the usual spellings") {
    Config cfg = default_config();
    for (const char* no : {"false", "off", "0"}) {
        apply_override(cfg, "leak.enabled", no);
        CHECK_FALSE(cfg.leak.enabled);
    }
    for (const char* yes : {"true", "on", "1"}) {
        apply_override(cfg, "leak.enabled", yes);
        CHECK(cfg.leak.enabled);
    }
    CHECK_THROWS_AS(apply_override(cfg, "leak.enabled", "maybe"), ConfigError);
}

TEST_CASE("network and stimulus sections replace the defaults wholesale") {
    const std::string text =
        "[network]\n"
        "neuron a\n"
        "neuron b\n"
        "synapse s1 -> b\n"
        "a -> s1 : 2.5\n"
        "\n"
        "[stimulus]\n"
        "train s1 rate=100Hz start=0s stop=0.5s kind=poisson weight=2\n"
        "dc a amp=1.2nA start=0s stop=1s\n";
    const Config cfg = parse_config(text);
    REQUIRE(cfg.neuron_ids.size() == 2);
    CHECK(cfg.neuron_ids[0] == "a");
    CHECK(cfg.neuron_ids[1] == "b");
    REQUIRE(cfg.synapses.size() == 1);
    CHECK(cfg.synapses[0].id == "s1");
    CHECK(cfg.synapses[0].target == "b");
    REQUIRE(cfg.edges.size() == 1);
    CHECK(cfg.edges[0].src == "a");
    CHECK(cfg.edges[0].dst == "s1");
    CHECK(cfg.edges[0].weight == doctest::Approx(2.5).epsilon(1e-15));
    REQUIRE(cfg.trains.size() == 1);
    CHECK(cfg.trains[0].poisson);
    CHECK(cfg.trains[0].rate_hz == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(cfg.trains[0].weight == doctest::Approx(2.0).epsilon(1e-15));
    REQUIRE(cfg.dcs.size() == 1);
    CHECK(cfg.dcs[0].neuron == "a");
    CHECK(cfg.dcs[0].amplitude == doctest::Approx(1.2e-9).epsilon(1e-12));

    // Round-trips like everything else.
    CHECK(print_config(cfg) == print_config(parse_config(print_config(cfg))));
}

TEST_CASE("network and stimulus reject command-line overrides") {
    Config cfg = default_config();
    CHECK_THROWS_AS(apply_override(cfg, "network.neuron", "n1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "stimulus.train", "s0"), ConfigError);
}

TEST_CASE("malformed directives are rejected with line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("[network]\nneuron\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_AS(parse_config("[network]\nwidget w1\n"), ConfigError);
    // Dangling names parse (edges are symbolic) but fail at build time.
    CHECK_THROWS_AS(build_network(parse_config("[network]\nneuron n0\nn0 -> s9\n")),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config("[stimulus]\ntrain s0 rate=0Hz start=0s stop=1s\n"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("[stimulus]\ntrain s0 rate=50Hz start=1s stop=0.5s\n"),
        ConfigError);
    CHECK_THROWS_AS(parse_config("[stimulus]\ntrain s0 kind=sometimes\n"),
                    ConfigError);
}

TEST_CASE("mismatch section accepts only known parameter names") {
    Config cfg = default_config();
    apply_override(cfg, "mismatch.I_ref", "0.05");
    CHECK(cfg.mismatch.sigma.at("I_ref") == doctest::Approx(0.05).epsilon(1e-15));
    CHECK_THROWS_AS(apply_override(cfg, "mismatch.C_mem", "0.05"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "mismatch.I_thr", "-0.1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "mismatch.distribution", "normal"),
                    ConfigError);
    // The full advertised name list is accepted.
    for (const auto& name : mismatch_parameter_names())
        CHECK_NOTHROW(apply_override(cfg, "mismatch." + name, "0.01"));
}

TEST_CASE("comments, blank lines, and whitespace are tolerated") {
    const std::string text =
        "# top comment\n"
        "; alt comment\n"
        "\n"
        "[engine]\n"
        "  duration = 2s   # trailing comment\n"
        "seed=7\n";
    const Config cfg = parse_config(text);
    CHECK(cfg.engine.duration == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cfg.engine.seed == 7);
}

TEST_CASE("built networks resolve ids to dense indices") {
    const std::string text =
        "[network]\n"
        "neuron a\n"
        "neuron b\n"
        "synapse s1 -> b\n"
        "a -> s1 : 2\n"
        "[stimulus]\n"
        "dc a amp=2nA start=0s stop=1s\n"
        "train s1 rate=10Hz start=0s stop=1s\n";
    const Config cfg = parse_config(text);
    const BuiltNetwork built = build_network(cfg);
    REQUIRE(built.net.neurons.size() == 2);
    REQUIRE(built.net.synapses.size() == 1);
    CHECK(built.net.synapses[0].target == 1);  // "b"
    REQUIRE(built.net.connectivity.fanout.size() == 2);
    REQUIRE(built.net.connectivity.fanout[0].size() == 1);
    CHECK(built.net.connectivity.fanout[0][0].first == 0);
    CHECK(built.net.connectivity.fanout[0][0].second == doctest::Approx(2.0));
    CHECK(built.net.connectivity.fanout[1].empty());

    const StimulusProgram prog = build_stimulus(cfg, built);
    REQUIRE(prog.steps.size() == 1);
    CHECK(prog.steps[0].neuron == 0);
    REQUIRE(prog.trains.size() == 1);
    CHECK(prog.trains[0].synapse == 0);
}

TEST_CASE("network construction rejects duplicate and dangling ids") {
    CHECK_THROWS_AS(build_network(parse_config("[network]\nneuron a\nneuron a\n")),
                    ConfigError);
    CHECK_THROWS_AS(
        build_network(parse_config("[network]\nneuron a\nsynapse a -> a\n")),
        ConfigError);
    CHECK_THROWS_AS(
        build_network(parse_config("[network]\nneuron a\nsynapse s -> zz\n")),
        ConfigError);
    // Synapse without a target is only meaningful in a neuron-free bench.
    CHECK_NOTHROW(build_network(parse_config("[network]\nsynapse s\n")));
    CHECK_THROWS_AS(
        build_network(parse_config("[network]\nneuron a\nsynapse s\n")),
        ConfigError);
    // Edge weights must be positive.
    CHECK_THROWS_AS(
        build_network(parse_config(
            "[network]\nneuron a\nsynapse s -> a\na -> s : 0\n")),
        ConfigError);
}

TEST_CASE("missing config files are reported with their path") {
    CHECK_THROWS_WITH_AS(load_config_file("/no/such/file.ini"),
                         doctest::Contains("/no/such/file.ini"), ConfigError);
}

TEST_CASE("seed and engine keys apply through overrides") {
    Config cfg = default_config();
    apply_override(cfg, "engine.seed", "99");
    CHECK(cfg.engine.seed == 99);
    apply_override(cfg, "engine.dt_max", "5us");
    CHECK(cfg.engine.dt_max == doctest::Approx(5e-6).epsilon(1e-12));
    apply_override(cfg, "engine.ack_delay", "20ns");
    CHECK(cfg.engine.receiver.ack_delay == doctest::Approx(20e-9).epsilon(1e-12));
    CHECK_THROWS_AS(apply_override(cfg, "engine.seed", "-1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "engine.seed", "1.5"), ConfigError);
}