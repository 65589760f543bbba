#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "prpsim/types.hpp"

namespace prpsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Protocol { Prp, Flood };

std::string protocol_str(Protocol p);
Protocol protocol_from(const std::string& name);  // throws ConfigError

struct KPolicy {
    enum class Kind { Fixed, RandomUniform };
    Kind kind = Kind::RandomUniform;
    int k = 0;   // Fixed
    int lo = 3;  // RandomUniform
    int hi = 7;

    static KPolicy fixed(int k) { return KPolicy{Kind::Fixed, k, 0, 0}; }
    static KPolicy random(int lo, int hi) { return KPolicy{Kind::RandomUniform, 0, lo, hi}; }
    std::string str() const;  // "fixed(5)" / "random(3,7)"
};

struct MobilityConfig {
    enum class Model { Static, RandomWaypoint, RestrictedRandomWalk };
    Model model = Model::RandomWaypoint;
    // random waypoint
    double max_speed_mps = 20.0;
    double pause_s = 0.0;
    // restricted random walk: per-tick step length is drawn uniform in
    // (0, min(step_mps * dt, max_step_m)], heading uniform, edges reflect
    double step_mps = 20.0;
    double max_step_m = 5.0;
};

struct ScenarioConfig {
    double map_width_m = 350.0;
    double map_height_m = 350.0;
    int node_count = 50;
    double sim_duration_s = 900.0;

    // radio
    double tx_power_dbm = 20.0;
    // Default budget of ~80.054 dB at 2400 MHz gives a 100 m radio range.
    double rx_sensitivity_dbm = -60.05422484;
    double frequency_mhz = 2400.0;
    double bandwidth_bps = 11.0e6;
    double channel_delay_s = 10.0e-6;
    double loss_prob = 0.0;

    double hello_period_s = 1.0;
    KPolicy k_policy = KPolicy::random(3, 7);
    MobilityConfig mobility;
    int flow_count = 1;
    double discovery_timeout_s = 0.5;
    std::uint64_t rng_seed = 1;
    Protocol protocol = Protocol::Prp;

    // Fixed(1) makes PRP degenerate to flooding. Only test code may turn
    // this on; it is never readable from a config file.
    bool allow_degenerate_k = false;

    double neighbor_ttl_s() const { return 2.0 * hello_period_s; }
    double max_link_budget_db() const { return tx_power_dbm - rx_sensitivity_dbm; }

    void validate() const;  // throws ConfigError naming the offending field
};

// Strict parsers: unknown keys are rejected with the key name in the message.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace prpsim
