#include "prpsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace prpsim {

using nlohmann::json;

std::string protocol_str(Protocol p) {
    return p == Protocol::Prp ? "prp" : "flood";
}

Protocol protocol_from(const std::string& name) {
    if (name == "prp") return Protocol::Prp;
    if (name == "flood") return Protocol::Flood;
    throw ConfigError("protocol: must be \"prp\" or \"flood\", got \"" + name + "\"");
}

std::string KPolicy::str() const {
    std::ostringstream os;
    if (kind == Kind::Fixed) {
        os << "fixed(" << k << ")";
    } else {
        os << "random(" << lo << "," << hi << ")";
    }
    return os.str();
}

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (map_width_m <= 0.0) fail("map.width_m: must be positive");
    if (map_height_m <= 0.0) fail("map.height_m: must be positive");
    if (node_count < 2) fail("node_count: must be >= 2");
    if (sim_duration_s <= 0.0) fail("sim_duration_s: must be positive");
    if (frequency_mhz <= 0.0) fail("radio.frequency_mhz: must be positive");
    if (bandwidth_bps <= 0.0) fail("radio.bandwidth_bps: must be positive");
    if (channel_delay_s < 0.0) fail("radio.channel_delay_s: must be non-negative");
    if (loss_prob < 0.0 || loss_prob > 1.0) fail("radio.loss_prob: must be in [0,1]");
    if (max_link_budget_db() <= 0.0) {
        fail("radio.rx_sensitivity_dbm: must be below tx_power_dbm");
    }
    if (hello_period_s <= 0.0) fail("hello_period_s: must be positive");
    if (flow_count < 1) fail("flow_count: must be >= 1");
    if (flow_count > node_count / 2) fail("flow_count: must be <= node_count / 2");
    if (discovery_timeout_s <= 0.0) fail("discovery_timeout_s: must be positive");
    if (k_policy.kind == KPolicy::Kind::Fixed) {
        const int min_k = allow_degenerate_k ? 1 : 2;
        if (k_policy.k < min_k) fail("k_policy.k: must be >= 2");
    } else {
        if (k_policy.lo < 2) fail("k_policy.lo: must be >= 2");
        if (k_policy.lo > k_policy.hi) fail("k_policy.hi: must be >= k_policy.lo");
    }
    if (mobility.model == MobilityConfig::Model::RandomWaypoint) {
        if (mobility.max_speed_mps <= 0.0) fail("mobility.max_speed_mps: must be positive");
        if (mobility.pause_s < 0.0) fail("mobility.pause_s: must be non-negative");
    }
    if (mobility.model == MobilityConfig::Model::RestrictedRandomWalk) {
        if (mobility.step_mps <= 0.0) fail("mobility.step_mps: must be positive");
        if (mobility.max_step_m <= 0.0) fail("mobility.max_step_m: must be positive");
    }
}

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError("unknown field: " + where + it.key());
        }
    }
}

double get_num(const json& obj, const std::string& where, const std::string& key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(where + key + ": must be a number");
    return obj[key].get<double>();
}

KPolicy parse_k_policy(const json& obj) {
    reject_unknown(obj, "k_policy.", {"type", "k", "lo", "hi"});
    if (!obj.contains("type") || !obj["type"].is_string()) {
        throw ConfigError("k_policy.type: must be \"fixed\" or \"random_uniform\"");
    }
    const std::string type = obj["type"].get<std::string>();
    if (type == "fixed") {
        if (!obj.contains("k")) throw ConfigError("k_policy.k: required for type \"fixed\"");
        return KPolicy::fixed(static_cast<int>(get_num(obj, "k_policy.", "k", 0)));
    }
    if (type == "random_uniform") {
        KPolicy p = KPolicy::random(3, 7);
        p.lo = static_cast<int>(get_num(obj, "k_policy.", "lo", 3));
        p.hi = static_cast<int>(get_num(obj, "k_policy.", "hi", 7));
        return p;
    }
    throw ConfigError("k_policy.type: must be \"fixed\" or \"random_uniform\", got \"" + type +
                      "\"");
}

MobilityConfig parse_mobility(const json& obj, const MobilityConfig& defaults) {
    reject_unknown(obj, "mobility.",
                   {"model", "max_speed_mps", "pause_s", "step_mps", "max_step_m"});
    MobilityConfig m = defaults;
    if (obj.contains("model")) {
        const std::string model = obj["model"].get<std::string>();
        if (model == "static") {
            m.model = MobilityConfig::Model::Static;
        } else if (model == "random_waypoint") {
            m.model = MobilityConfig::Model::RandomWaypoint;
        } else if (model == "restricted_random_walk") {
            m.model = MobilityConfig::Model::RestrictedRandomWalk;
        } else {
            throw ConfigError("mobility.model: unknown model \"" + model + "\"");
        }
    }
    m.max_speed_mps = get_num(obj, "mobility.", "max_speed_mps", m.max_speed_mps);
    m.pause_s = get_num(obj, "mobility.", "pause_s", m.pause_s);
    m.step_mps = get_num(obj, "mobility.", "step_mps", m.step_mps);
    m.max_step_m = get_num(obj, "mobility.", "max_step_m", m.max_step_m);
    return m;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& root) {
    if (!root.is_object()) throw ConfigError("scenario config: top level must be an object");
    reject_unknown(root, "",
                   {"map", "node_count", "sim_duration_s", "hello_period_s", "flow_count",
                    "discovery_timeout_s", "rng_seed", "protocol", "radio", "k_policy",
                    "mobility"});
    ScenarioConfig cfg;
    if (root.contains("map")) {
        const json& m = root["map"];
        reject_unknown(m, "map.", {"width_m", "height_m"});
        cfg.map_width_m = get_num(m, "map.", "width_m", cfg.map_width_m);
        cfg.map_height_m = get_num(m, "map.", "height_m", cfg.map_height_m);
    }
    cfg.node_count = static_cast<int>(get_num(root, "", "node_count", cfg.node_count));
    cfg.sim_duration_s = get_num(root, "", "sim_duration_s", cfg.sim_duration_s);
    cfg.hello_period_s = get_num(root, "", "hello_period_s", cfg.hello_period_s);
    cfg.flow_count = static_cast<int>(get_num(root, "", "flow_count", cfg.flow_count));
    cfg.discovery_timeout_s = get_num(root, "", "discovery_timeout_s", cfg.discovery_timeout_s);
    if (root.contains("rng_seed")) {
        if (!root["rng_seed"].is_number_integer() && !root["rng_seed"].is_number_unsigned()) {
            throw ConfigError("rng_seed: must be an integer");
        }
        cfg.rng_seed = root["rng_seed"].get<std::uint64_t>();
    }
    if (root.contains("protocol")) {
        cfg.protocol = protocol_from(root["protocol"].get<std::string>());
    }
    if (root.contains("radio")) {
        const json& r = root["radio"];
        reject_unknown(r, "radio.",
                       {"tx_power_dbm", "rx_sensitivity_dbm", "frequency_mhz", "bandwidth_bps",
                        "channel_delay_s", "loss_prob"});
        cfg.tx_power_dbm = get_num(r, "radio.", "tx_power_dbm", cfg.tx_power_dbm);
        cfg.rx_sensitivity_dbm = get_num(r, "radio.", "rx_sensitivity_dbm", cfg.rx_sensitivity_dbm);
        cfg.frequency_mhz = get_num(r, "radio.", "frequency_mhz", cfg.frequency_mhz);
        cfg.bandwidth_bps = get_num(r, "radio.", "bandwidth_bps", cfg.bandwidth_bps);
        cfg.channel_delay_s = get_num(r, "radio.", "channel_delay_s", cfg.channel_delay_s);
        cfg.loss_prob = get_num(r, "radio.", "loss_prob", cfg.loss_prob);
    }
    if (root.contains("k_policy")) cfg.k_policy = parse_k_policy(root["k_policy"]);
    if (root.contains("mobility")) cfg.mobility = parse_mobility(root["mobility"], cfg.mobility);
    cfg.validate();
    return cfg;
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario config: ") + e.what());
    }
    return scenario_from_json(root);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str());
}

}  // namespace prpsim
