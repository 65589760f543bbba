#include "prpsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace prpsim {

using nlohmann::json;

std::size_t SweepSpec::run_count() const {
    return node_counts.size() * flow_counts.size() * k_policies.size() * protocols.size() *
           seeds.size();
}

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string opt_fmt(const std::optional<double>& v, const char* spec) {
    return v ? fmt(*v, spec) : "nan";
}

struct RunKey {
    int node_count;
    int flow_count;
    KPolicy k_policy;
    Protocol protocol;
    std::uint64_t seed;
};

ScenarioConfig apply_key(const ScenarioConfig& base, const RunKey& key) {
    ScenarioConfig cfg = base;
    cfg.node_count = key.node_count;
    cfg.flow_count = key.flow_count;
    cfg.k_policy = key.k_policy;
    cfg.protocol = key.protocol;
    cfg.rng_seed = key.seed;
    return cfg;
}

std::string key_str(const RunKey& key) {
    std::ostringstream os;
    os << "node_count=" << key.node_count << " flow_count=" << key.flow_count
       << " k_policy=" << key.k_policy.str() << " protocol=" << protocol_str(key.protocol)
       << " seed=" << key.seed;
    return os.str();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned parallelism) {
    std::vector<RunKey> keys;
    keys.reserve(spec.run_count());
    for (int nc : spec.node_counts) {
        for (int fc : spec.flow_counts) {
            for (const KPolicy& kp : spec.k_policies) {
                for (Protocol p : spec.protocols) {
                    for (std::uint64_t seed : spec.seeds) {
                        keys.push_back(RunKey{nc, fc, kp, p, seed});
                    }
                }
            }
        }
    }
    // validate up front so a bad grid fails before any run starts
    for (const RunKey& key : keys) {
        try {
            apply_key(spec.base, key).validate();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " [" + key_str(key) + "]");
        }
    }

    std::vector<SweepRow> rows(keys.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= keys.size()) return;
            {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (failure) return;
            }
            try {
                const RunKey& key = keys[i];
                RunResult result = run_scenario(apply_key(spec.base, key));
                rows[i] = SweepRow{key.node_count, key.flow_count, key.k_policy.str(),
                                   key.protocol, key.seed, result.agg};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) {
                    try {
                        std::throw_with_nested(
                            std::runtime_error("run failed: " + key_str(keys[i])));
                    } catch (...) {
                        failure = std::current_exception();
                    }
                }
                return;
            }
        }
    };
    const unsigned threads = std::max(1u, parallelism);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.node_count, a.flow_count, a.k_policy, a.protocol, a.seed) <
               std::tie(b.node_count, b.flow_count, b.k_policy, b.protocol, b.seed);
    });
    return rows;
}

std::string csv_header() {
    return "node_count,flow_count,k_policy,protocol,seed,discoveries,success_rate,mean_srb,"
           "mean_latency_s,mean_path_stretch";
}

std::string csv_row(const SweepRow& row) {
    std::ostringstream os;
    os << row.node_count << ',' << row.flow_count << ',' << row.k_policy << ','
       << protocol_str(row.protocol) << ',' << row.seed << ',' << row.agg.discoveries << ','
       << fmt(row.agg.success_rate, "%.6f") << ',' << opt_fmt(row.agg.mean_srb, "%.6f") << ','
       << opt_fmt(row.agg.mean_latency_s, "%.9f") << ','
       << opt_fmt(row.agg.mean_path_stretch, "%.6f");
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const SweepRow& row : rows) os << csv_row(row) << '\n';
    return os.str();
}

std::string records_csv_header() {
    return "origin,target,seq,start_s,end_s,succeeded,r,t,srb,path_hops,oracle_hops";
}

std::string record_csv_row(const DiscoveryRecord& rec) {
    std::ostringstream os;
    os << rec.origin << ',' << rec.target << ',' << rec.seq << ',' << fmt(rec.start, "%.9f")
       << ',' << fmt(rec.end, "%.9f") << ',' << (rec.succeeded ? 1 : 0) << ',' << rec.r << ','
       << rec.t << ',' << (rec.used_rreq && rec.r >= 1 ? fmt(srb(rec.r, rec.t), "%.6f") : "nan")
       << ',' << rec.path_hops << ',' << rec.oracle_hops;
    return os.str();
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) {
            if (it.key() == a) ok = true;
        }
        if (!ok) throw ConfigError("unknown field: " + where + it.key());
    }
}

KPolicy k_policy_from_json(const json& j) {
    // round-trip through the scenario parser for identical validation
    json wrapper = {{"k_policy", j}};
    return scenario_from_json_text(wrapper.dump()).k_policy;
}

}  // namespace

SweepSpec sweep_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep spec: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("sweep spec: top level must be an object");
    reject_unknown_keys(root, "", {"base", "axes", "seeds"});
    SweepSpec spec;
    if (root.contains("base")) {
        spec.base = scenario_from_json_text(root["base"].dump());
    }
    spec.node_counts = {spec.base.node_count};
    spec.flow_counts = {spec.base.flow_count};
    spec.k_policies = {spec.base.k_policy};
    spec.protocols = {spec.base.protocol};
    spec.seeds = {spec.base.rng_seed};
    if (root.contains("axes")) {
        const json& axes = root["axes"];
        reject_unknown_keys(axes, "axes.", {"node_count", "flow_count", "k_policy", "protocol"});
        if (axes.contains("node_count")) {
            spec.node_counts = axes["node_count"].get<std::vector<int>>();
        }
        if (axes.contains("flow_count")) {
            spec.flow_counts = axes["flow_count"].get<std::vector<int>>();
        }
        if (axes.contains("k_policy")) {
            spec.k_policies.clear();
            for (const json& j : axes["k_policy"]) spec.k_policies.push_back(k_policy_from_json(j));
        }
        if (axes.contains("protocol")) {
            spec.protocols.clear();
            for (const json& j : axes["protocol"]) {
                spec.protocols.push_back(protocol_from(j.get<std::string>()));
            }
        }
    }
    if (root.contains("seeds")) {
        spec.seeds = root["seeds"].get<std::vector<std::uint64_t>>();
    }
    if (spec.node_counts.empty() || spec.flow_counts.empty() || spec.k_policies.empty() ||
        spec.protocols.empty() || spec.seeds.empty()) {
        throw ConfigError("sweep spec: every axis needs at least one value");
    }
    return spec;
}

SweepSpec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sweep_from_json_text(buf.str());
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig5_6", "fig7", "fig8"};
}

SweepSpec preset(const std::string& name) {
    SweepSpec spec;  // base carries the Table-1 defaults
    spec.node_counts = {50, 75, 100, 125};
    spec.flow_counts = {1};
    spec.k_policies = {KPolicy::random(3, 7)};
    spec.protocols = {Protocol::Prp, Protocol::Flood};
    spec.seeds = {1, 2, 3, 4, 5};
    if (name == "fig3") {
        // reachability parameter sweep
        spec.k_policies = {KPolicy::fixed(2), KPolicy::fixed(3), KPolicy::fixed(5),
                           KPolicy::fixed(7), KPolicy::fixed(9), KPolicy::random(3, 9)};
        spec.protocols = {Protocol::Prp};
        return spec;
    }
    if (name == "fig5_6") {
        // density sweep, single flow
        return spec;
    }
    if (name == "fig7") {
        // traffic density sweep
        spec.flow_counts = {2, 3, 5};
        return spec;
    }
    if (name == "fig8") {
        // latency comparison
        spec.seeds = {1, 2, 3};
        return spec;
    }
    std::string names;
    for (const std::string& n : preset_names()) {
        if (!names.empty()) names += ", ";
        names += n;
    }
    throw ConfigError("unknown preset \"" + name + "\"; available: " + names);
}

}  // namespace prpsim
