#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsim/config.hpp"
#include "prpsim/metrics.hpp"
#include "prpsim/simulation.hpp"

namespace prpsim {

// Cross-product experiment grid: axes x seeds, every run independent.
struct SweepSpec {
    ScenarioConfig base;
    std::vector<int> node_counts;
    std::vector<int> flow_counts;
    std::vector<KPolicy> k_policies;
    std::vector<Protocol> protocols;
    std::vector<std::uint64_t> seeds;

    std::size_t run_count() const;
};

struct SweepRow {
    int node_count = 0;
    int flow_count = 0;
    std::string k_policy;
    Protocol protocol = Protocol::Prp;
    std::uint64_t seed = 0;
    Aggregate agg;
};

// Executes every run (up to `parallelism` concurrently) and returns rows
// sorted by (node_count, flow_count, k_policy, protocol, seed), so the
// output never depends on execution order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned parallelism);

std::string csv_header();
std::string csv_row(const SweepRow& row);
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string records_csv_header();
std::string record_csv_row(const DiscoveryRecord& rec);

SweepSpec sweep_from_json_text(const std::string& text);
SweepSpec load_sweep(const std::string& path);

// Built-in grids reproducing the published experiments.
std::vector<std::string> preset_names();
SweepSpec preset(const std::string& name);  // throws ConfigError listing the names

}  // namespace prpsim
