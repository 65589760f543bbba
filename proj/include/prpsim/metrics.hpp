#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prpsim/config.hpp"
#include "prpsim/types.hpp"

namespace prpsim {

// Raw material of every metric: one entry per route discovery.
struct DiscoveryRecord {
    NodeId origin = 0;
    NodeId target = 0;
    std::uint32_t seq = 0;
    SimTime start = 0.0;
    SimTime end = 0.0;
    std::vector<char> received;     // distinct nodes that received the RREQ
    std::vector<char> transmitted;  // distinct nodes that transmitted it
    int r = 0;
    int t = 0;
    bool done = false;
    bool succeeded = false;
    bool used_rreq = false;  // false when the target was already a one-hop neighbor
    int path_hops = -1;      // -1: none
    int oracle_hops = -1;    // BFS at discovery start; -1: unreachable
};

// (r - t) / r. Throws std::domain_error when r < 1 or t outside [0, r].
double srb(int r, int t);

// Throws std::domain_error on an empty record set.
double success_rate(const std::vector<DiscoveryRecord>& records);

// end - start. Throws std::logic_error on a failed record.
double latency(const DiscoveryRecord& record);

using Adjacency = std::vector<std::vector<NodeId>>;

// Symmetric in_range graph for a position snapshot.
Adjacency connectivity_graph(const std::vector<Position>& pos, const ScenarioConfig& cfg);

// Exact minimum hop count; -1 when unreachable.
int bfs_shortest_hops(const Adjacency& adj, NodeId src, NodeId dst);

bool is_connected(const Adjacency& adj);

struct Aggregate {
    std::size_t discoveries = 0;
    double success_rate = 0.0;
    std::optional<double> mean_srb;
    std::optional<double> mean_latency_s;
    std::optional<double> mean_path_stretch;
    // discoveries with no RREQ broadcast (r = 0), excluded from SRB/stretch
    std::size_t srb_excluded = 0;
};

// Order-independent aggregation over one run's records.
Aggregate aggregate(const std::vector<DiscoveryRecord>& records);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // 95% normal approximation
};

MeanCi mean_ci(const std::vector<double>& samples);

}  // namespace prpsim
