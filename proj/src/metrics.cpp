#include "prpsim/metrics.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "prpsim/radio.hpp"

namespace prpsim {

double srb(int r, int t) {
    if (r < 1) throw std::domain_error("srb: undefined for r < 1");
    if (t < 0 || t > r) throw std::domain_error("srb: t must be in [0, r]");
    return static_cast<double>(r - t) / static_cast<double>(r);
}

double success_rate(const std::vector<DiscoveryRecord>& records) {
    if (records.empty()) throw std::domain_error("success_rate: no records");
    std::size_t succeeded = 0;
    for (const auto& rec : records) {
        if (rec.succeeded) ++succeeded;
    }
    return static_cast<double>(succeeded) / static_cast<double>(records.size());
}

double latency(const DiscoveryRecord& record) {
    if (!record.succeeded) throw std::logic_error("latency: record did not succeed");
    return record.end - record.start;
}

Adjacency connectivity_graph(const std::vector<Position>& pos, const ScenarioConfig& cfg) {
    Adjacency adj(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (in_range(pos[i], pos[j], cfg)) {
                adj[i].push_back(static_cast<NodeId>(j));
                adj[j].push_back(static_cast<NodeId>(i));
            }
        }
    }
    return adj;
}

int bfs_shortest_hops(const Adjacency& adj, NodeId src, NodeId dst) {
    if (src == dst) return 0;
    std::vector<int> dist(adj.size(), -1);
    std::deque<NodeId> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                if (v == dst) return dist[v];
                queue.push_back(v);
            }
        }
    }
    return -1;
}

bool is_connected(const Adjacency& adj) {
    if (adj.empty()) return true;
    std::vector<char> seen(adj.size(), 0);
    std::deque<NodeId> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                queue.push_back(v);
            }
        }
    }
    return count == adj.size();
}

Aggregate aggregate(const std::vector<DiscoveryRecord>& records) {
    Aggregate agg;
    agg.discoveries = records.size();
    if (records.empty()) return agg;
    std::size_t succeeded = 0;
    double srb_sum = 0.0, lat_sum = 0.0, stretch_sum = 0.0;
    std::size_t srb_n = 0, lat_n = 0, stretch_n = 0;
    for (const auto& rec : records) {
        if (rec.succeeded) {
            ++succeeded;
            lat_sum += rec.end - rec.start;
            ++lat_n;
        }
        if (rec.used_rreq && rec.r >= 1) {
            srb_sum += srb(rec.r, rec.t);
            ++srb_n;
        } else {
            ++agg.srb_excluded;
        }
        if (rec.succeeded && rec.used_rreq && rec.path_hops >= 1 && rec.oracle_hops >= 1) {
            stretch_sum += static_cast<double>(rec.path_hops) / rec.oracle_hops;
            ++stretch_n;
        }
    }
    agg.success_rate = static_cast<double>(succeeded) / static_cast<double>(records.size());
    if (srb_n > 0) agg.mean_srb = srb_sum / static_cast<double>(srb_n);
    if (lat_n > 0) agg.mean_latency_s = lat_sum / static_cast<double>(lat_n);
    if (stretch_n > 0) agg.mean_path_stretch = stretch_sum / static_cast<double>(stretch_n);
    return agg;
}

MeanCi mean_ci(const std::vector<double>& samples) {
    MeanCi out;
    if (samples.empty()) return out;
    double sum = 0.0;
    for (double s : samples) sum += s;
    out.mean = sum / static_cast<double>(samples.size());
    if (samples.size() < 2) return out;
    double ss = 0.0;
    for (double s : samples) ss += (s - out.mean) * (s - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    out.half_width = 1.96 * sd / std::sqrt(static_cast<double>(samples.size()));
    return out;
}

}  // namespace prpsim
