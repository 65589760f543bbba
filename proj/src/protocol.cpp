#include "prpsim/protocol.hpp"

#include <algorithm>

#include "prpsim/radio.hpp"

namespace prpsim {

void NeighborhoodVector::upsert(NodeId n, double distance_m, SimTime now) {
    std::erase_if(entries_, [n](const NeighborEntry& e) { return e.neighbor == n; });
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const NeighborEntry& e) {
        return e.distance_m < distance_m || (e.distance_m == distance_m && e.neighbor > n);
    });
    entries_.insert(it, NeighborEntry{n, distance_m, now});
}

void NeighborhoodVector::purge(SimTime now, double ttl_s) {
    std::erase_if(entries_, [&](const NeighborEntry& e) { return now - e.last_heard > ttl_s; });
}

bool NeighborhoodVector::contains(NodeId n) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [n](const NeighborEntry& e) { return e.neighbor == n; });
}

int choose_k(const KPolicy& policy, RngStream& rng) {
    if (policy.kind == KPolicy::Kind::Fixed) return policy.k;
    return static_cast<int>(rng.uniform_int(policy.lo, policy.hi));
}

ForwarderChoice select_forwarders(const NeighborhoodVector& nv, int k,
                                  const std::vector<NodeId>& exclude) {
    ForwarderChoice out;
    std::vector<NodeId> eligible;  // farthest first, table order
    for (const NeighborEntry& e : nv.entries()) {
        if (std::find(exclude.begin(), exclude.end(), e.neighbor) == exclude.end()) {
            eligible.push_back(e.neighbor);
        }
    }
    if (eligible.empty()) return out;  // dead end
    const std::size_t quota = eligible.size() / static_cast<std::size_t>(k);
    if (quota >= 1) {
        out.chosen.assign(eligible.begin(), eligible.begin() + quota);
    } else {
        // n/K rounded to zero: fall back to the single farthest neighbor and
        // let it through even if some earlier RREQ copy blocked it
        out.chosen.push_back(eligible.front());
        out.unblock = true;
    }
    return out;
}

bool on_hello(NodeProtocolState& node, NodeId sender, double rx_power_dbm,
              const ScenarioConfig& cfg, SimTime now) {
    const LinkBudget budget{cfg.tx_power_dbm, rx_power_dbm, cfg.frequency_mhz};
    node.neighbors.upsert(sender, distance_from_rssi(budget) * 1000.0, now);
    const bool first = !node.heard_from[sender];
    node.heard_from[sender] = true;
    return first;
}

namespace {

bool path_has_duplicates(const std::vector<NodeId>& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (std::size_t j = i + 1; j < path.size(); ++j) {
            if (path[i] == path[j]) return true;
        }
    }
    return false;
}

std::optional<RrepPacket> target_reply(NodeProtocolState& node, const RreqPacket& rreq) {
    DiscoveryStatus& st = node.discoveries[discovery_key(rreq.origin, rreq.seq)];
    if (st == DiscoveryStatus::Forwarded) return std::nullopt;  // already replied
    st = DiscoveryStatus::Forwarded;
    RrepPacket rep{rreq.origin, rreq.target, rreq.seq, rreq.path, 0};
    rep.path.push_back(node.id);
    rep.cursor = rep.path.size() - 1;
    return rep;
}

}  // namespace

ProtocolActions prp_on_rreq(NodeProtocolState& node, const RreqPacket& rreq,
                            const ScenarioConfig& cfg, RngStream& k_rng, SimTime now) {
    ProtocolActions out;
    if (rreq.path.empty() || rreq.path.front() != rreq.origin || path_has_duplicates(rreq.path)) {
        out.malformed = true;
        return out;
    }
    if (node.id == rreq.target) {
        out.reply = target_reply(node, rreq);
        return out;
    }
    DiscoveryStatus& st = node.discoveries[discovery_key(rreq.origin, rreq.seq)];
    const bool listed = std::find(rreq.forwarders.begin(), rreq.forwarders.end(), node.id) !=
                        rreq.forwarders.end();
    if (!listed && !rreq.unblock) {
        if (st == DiscoveryStatus::Unseen) st = DiscoveryStatus::Blocked;
        return out;
    }
    if (st == DiscoveryStatus::Forwarded) return out;  // duplicate suppression
    if (st == DiscoveryStatus::Blocked && !rreq.unblock) return out;

    node.neighbors.purge(now, cfg.neighbor_ttl_s());
    // Under the test-only Fixed(1) policy every eligible neighbor is chosen
    // anyway (the target included), so the unicast shortcut is skipped to
    // keep the transmission set identical to blind flooding.
    const bool select_all =
        cfg.k_policy.kind == KPolicy::Kind::Fixed && cfg.k_policy.k == 1;
    if (!select_all && node.neighbors.contains(rreq.target)) {
        RreqPacket next = rreq;
        next.path.push_back(node.id);
        next.forwarders = {rreq.target};
        next.unblock = false;
        out.unicasts.emplace_back(rreq.target, std::move(next));
        st = DiscoveryStatus::Forwarded;
        return out;
    }
    const int k = choose_k(cfg.k_policy, k_rng);
    std::vector<NodeId> exclude = rreq.path;
    exclude.push_back(node.id);
    ForwarderChoice fc = select_forwarders(node.neighbors, k, exclude);
    st = DiscoveryStatus::Forwarded;
    if (fc.chosen.empty()) return out;  // dead end
    RreqPacket next = rreq;
    next.path.push_back(node.id);
    next.forwarders = std::move(fc.chosen);
    next.unblock = fc.unblock;
    out.broadcasts.push_back(std::move(next));
    return out;
}

ProtocolActions flood_on_rreq(NodeProtocolState& node, const RreqPacket& rreq, SimTime) {
    ProtocolActions out;
    if (rreq.path.empty() || rreq.path.front() != rreq.origin || path_has_duplicates(rreq.path)) {
        out.malformed = true;
        return out;
    }
    if (node.id == rreq.target) {
        out.reply = target_reply(node, rreq);
        return out;
    }
    DiscoveryStatus& st = node.discoveries[discovery_key(rreq.origin, rreq.seq)];
    if (st != DiscoveryStatus::Unseen) return out;  // rebroadcast only once
    st = DiscoveryStatus::Forwarded;
    RreqPacket next = rreq;
    next.path.push_back(node.id);
    next.forwarders.clear();
    next.unblock = false;
    out.broadcasts.push_back(std::move(next));
    return out;
}

}  // namespace prpsim
