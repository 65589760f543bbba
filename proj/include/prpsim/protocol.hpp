#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prpsim/config.hpp"
#include "prpsim/rng.hpp"
#include "prpsim/types.hpp"

namespace prpsim {

// Canonical on-air sizes, used for serialization delay only.
inline constexpr std::size_t kHelloBytes = 64;
inline constexpr std::size_t kRreqBytes = 512;
inline constexpr std::size_t kRrepBytes = 512;

struct NeighborEntry {
    NodeId neighbor;
    double distance_m;  // from RSSI inversion
    SimTime last_heard;
};

// One-hop neighbor table, kept sorted farthest-first so the head of the
// list is always the rebroadcast candidate set.
class NeighborhoodVector {
  public:
    void upsert(NodeId n, double distance_m, SimTime now);
    void purge(SimTime now, double ttl_s);
    bool contains(NodeId n) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<NeighborEntry>& entries() const { return entries_; }

  private:
    std::vector<NeighborEntry> entries_;
};

enum class DiscoveryStatus { Unseen, Forwarded, Blocked };

struct RreqPacket {
    NodeId origin = 0;
    NodeId target = 0;
    std::uint32_t seq = 0;
    std::vector<NodeId> path;        // origin first, no repeats
    std::vector<NodeId> forwarders;  // chosen rebroadcasters; empty on flood
    bool unblock = false;
};

struct RrepPacket {
    NodeId origin = 0;
    NodeId target = 0;
    std::uint32_t seq = 0;
    std::vector<NodeId> path;   // origin .. target
    std::size_t cursor = 0;     // index in path of the hop this copy is addressed to
};

struct NodeProtocolState {
    NodeProtocolState(NodeId id, std::size_t node_count)
        : id(id), heard_from(node_count, false) {}

    NodeId id;
    NeighborhoodVector neighbors;
    std::unordered_map<std::uint64_t, DiscoveryStatus> discoveries;
    std::vector<bool> heard_from;
    bool hello_reply_pending = false;
    std::uint32_t next_seq = 0;

    DiscoveryStatus status_of(NodeId origin, std::uint32_t seq) const {
        auto it = discoveries.find(discovery_key(origin, seq));
        return it == discoveries.end() ? DiscoveryStatus::Unseen : it->second;
    }
};

struct ForwarderChoice {
    std::vector<NodeId> chosen;  // farthest first
    bool unblock = false;
};

// Fixed(k) -> k; RandomUniform draws from the k_choice stream.
int choose_k(const KPolicy& policy, RngStream& rng);

// floor(m/K) farthest eligible neighbors; if that rounds to zero but at
// least one neighbor is eligible, the single farthest with unblock set.
ForwarderChoice select_forwarders(const NeighborhoodVector& nv, int k,
                                  const std::vector<NodeId>& exclude);

// Updates the table from one received HELLO. Returns true when this is the
// first HELLO ever heard from the sender (a reply HELLO is due).
bool on_hello(NodeProtocolState& node, NodeId sender, double rx_power_dbm,
              const ScenarioConfig& cfg, SimTime now);

struct ProtocolActions {
    std::vector<RreqPacket> broadcasts;
    std::vector<std::pair<NodeId, RreqPacket>> unicasts;
    std::optional<RrepPacket> reply;
    bool malformed = false;
};

ProtocolActions prp_on_rreq(NodeProtocolState& node, const RreqPacket& rreq,
                            const ScenarioConfig& cfg, RngStream& k_rng, SimTime now);
ProtocolActions flood_on_rreq(NodeProtocolState& node, const RreqPacket& rreq, SimTime now);

}  // namespace prpsim
