#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "prpsim/config.hpp"
#include "prpsim/event_queue.hpp"
#include "prpsim/metrics.hpp"
#include "prpsim/mobility.hpp"
#include "prpsim/protocol.hpp"
#include "prpsim/rng.hpp"
#include "prpsim/types.hpp"

namespace prpsim {

struct HelloMsg {};

struct Frame {
    NodeId src = 0;
    NodeId dst = kBroadcast;
    SimTime tx_time = 0.0;
    std::variant<HelloMsg, std::shared_ptr<const RreqPacket>, std::shared_ptr<const RrepPacket>>
        msg;
};

struct PlannedDiscovery {
    SimTime at;
    NodeId src;
    NodeId dst;
};

struct RunResult {
    std::vector<DiscoveryRecord> records;
    Aggregate agg;
    std::size_t events_processed = 0;
    std::uint64_t malformed_rreq = 0;
    std::uint64_t stray_rrep = 0;
};

// One deterministic single-threaded simulation run. Independent runs share
// no state and may execute on separate threads.
class Simulation {
  public:
    explicit Simulation(const ScenarioConfig& cfg);
    // Test hook: pins initial placement instead of drawing it.
    Simulation(const ScenarioConfig& cfg, std::vector<Position> fixed_positions);

    // Test hook: replaces the per-second flow schedule.
    void set_discovery_plan(std::vector<PlannedDiscovery> plan);

    RunResult run();

    // Lower-level access for focused tests.
    void begin();  // schedules HELLO / mobility / discovery events
    std::size_t run_events_until(SimTime end);
    void transmit(const Frame& frame);
    SimTime now() const { return sched_.now(); }
    const std::vector<Position>& positions() const { return pos_; }
    NodeProtocolState& node(NodeId id) { return nodes_[id]; }
    const std::vector<DiscoveryRecord>& records() const { return records_; }
    std::uint64_t tx_count(NodeId id) const { return tx_count_[id]; }
    std::uint64_t rx_count(NodeId id) const { return rx_count_[id]; }

  private:
    struct HelloTick {
        NodeId node;
        bool periodic;
    };
    struct Delivery {
        Frame frame;
        NodeId to;
    };
    struct MobilityTick {};
    struct DiscoveryStartEv {
        NodeId src;
        NodeId dst;
    };
    struct DiscoveryTimeoutEv {
        NodeId origin;
        std::uint32_t seq;
    };
    struct MetricsSnapshotEv {};
    using EventPayload = std::variant<HelloTick, Delivery, MobilityTick, DiscoveryStartEv,
                                      DiscoveryTimeoutEv, MetricsSnapshotEv>;

    void handle(const EventPayload& payload);
    void handle_hello_tick(const HelloTick& ev);
    void handle_delivery(const Delivery& ev);
    void handle_mobility_tick();
    void handle_discovery_start(const DiscoveryStartEv& ev);
    void handle_discovery_timeout(const DiscoveryTimeoutEv& ev);

    void schedule_flow_plan();
    void send_rreq(NodeId from, RreqPacket pkt, NodeId dst);
    void send_rrep(NodeId from, RrepPacket pkt);
    void apply_actions(NodeId at, ProtocolActions actions);
    DiscoveryRecord* find_record(NodeId origin, std::uint32_t seq);

    ScenarioConfig cfg_;
    Scheduler<EventPayload> sched_;
    RngStream rng_mobility_, rng_k_, rng_flow_, rng_loss_;
    std::vector<Position> pos_;
    std::unique_ptr<MobilityModel> mobility_;
    std::vector<NodeProtocolState> nodes_;
    std::vector<std::uint64_t> tx_count_, rx_count_;
    std::vector<DiscoveryRecord> records_;
    std::unordered_map<std::uint64_t, std::size_t> record_index_;
    std::optional<std::vector<PlannedDiscovery>> plan_override_;
    std::uint64_t malformed_rreq_ = 0;
    std::uint64_t stray_rrep_ = 0;
    bool begun_ = false;
};

RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace prpsim
