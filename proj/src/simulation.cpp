#include "prpsim/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "prpsim/radio.hpp"

namespace prpsim {

namespace {

double serialization_s(const Frame& frame, const ScenarioConfig& cfg) {
    std::size_t bytes = kHelloBytes;
    if (std::holds_alternative<std::shared_ptr<const RreqPacket>>(frame.msg)) {
        bytes = kRreqBytes;
    } else if (std::holds_alternative<std::shared_ptr<const RrepPacket>>(frame.msg)) {
        bytes = kRrepBytes;
    }
    return static_cast<double>(bytes) * 8.0 / cfg.bandwidth_bps;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg),
      rng_mobility_(cfg.rng_seed, StreamLabel::Mobility),
      rng_k_(cfg.rng_seed, StreamLabel::KChoice),
      rng_flow_(cfg.rng_seed, StreamLabel::FlowSelection),
      rng_loss_(cfg.rng_seed, StreamLabel::Loss) {
    cfg_.validate();
    pos_ = place_initial(cfg_, rng_mobility_);
    mobility_ = make_mobility(cfg_, pos_.size(), rng_mobility_);
    const std::size_t n = pos_.size();
    nodes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes_.emplace_back(static_cast<NodeId>(i), n);
    }
    tx_count_.assign(n, 0);
    rx_count_.assign(n, 0);
}

Simulation::Simulation(const ScenarioConfig& cfg, std::vector<Position> fixed_positions)
    : Simulation(cfg) {
    if (fixed_positions.size() != pos_.size()) {
        throw std::invalid_argument("fixed_positions: size must equal node_count");
    }
    pos_ = std::move(fixed_positions);
}

void Simulation::set_discovery_plan(std::vector<PlannedDiscovery> plan) {
    plan_override_ = std::move(plan);
}

void Simulation::schedule_flow_plan() {
    if (plan_override_) {
        for (const auto& d : *plan_override_) {
            sched_.schedule(d.at, DiscoveryStartEv{d.src, d.dst});
        }
        return;
    }
    // One discovery per flow per second, jittered uniformly within the
    // second. The 2*flow_count endpoints of one second's discoveries are
    // sampled without replacement. Seconds whose timeout would outlive the
    // run are not started.
    const int n = cfg_.node_count;
    const int last_second =
        static_cast<int>(std::floor(cfg_.sim_duration_s - cfg_.discovery_timeout_s - 1.0));
    std::vector<NodeId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
    for (int s = 0; s <= last_second; ++s) {
        const int picks = 2 * cfg_.flow_count;
        for (int i = 0; i < picks; ++i) {
            const long j = rng_flow_.uniform_int(i, n - 1);
            std::swap(ids[i], ids[j]);
        }
        for (int f = 0; f < cfg_.flow_count; ++f) {
            const double jitter = rng_flow_.uniform01();
            sched_.schedule(static_cast<double>(s) + jitter,
                            DiscoveryStartEv{ids[2 * f], ids[2 * f + 1]});
        }
    }
}

void Simulation::begin() {
    if (begun_) throw std::logic_error("Simulation::begin called twice");
    begun_ = true;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        sched_.schedule(0.0, HelloTick{static_cast<NodeId>(i), true});
    }
    if (cfg_.mobility.model != MobilityConfig::Model::Static) {
        sched_.schedule(kMobilityTickS, MobilityTick{});
    }
    schedule_flow_plan();
    sched_.schedule(cfg_.sim_duration_s, MetricsSnapshotEv{});
}

std::size_t Simulation::run_events_until(SimTime end) {
    return sched_.run_until(end, [this](const auto& ev) { handle(ev.payload); });
}

RunResult Simulation::run() {
    begin();
    RunResult result;
    result.events_processed = run_events_until(cfg_.sim_duration_s);
    for (auto& rec : records_) {
        if (!rec.done) {  // still in flight at shutdown
            rec.done = true;
            rec.end = cfg_.sim_duration_s;
        }
    }
    result.records = records_;
    result.agg = aggregate(records_);
    result.malformed_rreq = malformed_rreq_;
    result.stray_rrep = stray_rrep_;
    return result;
}

void Simulation::handle(const EventPayload& payload) {
    std::visit(
        [this](const auto& ev) {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, HelloTick>) {
                handle_hello_tick(ev);
            } else if constexpr (std::is_same_v<T, Delivery>) {
                handle_delivery(ev);
            } else if constexpr (std::is_same_v<T, MobilityTick>) {
                handle_mobility_tick();
            } else if constexpr (std::is_same_v<T, DiscoveryStartEv>) {
                handle_discovery_start(ev);
            } else if constexpr (std::is_same_v<T, DiscoveryTimeoutEv>) {
                handle_discovery_timeout(ev);
            } else {
                // MetricsSnapshot: aggregation happens after the run
            }
        },
        payload);
}

void Simulation::transmit(const Frame& frame) {
    ++tx_count_[frame.src];
    const SimTime arrive = now() + cfg_.channel_delay_s + serialization_s(frame, cfg_);
    if (frame.dst == kBroadcast) {
        for (std::size_t j = 0; j < pos_.size(); ++j) {
            if (j == frame.src) continue;
            if (!in_range(pos_[frame.src], pos_[j], cfg_)) continue;
            if (cfg_.loss_prob > 0.0 && rng_loss_.uniform01() < cfg_.loss_prob) continue;
            sched_.schedule(arrive, Delivery{frame, static_cast<NodeId>(j)});
        }
    } else {
        if (!in_range(pos_[frame.src], pos_[frame.dst], cfg_)) return;  // silently lost
        if (cfg_.loss_prob > 0.0 && rng_loss_.uniform01() < cfg_.loss_prob) return;
        sched_.schedule(arrive, Delivery{frame, frame.dst});
    }
}

void Simulation::handle_hello_tick(const HelloTick& ev) {
    transmit(Frame{ev.node, kBroadcast, now(), HelloMsg{}});
    if (ev.periodic) {
        sched_.schedule(now() + cfg_.hello_period_s, HelloTick{ev.node, true});
    } else {
        nodes_[ev.node].hello_reply_pending = false;
    }
}

DiscoveryRecord* Simulation::find_record(NodeId origin, std::uint32_t seq) {
    auto it = record_index_.find(discovery_key(origin, seq));
    return it == record_index_.end() ? nullptr : &records_[it->second];
}

void Simulation::send_rreq(NodeId from, RreqPacket pkt, NodeId dst) {
    if (DiscoveryRecord* rec = find_record(pkt.origin, pkt.seq)) {
        if (!rec->transmitted[from]) {
            rec->transmitted[from] = 1;
            ++rec->t;
        }
    }
    Frame frame{from, dst, now(), std::make_shared<const RreqPacket>(std::move(pkt))};
    transmit(frame);
}

void Simulation::send_rrep(NodeId from, RrepPacket pkt) {
    const NodeId next_hop = pkt.path[pkt.cursor];
    Frame frame{from, next_hop, now(), std::make_shared<const RrepPacket>(std::move(pkt))};
    transmit(frame);
}

void Simulation::apply_actions(NodeId at, ProtocolActions actions) {
    if (actions.malformed) {
        ++malformed_rreq_;
        return;
    }
    for (auto& pkt : actions.broadcasts) {
        send_rreq(at, std::move(pkt), kBroadcast);
    }
    for (auto& [dst, pkt] : actions.unicasts) {
        send_rreq(at, std::move(pkt), dst);
    }
    if (actions.reply) {
        RrepPacket rep = std::move(*actions.reply);
        rep.cursor -= 1;  // address the previous hop on the path
        send_rrep(at, std::move(rep));
    }
}

void Simulation::handle_delivery(const Delivery& ev) {
    ++rx_count_[ev.to];
    const Frame& frame = ev.frame;
    if (std::holds_alternative<HelloMsg>(frame.msg)) {
        const double d_m = distance_m(pos_[frame.src], pos_[ev.to]);
        const double rx_power = d_m > 1e-9
                                    ? cfg_.tx_power_dbm - path_loss_at(d_m / 1000.0, cfg_.frequency_mhz)
                                    : cfg_.tx_power_dbm;
        NodeProtocolState& node = nodes_[ev.to];
        const bool first_contact = on_hello(node, frame.src, rx_power, cfg_, now());
        if (first_contact && !node.hello_reply_pending) {
            node.hello_reply_pending = true;
            sched_.schedule(now(), HelloTick{ev.to, false});
        }
        return;
    }
    if (auto rreq = std::get_if<std::shared_ptr<const RreqPacket>>(&frame.msg)) {
        if (DiscoveryRecord* rec = find_record((*rreq)->origin, (*rreq)->seq)) {
            if (!rec->received[ev.to]) {
                rec->received[ev.to] = 1;
                ++rec->r;
            }
        }
        ProtocolActions actions =
            cfg_.protocol == Protocol::Prp
                ? prp_on_rreq(nodes_[ev.to], **rreq, cfg_, rng_k_, now())
                : flood_on_rreq(nodes_[ev.to], **rreq, now());
        apply_actions(ev.to, std::move(actions));
        return;
    }
    const auto& rrep = *std::get<std::shared_ptr<const RrepPacket>>(frame.msg);
    if (rrep.path[rrep.cursor] != ev.to) {
        ++stray_rrep_;
        return;
    }
    if (rrep.cursor == 0) {
        // back at the origin
        DiscoveryRecord* rec = find_record(rrep.origin, rrep.seq);
        if (rec == nullptr || rrep.origin != ev.to) {
            ++stray_rrep_;
            return;
        }
        if (rec->done) return;  // late or duplicate reply
        rec->done = true;
        rec->succeeded = true;
        rec->end = now();
        rec->path_hops = static_cast<int>(rrep.path.size()) - 1;
        return;
    }
    RrepPacket next = rrep;
    next.cursor -= 1;
    send_rrep(ev.to, std::move(next));
}

void Simulation::handle_mobility_tick() {
    mobility_->advance(pos_, kMobilityTickS, rng_mobility_);
    const SimTime next = now() + kMobilityTickS;
    if (next <= cfg_.sim_duration_s) {
        sched_.schedule(next, MobilityTick{});
    }
}

void Simulation::handle_discovery_start(const DiscoveryStartEv& ev) {
    NodeProtocolState& src = nodes_[ev.src];
    const std::uint32_t seq = src.next_seq++;
    records_.emplace_back();
    record_index_[discovery_key(ev.src, seq)] = records_.size() - 1;
    DiscoveryRecord& rec = records_.back();
    rec.origin = ev.src;
    rec.target = ev.dst;
    rec.seq = seq;
    rec.start = now();
    rec.received.assign(pos_.size(), 0);
    rec.transmitted.assign(pos_.size(), 0);
    rec.oracle_hops = bfs_shortest_hops(connectivity_graph(pos_, cfg_), ev.src, ev.dst);

    src.neighbors.purge(now(), cfg_.neighbor_ttl_s());
    if (src.neighbors.contains(ev.dst)) {
        // single-hop neighbor: route established with no RREQ at all
        rec.done = true;
        rec.succeeded = true;
        rec.path_hops = 1;
        rec.end = now();
        return;
    }
    if (src.neighbors.empty()) {
        rec.done = true;
        rec.end = now();
        return;
    }
    rec.used_rreq = true;
    rec.received[ev.src] = 1;  // the origin trivially holds the message
    rec.r = 1;
    RreqPacket pkt{ev.src, ev.dst, seq, {ev.src}, {}, false};
    if (cfg_.protocol == Protocol::Prp) {
        const int k = choose_k(cfg_.k_policy, rng_k_);
        ForwarderChoice fc = select_forwarders(src.neighbors, k, pkt.path);
        pkt.forwarders = std::move(fc.chosen);
        pkt.unblock = fc.unblock;
    }
    src.discoveries[discovery_key(ev.src, seq)] = DiscoveryStatus::Forwarded;
    send_rreq(ev.src, std::move(pkt), kBroadcast);
    sched_.schedule(now() + cfg_.discovery_timeout_s, DiscoveryTimeoutEv{ev.src, seq});
}

void Simulation::handle_discovery_timeout(const DiscoveryTimeoutEv& ev) {
    DiscoveryRecord* rec = find_record(ev.origin, ev.seq);
    if (rec == nullptr || rec->done) return;
    rec->done = true;
    rec->end = now();
}

RunResult run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

}  // namespace prpsim
