#include "prpsim/mobility.hpp"

#include <cmath>

namespace prpsim {

std::vector<Position> place_initial(const ScenarioConfig& cfg, RngStream& rng) {
    std::vector<Position> pos(cfg.node_count);
    for (auto& p : pos) {
        p.x = rng.uniform(0.0, cfg.map_width_m);
        p.y = rng.uniform(0.0, cfg.map_height_m);
    }
    return pos;
}

RandomWaypoint::RandomWaypoint(const ScenarioConfig& cfg, std::size_t node_count, RngStream& rng)
    : width_(cfg.map_width_m),
      height_(cfg.map_height_m),
      max_speed_(cfg.mobility.max_speed_mps),
      pause_(cfg.mobility.pause_s),
      states_(node_count) {
    for (auto& st : states_) {
        retarget(st, rng);
    }
}

void RandomWaypoint::retarget(NodeState& st, RngStream& rng) {
    st.target.x = rng.uniform(0.0, width_);
    st.target.y = rng.uniform(0.0, height_);
    // speed uniform in (0, max]: 1 - U(0,1) never yields zero
    st.speed_mps = max_speed_ * (1.0 - rng.uniform01());
    st.pause_left_s = 0.0;
}

void RandomWaypoint::advance(std::vector<Position>& pos, double dt, RngStream& rng) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
        NodeState& st = states_[i];
        Position& p = pos[i];
        double remaining = dt;
        while (remaining > 0.0) {
            if (st.pause_left_s > 0.0) {
                const double wait = std::min(st.pause_left_s, remaining);
                st.pause_left_s -= wait;
                remaining -= wait;
                if (st.pause_left_s == 0.0) retarget(st, rng);
                continue;
            }
            const double dx = st.target.x - p.x;
            const double dy = st.target.y - p.y;
            const double dist = std::hypot(dx, dy);
            const double reach = st.speed_mps * remaining;
            if (reach < dist) {
                p.x += dx / dist * reach;
                p.y += dy / dist * reach;
                remaining = 0.0;
            } else {
                p = st.target;
                remaining -= (st.speed_mps > 0.0 ? dist / st.speed_mps : remaining);
                if (pause_ > 0.0) {
                    st.pause_left_s = pause_;
                } else {
                    retarget(st, rng);
                }
            }
        }
    }
}

double reflect_into(double v, double limit) {
    const double period = 2.0 * limit;
    v = std::fmod(v, period);
    if (v < 0.0) v += period;
    return v > limit ? period - v : v;
}

RestrictedRandomWalk::RestrictedRandomWalk(const ScenarioConfig& cfg)
    : width_(cfg.map_width_m),
      height_(cfg.map_height_m),
      step_mps_(cfg.mobility.step_mps),
      max_step_m_(cfg.mobility.max_step_m) {}

void RestrictedRandomWalk::advance(std::vector<Position>& pos, double dt, RngStream& rng) {
    const double bound = std::min(step_mps_ * dt, max_step_m_);
    for (auto& p : pos) {
        const double heading = rng.uniform(0.0, 2.0 * M_PI);
        const double len = bound * rng.uniform01();
        p.x = reflect_into(p.x + len * std::cos(heading), width_);
        p.y = reflect_into(p.y + len * std::sin(heading), height_);
    }
}

std::unique_ptr<MobilityModel> make_mobility(const ScenarioConfig& cfg, std::size_t node_count,
                                             RngStream& rng) {
    switch (cfg.mobility.model) {
        case MobilityConfig::Model::Static:
            return std::make_unique<StaticMobility>();
        case MobilityConfig::Model::RandomWaypoint:
            return std::make_unique<RandomWaypoint>(cfg, node_count, rng);
        case MobilityConfig::Model::RestrictedRandomWalk:
            return std::make_unique<RestrictedRandomWalk>(cfg);
    }
    return nullptr;
}

}  // namespace prpsim
