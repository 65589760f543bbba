#pragma once

#include <memory>
#include <vector>

#include "prpsim/config.hpp"
#include "prpsim/rng.hpp"
#include "prpsim/types.hpp"

namespace prpsim {

// Positions advance on this fixed tick, which bounds neighbor-table
// staleness between HELLO refreshes.
inline constexpr double kMobilityTickS = 0.1;

// Uniform placement over the map rectangle, drawn from the mobility stream.
std::vector<Position> place_initial(const ScenarioConfig& cfg, RngStream& rng);

class MobilityModel {
  public:
    virtual ~MobilityModel() = default;
    virtual void advance(std::vector<Position>& pos, double dt, RngStream& rng) = 0;
};

class StaticMobility final : public MobilityModel {
  public:
    void advance(std::vector<Position>&, double, RngStream&) override {}
};

class RandomWaypoint final : public MobilityModel {
  public:
    struct NodeState {
        Position target;
        double speed_mps = 0.0;
        double pause_left_s = 0.0;
    };

    RandomWaypoint(const ScenarioConfig& cfg, std::size_t node_count, RngStream& rng);
    void advance(std::vector<Position>& pos, double dt, RngStream& rng) override;

    std::vector<NodeState>& states() { return states_; }

  private:
    void retarget(NodeState& st, RngStream& rng);

    double width_, height_, max_speed_, pause_;
    std::vector<NodeState> states_;
};

class RestrictedRandomWalk final : public MobilityModel {
  public:
    explicit RestrictedRandomWalk(const ScenarioConfig& cfg);
    void advance(std::vector<Position>& pos, double dt, RngStream& rng) override;

  private:
    double width_, height_, step_mps_, max_step_m_;
};

// Reflects a coordinate into [0, limit] (triangle-wave fold).
double reflect_into(double v, double limit);

std::unique_ptr<MobilityModel> make_mobility(const ScenarioConfig& cfg, std::size_t node_count,
                                             RngStream& rng);

}  // namespace prpsim
