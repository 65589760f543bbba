#include <cmath>

#include "doctest.h"
#include "prpsim/mobility.hpp"

using namespace prpsim;

namespace {

ScenarioConfig base_config() {
    ScenarioConfig cfg;
    cfg.node_count = 125;
    return cfg;
}

bool in_bounds(const Position& p, const ScenarioConfig& cfg) {
    return p.x >= 0.0 && p.x <= cfg.map_width_m && p.y >= 0.0 && p.y <= cfg.map_height_m;
}

}  // namespace

TEST_CASE("place_initial stays in bounds and is deterministic") {
    ScenarioConfig cfg = base_config();
    RngStream rng(9, StreamLabel::Mobility);
    auto pos = place_initial(cfg, rng);
    REQUIRE(pos.size() == 125);
    for (const auto& p : pos) CHECK(in_bounds(p, cfg));

    RngStream rng2(9, StreamLabel::Mobility);
    auto pos2 = place_initial(cfg, rng2);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        CHECK(pos[i].x == pos2[i].x);
        CHECK(pos[i].y == pos2[i].y);
    }
}

TEST_CASE("static model is a fixed point of advance") {
    ScenarioConfig cfg = base_config();
    cfg.mobility.model = MobilityConfig::Model::Static;
    RngStream rng(1, StreamLabel::Mobility);
    auto pos = place_initial(cfg, rng);
    auto before = pos;
    StaticMobility model;
    model.advance(pos, 5.0, rng);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        CHECK(pos[i].x == before[i].x);
        CHECK(pos[i].y == before[i].y);
    }
}

TEST_CASE("random waypoint moves linearly toward its target") {
    ScenarioConfig cfg = base_config();
    cfg.node_count = 1;
    RngStream rng(1, StreamLabel::Mobility);
    RandomWaypoint model(cfg, 1, rng);
    model.states()[0] = {Position{30.0, 40.0}, 10.0, 0.0};
    std::vector<Position> pos{Position{0.0, 0.0}};
    model.advance(pos, 1.0, rng);
    // 3-4-5 direction at 10 m/s for 1 s
    CHECK(pos[0].x == doctest::Approx(6.0));
    CHECK(pos[0].y == doctest::Approx(8.0));
}

TEST_CASE("random waypoint displacement never exceeds max_speed * dt") {
    ScenarioConfig cfg = base_config();
    cfg.node_count = 20;
    cfg.mobility.max_speed_mps = 20.0;
    RngStream rng(4, StreamLabel::Mobility);
    auto pos = place_initial(cfg, rng);
    RandomWaypoint model(cfg, pos.size(), rng);
    for (int step = 0; step < 500; ++step) {
        auto before = pos;
        const double dt = 0.1;
        model.advance(pos, dt, rng);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            const double moved = std::hypot(pos[i].x - before[i].x, pos[i].y - before[i].y);
            CHECK(moved <= cfg.mobility.max_speed_mps * dt + 1e-9);
            CHECK(in_bounds(pos[i], cfg));
        }
    }
}

TEST_CASE("reflection fold matches a brute-force bounce oracle") {
    // oracle: walk the segment in tiny slices, flipping direction at walls
    auto oracle = [](double start, double step, double limit) {
        double x = start;
        double dir = step >= 0.0 ? 1.0 : -1.0;
        double left = std::abs(step);
        const double eps = 0.01;
        while (left > 0.0) {
            const double amount = std::min(left, eps);
            x += dir * amount;
            if (x > limit) {
                x = limit - (x - limit);
                dir = -dir;
            } else if (x < 0.0) {
                x = -x;
                dir = -dir;
            }
            left -= amount;
        }
        return x;
    };
    RngStream rng(11, StreamLabel::Mobility);
    for (int i = 0; i < 1000; ++i) {
        const double limit = 350.0;
        const double start = rng.uniform(0.0, limit);
        const double step = rng.uniform(-100.0, 100.0);
        const double got = reflect_into(start + step, limit);
        CHECK(got >= 0.0);
        CHECK(got <= limit);
        CHECK(got == doctest::Approx(oracle(start, step, limit)).epsilon(1e-6));
    }
}

TEST_CASE("restricted random walk stays in bounds near the edges") {
    ScenarioConfig cfg = base_config();
    cfg.node_count = 10;
    cfg.mobility.model = MobilityConfig::Model::RestrictedRandomWalk;
    cfg.mobility.step_mps = 50.0;
    cfg.mobility.max_step_m = 30.0;
    RngStream rng(2, StreamLabel::Mobility);
    std::vector<Position> pos(10);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        pos[i] = {i % 2 == 0 ? 0.5 : cfg.map_width_m - 0.5, i % 3 == 0 ? 0.5 : cfg.map_height_m - 0.5};
    }
    RestrictedRandomWalk model(cfg);
    for (int step = 0; step < 1000; ++step) {
        model.advance(pos, 1.0, rng);
        for (const auto& p : pos) CHECK(in_bounds(p, cfg));
    }
}
