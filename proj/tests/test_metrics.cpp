#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "prpsim/metrics.hpp"

using namespace prpsim;

TEST_CASE("saved rebroadcast from received and transmitted counts") {
    CHECK(srb(10, 3) == doctest::Approx(0.7));
    CHECK(srb(4, 4) == doctest::Approx(0.0));
    CHECK(srb(100, 5) == doctest::Approx(0.95));
}

TEST_CASE("saved rebroadcast rejects degenerate inputs") {
    CHECK_THROWS_AS(srb(0, 0), std::domain_error);
    CHECK_THROWS_AS(srb(3, 4), std::domain_error);
}

TEST_CASE("success rate over a batch of outcomes") {
    std::vector<DiscoveryRecord> recs(5);
    for (int i = 0; i < 4; ++i) recs[i].succeeded = true;
    CHECK(success_rate(recs) == doctest::Approx(0.8));
    recs[4].succeeded = true;
    CHECK(success_rate(recs) == doctest::Approx(1.0));
    for (auto& rec : recs) rec.succeeded = false;
    CHECK(success_rate(recs) == doctest::Approx(0.0));
    CHECK_THROWS_AS(success_rate({}), std::domain_error);
}

TEST_CASE("latency is reply arrival minus discovery start") {
    DiscoveryRecord rec;
    rec.start = 12.25;
    rec.end = 12.375;
    rec.done = true;
    rec.succeeded = true;
    CHECK(latency(rec) == doctest::Approx(0.125));
}

TEST_CASE("latency of a failed discovery is undefined") {
    DiscoveryRecord rec;
    rec.start = 1.0;
    rec.done = true;
    rec.succeeded = false;
    CHECK_THROWS_AS(latency(rec), std::logic_error);
}

TEST_CASE("bfs hop counts on a line graph") {
    // 0 - 1 - 2 - 3 spaced 80 m apart, 100 m radio range
    ScenarioConfig cfg;
    std::vector<Position> pos{{0, 0}, {80, 0}, {160, 0}, {240, 0}};
    const auto adj = connectivity_graph(pos, cfg);
    CHECK(bfs_shortest_hops(adj, 0, 3) == 3);
    CHECK(bfs_shortest_hops(adj, 0, 1) == 1);
    CHECK(bfs_shortest_hops(adj, 0, 0) == 0);
    CHECK(is_connected(adj));
}

TEST_CASE("bfs reports unreachable pairs") {
    ScenarioConfig cfg;
    std::vector<Position> pos{{0, 0}, {80, 0}, {300, 300}};
    const auto adj = connectivity_graph(pos, cfg);
    CHECK(bfs_shortest_hops(adj, 0, 2) == -1);
    CHECK_FALSE(is_connected(adj));
}

namespace {

DiscoveryRecord make_record(bool succeeded, std::size_t r, std::size_t t, double start,
                           double end, int path_hops, int oracle_hops, bool used_rreq = true) {
    DiscoveryRecord rec;
    rec.origin = 0;
    rec.target = 1;
    rec.start = start;
    rec.end = end;
    rec.done = true;
    rec.succeeded = succeeded;
    rec.used_rreq = used_rreq;
    rec.r = r;
    rec.t = t;
    rec.path_hops = path_hops;
    rec.oracle_hops = oracle_hops;
    return rec;
}

}  // namespace

TEST_CASE("aggregate means over a hand-built batch") {
    std::vector<DiscoveryRecord> recs;
    recs.push_back(make_record(true, 10, 3, 0.0, 0.5, 3, 3));   // srb 0.7, stretch 1.0
    recs.push_back(make_record(true, 20, 4, 1.0, 1.25, 4, 2));  // srb 0.8, stretch 2.0
    recs.push_back(make_record(false, 5, 5, 2.0, 0.0, -1, 4));  // srb 0.0, no stretch
    const auto agg = aggregate(recs);
    CHECK(agg.discoveries == 3);
    CHECK(agg.success_rate == doctest::Approx(2.0 / 3.0));
    REQUIRE(agg.mean_srb.has_value());
    CHECK(*agg.mean_srb == doctest::Approx(0.5));
    REQUIRE(agg.mean_latency_s.has_value());
    CHECK(*agg.mean_latency_s == doctest::Approx(0.375));
    REQUIRE(agg.mean_path_stretch.has_value());
    CHECK(*agg.mean_path_stretch == doctest::Approx(1.5));
    CHECK(agg.srb_excluded == 0);
}

TEST_CASE("instant successes are excluded from srb and stretch") {
    std::vector<DiscoveryRecord> recs;
    auto instant = make_record(true, 0, 0, 3.0, 3.0, 1, 1, false);
    recs.push_back(instant);
    recs.push_back(make_record(true, 10, 5, 0.0, 0.25, 2, 2));
    const auto agg = aggregate(recs);
    CHECK(agg.discoveries == 2);
    CHECK(agg.success_rate == doctest::Approx(1.0));
    REQUIRE(agg.mean_srb.has_value());
    CHECK(*agg.mean_srb == doctest::Approx(0.5));  // the instant one contributes nothing
    REQUIRE(agg.mean_path_stretch.has_value());
    CHECK(*agg.mean_path_stretch == doctest::Approx(1.0));
    CHECK(agg.srb_excluded == 1);
    REQUIRE(agg.mean_latency_s.has_value());
    CHECK(*agg.mean_latency_s == doctest::Approx(0.125));  // instant counts as zero latency
}

TEST_CASE("all-failed batch has no latency or stretch but keeps srb") {
    std::vector<DiscoveryRecord> recs;
    recs.push_back(make_record(false, 10, 4, 0.0, 0.0, -1, 3));
    const auto agg = aggregate(recs);
    CHECK(agg.success_rate == doctest::Approx(0.0));
    CHECK_FALSE(agg.mean_latency_s.has_value());
    CHECK_FALSE(agg.mean_path_stretch.has_value());
    REQUIRE(agg.mean_srb.has_value());
    CHECK(*agg.mean_srb == doctest::Approx(0.6));
}

TEST_CASE("aggregation is independent of record order") {
    std::vector<DiscoveryRecord> recs;
    std::mt19937 shuffler(17);
    for (int i = 0; i < 40; ++i) {
        const bool ok = i % 3 != 0;
        recs.push_back(make_record(ok, 10 + i, 2 + i % 5, i, ok ? i + 0.2 : 0.0,
                                   ok ? 2 + i % 3 : -1, 2));
    }
    const auto base = aggregate(recs);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(recs.begin(), recs.end(), shuffler);
        const auto agg = aggregate(recs);
        CHECK(agg.success_rate == doctest::Approx(base.success_rate).epsilon(1e-12));
        CHECK(*agg.mean_srb == doctest::Approx(*base.mean_srb).epsilon(1e-12));
        CHECK(*agg.mean_latency_s == doctest::Approx(*base.mean_latency_s).epsilon(1e-12));
        CHECK(*agg.mean_path_stretch == doctest::Approx(*base.mean_path_stretch).epsilon(1e-12));
    }
}

TEST_CASE("mean with a normal confidence half-width") {
    const auto mc = mean_ci({1.0, 2.0, 3.0, 4.0});
    CHECK(mc.mean == doctest::Approx(2.5));
    // sd = sqrt(5/3), half-width 1.96 * sd / 2
    CHECK(mc.half_width == doctest::Approx(1.96 * std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-9));
    const auto single = mean_ci({7.0});
    CHECK(single.mean == doctest::Approx(7.0));
    CHECK(single.half_width == doctest::Approx(0.0));
}
