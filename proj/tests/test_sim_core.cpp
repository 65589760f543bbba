#include <vector>

#include "doctest.h"
#include "prpsim/event_queue.hpp"
#include "prpsim/rng.hpp"

using namespace prpsim;

TEST_CASE("scheduler delivers in (fire_at, seq_no) order") {
    Scheduler<int> sched;
    sched.schedule(5.0, 1);
    sched.schedule(2.0, 2);
    sched.schedule(5.0, 3);  // same time as the first, inserted later
    std::vector<int> order;
    std::vector<SimTime> times;
    const std::size_t n = sched.run_until(10.0, [&](const auto& ev) {
        order.push_back(ev.payload);
        times.push_back(ev.fire_at);
    });
    CHECK(n == 3);
    CHECK(order == std::vector<int>{2, 1, 3});
    CHECK(times == std::vector<SimTime>{2.0, 5.0, 5.0});
    CHECK(sched.now() == 10.0);
}

TEST_CASE("scheduling in the past is a fatal error") {
    Scheduler<int> sched;
    sched.schedule(1.0, 0);
    sched.run_until(1.0, [](const auto&) {});
    CHECK_THROWS_AS(sched.schedule(0.5, 1), std::logic_error);
    CHECK_NOTHROW(sched.schedule(1.0, 2));  // same instant is fine
}

TEST_CASE("run_until on an empty queue just advances the clock") {
    Scheduler<int> sched;
    CHECK(sched.run_until(900.0, [](const auto&) {}) == 0);
    CHECK(sched.now() == 900.0);
}

TEST_CASE("run_until counts exactly the events at or before the horizon") {
    Scheduler<int> sched;
    sched.schedule(1.0, 0);
    sched.schedule(5.0, 1);
    sched.schedule(10.0, 2);
    sched.schedule(10.5, 3);
    CHECK(sched.run_until(10.0, [](const auto&) {}) == 3);
    CHECK(sched.pending() == 1);
}

TEST_CASE("clock never decreases and events never fire early") {
    Scheduler<int> sched;
    RngStream rng(7, StreamLabel::Mobility);
    for (int i = 0; i < 200; ++i) {
        sched.schedule(rng.uniform(0.0, 50.0), i);
    }
    SimTime last = 0.0;
    sched.run_until(50.0, [&](const auto& ev) {
        CHECK(ev.fire_at >= last);
        last = ev.fire_at;
    });
}

TEST_CASE("rng streams are deterministic per (seed, label)") {
    RngStream a(42, StreamLabel::Mobility);
    RngStream b(42, StreamLabel::Mobility);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_bits() == b.next_bits());
    }
}

TEST_CASE("rng streams differ across labels and seeds") {
    auto draws = [](std::uint64_t seed, StreamLabel label) {
        RngStream rng(seed, label);
        std::vector<std::uint64_t> out(100);
        for (auto& v : out) v = rng.next_bits();
        return out;
    };
    CHECK(draws(42, StreamLabel::Mobility) != draws(42, StreamLabel::KChoice));
    CHECK(draws(1, StreamLabel::Mobility) != draws(2, StreamLabel::Mobility));
}

TEST_CASE("stream labels parse from the fixed name set only") {
    CHECK(stream_label_from("mobility") == StreamLabel::Mobility);
    CHECK(stream_label_from("k_choice") == StreamLabel::KChoice);
    CHECK(stream_label_from("flow_selection") == StreamLabel::FlowSelection);
    CHECK(stream_label_from("loss") == StreamLabel::Loss);
    CHECK_THROWS_AS(stream_label_from("weather"), std::invalid_argument);
}

TEST_CASE("uniform_int covers its range inclusively") {
    RngStream rng(3, StreamLabel::KChoice);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 1000; ++i) {
        const long v = rng.uniform_int(3, 7);
        CHECK(v >= 3);
        CHECK(v <= 7);
        saw_lo |= v == 3;
        saw_hi |= v == 7;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}
