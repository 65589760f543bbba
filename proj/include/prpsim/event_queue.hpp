#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prpsim/types.hpp"

namespace prpsim {

// Deterministic event queue. Ties on fire time are broken by insertion
// sequence number, so two events never compare equal and replays are
// bit-reproducible.
template <typename Payload>
class Scheduler {
  public:
    struct Event {
        SimTime fire_at;
        std::uint64_t seq_no;
        Payload payload;
    };

    SimTime now() const { return clock_; }
    std::size_t pending() const { return heap_.size(); }

    void schedule(SimTime at, Payload payload) {
        if (at < clock_) {
            throw std::logic_error("Scheduler::schedule: event scheduled in the past");
        }
        heap_.push(Event{at, next_seq_++, std::move(payload)});
    }

    // Processes every event with fire_at <= end in (fire_at, seq_no) order,
    // leaves the clock at end, and returns the number of events handled.
    template <typename Handler>
    std::size_t run_until(SimTime end, Handler&& handle) {
        if (end < clock_) {
            throw std::logic_error("Scheduler::run_until: end precedes current clock");
        }
        std::size_t processed = 0;
        while (!heap_.empty() && heap_.top().fire_at <= end) {
            Event ev = heap_.top();
            heap_.pop();
            clock_ = ev.fire_at;
            ++processed;
            handle(ev);
        }
        clock_ = end;
        return processed;
    }

  private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq_no > b.seq_no;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    SimTime clock_ = 0.0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace prpsim
