#pragma once

// Deterministic discrete-event queue. Events are totally ordered by
// (delivery time, insertion sequence), so a run is a pure function of the
// seeds that produced the latencies.

#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "pac/rng.hpp"

namespace pac {

using Ticks = std::uint64_t;

enum class LatencyModel {
  Random,    // 1..1000 ticks per message, drawn from the scheduler stream; links are not FIFO
  Constant,  // 1 tick per message: deliveries in send order
};

template <class Event>
class EventQueue {
 public:
  struct Entry {
    Ticks time;
    std::uint64_t seq;
    Event event;
  };

  EventQueue(LatencyModel model, std::uint64_t seed) : model_(model), rng_(seed) {}

  Ticks now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t pending() const { return heap_.size(); }

  Ticks next_latency() {
    if (model_ == LatencyModel::Constant) return 1;
    return 1 + uniform_below(rng_, 1000);
  }

  // Schedules `event` one latency draw after now; returns the delivery time.
  Ticks send(Event event) {
    Ticks t = now_ + next_latency();
    push(t, std::move(event));
    return t;
  }

  void push(Ticks time, Event event) { heap_.push(Entry{time, seq_++, std::move(event)}); }

  Entry pop() {
    Entry e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
  }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  LatencyModel model_;
  Engine rng_;
  Ticks now_ = 0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

}  // namespace pac
