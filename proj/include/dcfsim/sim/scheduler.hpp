#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace dcfsim {

/// Virtual time in seconds.
using SimTime = double;

using EventId = std::uint64_t;

/**
 * Centralized discrete-event scheduler.
 *
 * Events are kept sorted by time and dispatched one at a time. Events that
 * share a timestamp are dispatched in the order they were scheduled
 * (ascending uid). Cancellation is lazy: a cancelled event stays in the heap
 * but is skipped when it reaches the head.
 */
class Scheduler
{
  public:
    using Handler = std::function<void()>;

    Scheduler() = default;
    Scheduler(const Scheduler&) = delete;
    Scheduler& operator=(const Scheduler&) = delete;

    /// Enqueue `handler` to run at now() + delay. Throws InputError on a
    /// negative or non-finite delay.
    EventId schedule(double delay, Handler handler);

    /// Drop a pending event. Returns false if it already ran or was cancelled.
    bool cancel(EventId id);

    bool is_pending(EventId id) const { return live_.contains(id); }

    /// Dispatch every event with time <= t_end, then leave the clock at t_end.
    /// Returns the number of events dispatched.
    std::size_t run_until(SimTime t_end);

    SimTime now() const { return now_; }
    std::size_t pending() const { return live_.size(); }
    std::uint64_t dispatched_total() const { return dispatched_; }

  private:
    struct Entry
    {
        SimTime time;
        EventId uid;
    };
    struct Later
    {
        bool operator()(const Entry& a, const Entry& b) const
        {
            if (a.time != b.time)
                return a.time > b.time;
            return a.uid > b.uid;
        }
    };

    SimTime now_ = 0.0;
    EventId next_uid_ = 1;
    std::uint64_t dispatched_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::unordered_map<EventId, Handler> live_;
};

} // namespace dcfsim
