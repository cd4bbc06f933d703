#include "dcfsim/sim/scheduler.hpp"

#include "dcfsim/sim/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace dcfsim {

EventId
Scheduler::schedule(double delay, Handler handler)
{
    if (!(delay >= 0.0) || !std::isfinite(delay))
        throw InputError("schedule: delay must be finite and >= 0, got " + std::to_string(delay));
    const EventId uid = next_uid_++;
    heap_.push(Entry{now_ + delay, uid});
    live_.emplace(uid, std::move(handler));
    return uid;
}

bool
Scheduler::cancel(EventId id)
{
    return live_.erase(id) > 0;
}

std::size_t
Scheduler::run_until(SimTime t_end)
{
    if (t_end < now_)
        throw InputError("run_until: end time lies in the past");

    std::size_t count = 0;
    while (!heap_.empty() && heap_.top().time <= t_end) {
        const Entry head = heap_.top();
        heap_.pop();
        auto it = live_.find(head.uid);
        if (it == live_.end())
            continue; // cancelled
        Handler handler = std::move(it->second);
        live_.erase(it);
        now_ = head.time;
        ++count;
        ++dispatched_;
        handler();
    }
    now_ = t_end;
    return count;
}

} // namespace dcfsim
