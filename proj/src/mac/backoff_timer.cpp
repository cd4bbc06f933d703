#include "dcfsim/mac/backoff_timer.hpp"

#include "dcfsim/sim/errors.hpp"
#include "dcfsim/sim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dcfsim {

BackoffTimer::BackoffTimer(Scheduler& sched, Rng& rng, double slot_time,
                           std::function<void()> on_expire)
  : sched_(sched),
    rng_(rng),
    slot_(slot_time),
    timer_(sched, "backoff", std::move(on_expire))
{
}

void
BackoffTimer::start(std::uint32_t cw, bool idle, double difs)
{
    if (busy())
        throw ProtocolFault("backoff: start while busy");
    drawn_ = static_cast<std::uint32_t>(rng_.uniform_int(cw));
    slots_ = drawn_;
    if (idle) {
        paused_ = false;
        lead_ = difs;
        stime_ = sched_.now();
        timer_.start(lead_ + slots_ * slot_);
    } else {
        paused_ = true;
        lead_ = 0.0;
    }
}

void
BackoffTimer::pause()
{
    if (!timer_.counting())
        throw ProtocolFault("backoff: pause requires a counting timer");
    const double elapsed = sched_.now() - stime_ - lead_;
    std::uint32_t done = 0;
    if (elapsed > 0.0)
        done = static_cast<std::uint32_t>(std::floor(elapsed / slot_ + 1e-6));
    slots_ -= std::min(done, slots_);
    timer_.cancel();
    paused_ = true;
}

void
BackoffTimer::resume(double difs)
{
    if (!paused_)
        throw ProtocolFault("backoff: resume requires a paused timer");
    paused_ = false;
    lead_ = difs;
    stime_ = sched_.now();
    timer_.start(lead_ + slots_ * slot_);
}

void
BackoffTimer::cancel()
{
    if (!busy())
        throw ProtocolFault("backoff: cancel on an idle timer");
    if (timer_.busy())
        timer_.cancel();
    paused_ = false;
    slots_ = 0;
}

} // namespace dcfsim
