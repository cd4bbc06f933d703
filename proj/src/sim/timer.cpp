#include "dcfsim/sim/timer.hpp"

#include "dcfsim/sim/errors.hpp"

#include <utility>

namespace dcfsim {

Timer::Timer(Scheduler& sched, std::string name, std::function<void()> on_expire)
  : sched_(sched),
    name_(std::move(name)),
    on_expire_(std::move(on_expire))
{
}

Timer::~Timer()
{
    if (state_ == State::Counting)
        sched_.cancel(event_);
}

void
Timer::fault(const char* what) const
{
    throw ProtocolFault("timer '" + name_ + "': " + what);
}

void
Timer::arm(double delay)
{
    expiry_ = sched_.now() + delay;
    event_ = sched_.schedule(delay, [this] { fire(); });
    state_ = State::Counting;
}

void
Timer::fire()
{
    state_ = State::Idle;
    event_ = 0;
    on_expire_();
}

void
Timer::start(double delay)
{
    if (state_ != State::Idle)
        fault("start on a busy timer");
    if (!(delay >= 0.0))
        fault("negative delay");
    arm(delay);
}

void
Timer::pause()
{
    if (state_ != State::Counting)
        fault("pause requires a counting timer");
    const double left = expiry_ - sched_.now();
    if (!(left > 0.0))
        fault("pause at or after expiry");
    sched_.cancel(event_);
    event_ = 0;
    remaining_ = left;
    state_ = State::Paused;
}

void
Timer::resume(double extra_defer)
{
    if (state_ != State::Paused)
        fault("resume requires a paused timer");
    if (!(extra_defer >= 0.0))
        fault("negative resume defer");
    arm(extra_defer + remaining_);
}

void
Timer::cancel()
{
    if (state_ == State::Idle)
        fault("cancel on an idle timer");
    if (state_ == State::Counting)
        sched_.cancel(event_);
    event_ = 0;
    state_ = State::Idle;
}

double
Timer::remaining() const
{
    switch (state_) {
    case State::Paused:
        return remaining_;
    case State::Counting:
        return expiry_ - sched_.now();
    case State::Idle:
        break;
    }
    return 0.0;
}

} // namespace dcfsim
