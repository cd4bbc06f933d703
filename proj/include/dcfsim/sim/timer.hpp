#pragma once

#include "dcfsim/sim/scheduler.hpp"

#include <functional>
#include <string>

namespace dcfsim {

/**
 * One-shot timer driven by the scheduler.
 *
 * States: idle -> counting (start) -> idle (expiry or cancel), and
 * counting <-> paused (pause / resume). Calls that do not match the current
 * state throw ProtocolFault; the MAC depends on this to catch its own bugs.
 */
class Timer
{
  public:
    enum class State { Idle, Counting, Paused };

    Timer(Scheduler& sched, std::string name, std::function<void()> on_expire);
    ~Timer();

    Timer(const Timer&) = delete;
    Timer& operator=(const Timer&) = delete;

    void start(double delay);
    /// Freeze the countdown; remaining() = expiry - now.
    void pause();
    /// Continue counting; fires at now + extra_defer + remaining().
    void resume(double extra_defer = 0.0);
    void cancel();

    State state() const { return state_; }
    bool busy() const { return state_ != State::Idle; }
    bool counting() const { return state_ == State::Counting; }
    bool paused() const { return state_ == State::Paused; }

    /// Absolute expiry time; meaningful while counting.
    SimTime expiry() const { return expiry_; }
    /// Time left on a paused timer, or expiry - now while counting.
    double remaining() const;

    const std::string& name() const { return name_; }

  private:
    [[noreturn]] void fault(const char* what) const;
    void arm(double delay);
    void fire();

    Scheduler& sched_;
    std::string name_;
    std::function<void()> on_expire_;
    State state_ = State::Idle;
    SimTime expiry_ = 0.0;
    double remaining_ = 0.0;
    EventId event_ = 0;
};

} // namespace dcfsim
