#pragma once

#include "dcfsim/sim/timer.hpp"

#include <cstdint>
#include <functional>

namespace dcfsim {

class Rng;

/**
 * DCF backoff countdown.
 *
 * A start draws U{0..cw} slots. When started on an idle medium the countdown
 * is preceded by an optional DIFS lead-in; on a busy medium it starts frozen.
 * pause() keeps only whole slots that have not yet elapsed (time spent in the
 * lead-in does not count); resume(difs) prepends a fresh DIFS.
 */
class BackoffTimer
{
  public:
    BackoffTimer(Scheduler& sched, Rng& rng, double slot_time, std::function<void()> on_expire);

    void start(std::uint32_t cw, bool idle, double difs = 0.0);
    void pause();
    void resume(double difs);
    void cancel();

    bool busy() const { return timer_.busy() || paused_; }
    bool paused() const { return paused_; }
    bool counting() const { return timer_.counting(); }

    std::uint32_t slots_left() const { return slots_; }
    std::uint32_t last_draw() const { return drawn_; }
    SimTime expiry() const { return timer_.expiry(); }

  private:
    Scheduler& sched_;
    Rng& rng_;
    double slot_;
    Timer timer_;
    bool paused_ = false;
    std::uint32_t drawn_ = 0;
    std::uint32_t slots_ = 0;
    SimTime stime_ = 0.0;
    double lead_ = 0.0;
};

} // namespace dcfsim
