#pragma once

#include "dcfsim/phy/frame.hpp"
#include "dcfsim/sim/scheduler.hpp"

#include <vector>

namespace dcfsim {

class WirelessPhy;

/**
 * Shared wireless medium. A transmitted frame is copied to every other
 * attached interface within the carrier-sense distance, arriving after the
 * free-space propagation delay.
 */
class Channel
{
  public:
    explicit Channel(Scheduler& sched) : sched_(sched) {}

    Channel(const Channel&) = delete;
    Channel& operator=(const Channel&) = delete;

    void add(WirelessPhy& phy);

    /// Recompute the delivery distance from the attached interfaces: the
    /// carrier-sense range of the strongest transmitter at the highest
    /// antenna. Called automatically on the first delivery.
    void prepare();

    /// Override the delivery distance (tests).
    void set_delivery_distance(double d) { dist_cst_ = d; }
    double delivery_distance() const { return dist_cst_; }

    /// Schedule one independent copy per in-range receiver.
    void deliver(const Frame& frame, const WirelessPhy& sender);

    const std::vector<WirelessPhy*>& interfaces() const { return phys_; }

  private:
    Scheduler& sched_;
    std::vector<WirelessPhy*> phys_;
    double dist_cst_ = -1.0;
};

} // namespace dcfsim
