#pragma once

#include "dcfsim/phy/frame.hpp"
#include "dcfsim/phy/phy_params.hpp"
#include "dcfsim/radio/fading.hpp"
#include "dcfsim/radio/propagation.hpp"
#include "dcfsim/sim/scheduler.hpp"

#include <functional>

namespace dcfsim {

class Channel;
class Rng;

/**
 * Per-node network interface.
 *
 * send_down() stamps TxInfo and hands the frame to the channel. Each copy the
 * channel delivers goes through send_up(), which computes the received power
 * (two-ray path loss, then optional fading) and classifies it against the
 * carrier-sense and reception thresholds. Frames that cannot be sensed never
 * reach the MAC.
 */
class WirelessPhy
{
  public:
    using MacReceiver = std::function<void(Frame)>;

    WirelessPhy(Scheduler& sched, NodeId id, Vec3 position, radio::RadioParams radio,
                PhyParams phy, radio::FadingModel fading, Rng& rng);

    WirelessPhy(const WirelessPhy&) = delete;
    WirelessPhy& operator=(const WirelessPhy&) = delete;

    void attach(Channel& channel) { channel_ = &channel; }
    void set_mac_receiver(MacReceiver r) { to_mac_ = std::move(r); }

    /// Transmit a frame occupying the air for `airtime` seconds. A second
    /// transmit before the first has finished throws ProtocolFault.
    void send_down(Frame frame, double airtime);

    /// Receive one channel copy. Returns the classification; sensed frames are
    /// forwarded to the MAC with txinfo.rx_power filled in.
    ReceptionClass send_up(Frame frame);

    /// Mean received power for a frame stamped by `tx`, before fading.
    double mean_rx_power(const TxInfo& tx) const;

    NodeId id() const { return id_; }
    const Vec3& position() const { return position_; }
    double tx_power() const { return radio_.pt; }
    const radio::RadioParams& radio() const { return radio_; }
    const PhyParams& params() const { return phy_; }
    bool transmitting() const;

  private:
    Scheduler& sched_;
    NodeId id_;
    Vec3 position_;
    radio::RadioParams radio_;
    PhyParams phy_;
    radio::FadingModel fading_;
    Rng& rng_;
    Channel* channel_ = nullptr;
    MacReceiver to_mac_;
    SimTime busy_until_ = -1.0;
};

} // namespace dcfsim
