#include "dcfsim/phy/wireless_phy.hpp"

#include "dcfsim/phy/channel.hpp"
#include "dcfsim/sim/errors.hpp"
#include "dcfsim/sim/rng.hpp"

#include <string>
#include <utility>

namespace dcfsim {

WirelessPhy::WirelessPhy(Scheduler& sched, NodeId id, Vec3 position, radio::RadioParams radio,
                         PhyParams phy, radio::FadingModel fading, Rng& rng)
  : sched_(sched),
    id_(id),
    position_(position),
    radio_(radio),
    phy_(phy),
    fading_(fading),
    rng_(rng)
{
    // Antenna height follows the node's z coordinate.
    radio_.ht = position_.z;
    radio_.hr = position_.z;
}

bool
WirelessPhy::transmitting() const
{
    return sched_.now() < busy_until_;
}

void
WirelessPhy::send_down(Frame frame, double airtime)
{
    if (frame.direction != Direction::Down)
        throw ProtocolFault("phy " + std::to_string(id_) + ": send_down on an upward frame");
    if (transmitting())
        throw ProtocolFault("phy " + std::to_string(id_) + ": overlapping transmit");
    if (channel_ == nullptr)
        throw ProtocolFault("phy " + std::to_string(id_) + ": no channel attached");

    frame.txinfo = TxInfo{
        .tx_node = id_,
        .tx_power = radio_.pt,
        .gt = radio_.gt,
        .gr = radio_.gr,
        .antenna_height = position_.z,
        .tx_position = position_,
        .lambda = radio_.lambda,
        .capture_threshold = phy_.cp_ratio(),
        .rx_power = std::nullopt,
    };
    frame.error = false;
    busy_until_ = sched_.now() + airtime;
    channel_->deliver(frame, *this);
}

double
WirelessPhy::mean_rx_power(const TxInfo& tx) const
{
    radio::RadioParams link = radio_;
    link.pt = tx.tx_power;
    link.gt = tx.gt;
    link.ht = tx.antenna_height;
    link.hr = position_.z;
    link.lambda = tx.lambda;
    return radio::two_ray_pr(link, distance(tx.tx_position, position_));
}

ReceptionClass
WirelessPhy::send_up(Frame frame)
{
    if (frame.txinfo.rx_power)
        throw ProtocolFault("phy " + std::to_string(id_) + ": rx_power already set");

    const double pr = radio::apply_fading(fading_, mean_rx_power(frame.txinfo), rng_);
    frame.txinfo.rx_power = pr;
    frame.direction = Direction::Up;

    const ReceptionClass cls = classify(pr, phy_);
    if (cls == ReceptionClass::NotSensed)
        return cls; // cannot hear it
    frame.error = (cls == ReceptionClass::SensedError);
    if (to_mac_)
        to_mac_(std::move(frame));
    return cls;
}

} // namespace dcfsim
