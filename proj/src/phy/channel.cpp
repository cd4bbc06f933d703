#include "dcfsim/phy/channel.hpp"

#include "dcfsim/phy/wireless_phy.hpp"
#include "dcfsim/radio/propagation.hpp"

#include <algorithm>

namespace dcfsim {

void
Channel::add(WirelessPhy& phy)
{
    phys_.push_back(&phy);
    phy.attach(*this);
    dist_cst_ = -1.0;
}

void
Channel::prepare()
{
    dist_cst_ = 0.0;
    if (phys_.empty())
        return;
    double highest_z = 0.0;
    double max_pt = 0.0;
    for (const WirelessPhy* p : phys_) {
        highest_z = std::max(highest_z, p->position().z);
        max_pt = std::max(max_pt, p->tx_power());
    }
    radio::RadioParams rp = phys_.front()->radio();
    rp.pt = max_pt;
    rp.ht = highest_z;
    rp.hr = highest_z;
    double min_cs = phys_.front()->params().cs_thresh;
    for (const WirelessPhy* p : phys_)
        min_cs = std::min(min_cs, p->params().cs_thresh);
    dist_cst_ = radio::get_dist(min_cs, rp);
}

void
Channel::deliver(const Frame& frame, const WirelessPhy& sender)
{
    if (dist_cst_ < 0.0)
        prepare();
    for (WirelessPhy* rx : phys_) {
        if (rx == &sender)
            continue;
        const double d = distance(sender.position(), rx->position());
        if (d > dist_cst_)
            continue;
        sched_.schedule(d / radio::kSpeedOfLight, [rx, copy = frame]() mutable {
            rx->send_up(std::move(copy));
        });
    }
}

} // namespace dcfsim
