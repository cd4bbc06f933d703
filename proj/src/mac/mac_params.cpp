#include "dcfsim/mac/mac_params.hpp"

#include "dcfsim/mac/mac_state.hpp"
#include "dcfsim/phy/phy_params.hpp"
#include "dcfsim/sim/errors.hpp"

#include <cmath>

namespace dcfsim {

void
MacParams::derive(const PhyParams& phy)
{
    if (eifs == 0.0)
        eifs = sifs + difs + txtime(ack_size, basic_rate, phy.plcp_overhead);
}

void
MacParams::validate() const
{
    if (!(slot_time > 0.0) || !(sifs > 0.0))
        throw InputError("mac: slot_time and sifs must be > 0");
    if (std::abs(difs - (sifs + 2.0 * slot_time)) > 1e-12)
        throw InputError("mac: difs must equal sifs + 2 * slot_time");
    if (!(eifs >= difs))
        throw InputError("mac: eifs must be >= difs");
    if (cw_min == 0 || cw_min > cw_max)
        throw InputError("mac: need 0 < cw_min <= cw_max");
    if (short_retry_limit == 0 || long_retry_limit == 0)
        throw InputError("mac: retry limits must be >= 1");
    if (!(basic_rate > 0.0))
        throw InputError("mac: basic_rate must be > 0");
    if (!(max_propagation_delay >= 0.0))
        throw InputError("mac: max_propagation_delay must be >= 0");
    if (rts_size == 0 || cts_size == 0 || ack_size == 0)
        throw InputError("mac: control frame sizes must be > 0");
}

std::string_view
to_string(MacState s)
{
    switch (s) {
    case MacState::Idle:
        return "IDLE";
    case MacState::Recv:
        return "RECV";
    case MacState::Send:
        return "SEND";
    case MacState::Rts:
        return "RTS";
    case MacState::Cts:
        return "CTS";
    case MacState::Ack:
        return "ACK";
    case MacState::Coll:
        return "COLL";
    }
    return "?";
}

} // namespace dcfsim
