#pragma once

#include <cstdint>
#include <string_view>

namespace dcfsim {

enum class MacState : std::uint16_t {
    Idle = 0x0000,
    Recv = 0x0010,
    Send = 0x0100,
    Rts = 0x0200,
    Cts = 0x0400,
    Ack = 0x0800,
    Coll = 0x1000,
};

std::string_view to_string(MacState s);

inline bool
is_rx_state(MacState s)
{
    return s == MacState::Idle || s == MacState::Recv || s == MacState::Coll;
}

inline bool
is_tx_state(MacState s)
{
    return s == MacState::Idle || s == MacState::Send || s == MacState::Rts ||
           s == MacState::Cts || s == MacState::Ack;
}

} // namespace dcfsim
