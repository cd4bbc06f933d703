#pragma once

#include "dcfsim/phy/frame.hpp"
#include "dcfsim/sim/scheduler.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dcfsim {

enum class TraceKind : std::uint8_t {
    RxState,       ///< aux = new MacState
    TxState,       ///< aux = new MacState
    Nav,           ///< value = new NAV expiry
    Cw,            ///< aux = new contention window
    BackoffStart,  ///< aux = slots drawn, value = 1 if counting else 0
    BackoffPause,  ///< aux = slots left
    BackoffResume, ///< aux = slots left
    BackoffExpire,
    BackoffIdle,   ///< backoff expired with nothing to send
    Transmit,      ///< uid/frame_type/peer=dst/aux=attempt
    Capture,       ///< uid = discarded frame, peer = its sender, aux = surviving sender
    Collision,     ///< uid = lost frame, peer = its sender
    RxDrop,        ///< uid, peer = sender, aux = reason code
    Deliver,       ///< uid, peer = sender, flow, aux = payload bytes
    Duplicate,
    TxSuccess,     ///< uid, flow, aux = attempts
    TxDrop,        ///< uid, flow, aux = attempts
    Enqueue,       ///< uid, flow
    QueueDrop,     ///< uid, flow
};

std::string_view to_string(TraceKind k);

enum class RxDropReason : std::int64_t { Collision = 1, Error = 2, WhileTransmitting = 3, Busy = 4, InvalidState = 5 };

/// One structured record per MAC state transition or frame outcome.
struct TraceRecord
{
    SimTime time = 0.0;
    NodeId node = 0;
    TraceKind kind = TraceKind::RxState;
    std::uint64_t uid = 0;
    FrameType frame_type = FrameType::Data;
    NodeId peer = 0;
    FlowId flow = kNoFlow;
    std::int64_t aux = 0;
    double value = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Human-readable detail column for a record.
std::string trace_detail(const TraceRecord& r);

/// "time node kind uid detail" on one line.
void write_trace_line(std::ostream& os, const TraceRecord& r);

} // namespace dcfsim
