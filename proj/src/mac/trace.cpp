#include "dcfsim/mac/trace.hpp"

#include "dcfsim/mac/mac_state.hpp"

#include <cstdio>
#include <ostream>

namespace dcfsim {

std::string_view
to_string(TraceKind k)
{
    switch (k) {
    case TraceKind::RxState:
        return "rx_state";
    case TraceKind::TxState:
        return "tx_state";
    case TraceKind::Nav:
        return "nav";
    case TraceKind::Cw:
        return "cw";
    case TraceKind::BackoffStart:
        return "backoff_start";
    case TraceKind::BackoffPause:
        return "backoff_pause";
    case TraceKind::BackoffResume:
        return "backoff_resume";
    case TraceKind::BackoffExpire:
        return "backoff_expire";
    case TraceKind::BackoffIdle:
        return "backoff_idle";
    case TraceKind::Transmit:
        return "tx";
    case TraceKind::Capture:
        return "capture";
    case TraceKind::Collision:
        return "collision";
    case TraceKind::RxDrop:
        return "rx_drop";
    case TraceKind::Deliver:
        return "deliver";
    case TraceKind::Duplicate:
        return "duplicate";
    case TraceKind::TxSuccess:
        return "tx_ok";
    case TraceKind::TxDrop:
        return "tx_drop";
    case TraceKind::Enqueue:
        return "enqueue";
    case TraceKind::QueueDrop:
        return "queue_drop";
    }
    return "?";
}

std::string
trace_detail(const TraceRecord& r)
{
    char buf[160];
    switch (r.kind) {
    case TraceKind::RxState:
    case TraceKind::TxState:
        return std::string(to_string(static_cast<MacState>(r.aux)));
    case TraceKind::Nav:
        std::snprintf(buf, sizeof buf, "until=%.9f", r.value);
        return buf;
    case TraceKind::Cw:
        return "cw=" + std::to_string(r.aux);
    case TraceKind::BackoffStart:
        std::snprintf(buf, sizeof buf, "slots=%lld %s", static_cast<long long>(r.aux),
                      r.value != 0.0 ? "counting" : "frozen");
        return buf;
    case TraceKind::BackoffPause:
    case TraceKind::BackoffResume:
        return "slots_left=" + std::to_string(r.aux);
    case TraceKind::Transmit:
        std::snprintf(buf, sizeof buf, "%s dst=%u attempt=%lld flow=%d",
                      std::string(to_string(r.frame_type)).c_str(), r.peer,
                      static_cast<long long>(r.aux), r.flow);
        return buf;
    case TraceKind::Capture:
        std::snprintf(buf, sizeof buf, "%s from=%u kept_from=%lld",
                      std::string(to_string(r.frame_type)).c_str(), r.peer,
                      static_cast<long long>(r.aux));
        return buf;
    case TraceKind::Collision:
        std::snprintf(buf, sizeof buf, "%s from=%u", std::string(to_string(r.frame_type)).c_str(),
                      r.peer);
        return buf;
    case TraceKind::RxDrop:
        std::snprintf(buf, sizeof buf, "%s from=%u reason=%lld",
                      std::string(to_string(r.frame_type)).c_str(), r.peer,
                      static_cast<long long>(r.aux));
        return buf;
    case TraceKind::Deliver:
    case TraceKind::Duplicate:
        std::snprintf(buf, sizeof buf, "from=%u flow=%d bytes=%lld", r.peer, r.flow,
                      static_cast<long long>(r.aux));
        return buf;
    case TraceKind::TxSuccess:
    case TraceKind::TxDrop:
        std::snprintf(buf, sizeof buf, "flow=%d attempts=%lld", r.flow,
                      static_cast<long long>(r.aux));
        return buf;
    case TraceKind::Enqueue:
    case TraceKind::QueueDrop:
        return "flow=" + std::to_string(r.flow);
    case TraceKind::BackoffExpire:
    case TraceKind::BackoffIdle:
        break;
    }
    return "-";
}

void
write_trace_line(std::ostream& os, const TraceRecord& r)
{
    char t[32];
    std::snprintf(t, sizeof t, "%.9f", r.time);
    os << t << ' ' << r.node << ' ' << to_string(r.kind) << ' ' << r.uid << ' ' << trace_detail(r)
       << '\n';
}

} // namespace dcfsim
