#include "dcfsim/scenario/invariants.hpp"

#include "dcfsim/mac/mac_state.hpp"

#include <algorithm>
#include <sstream>

namespace dcfsim {

namespace {

// Keep the report readable when something goes badly wrong.
constexpr std::size_t kMaxViolations = 50;

bool
is_pow2_minus_one(std::uint64_t v)
{
    return ((v + 1) & v) == 0;
}

} // namespace

InvariantChecker::InvariantChecker(const ScenarioConfig& cfg) : cfg_(cfg)
{
    cfg_.derive();
    for (const NodeSpec& n : cfg_.nodes)
        nodes_[n.id] = NodeView{0.0, cfg_.mac.cw_min};
}

void
InvariantChecker::violate(const TraceRecord& r, const std::string& what)
{
    if (violations_.size() >= kMaxViolations)
        return;
    std::ostringstream os;
    os << "t=" << r.time << " node " << r.node << " " << to_string(r.kind) << ": " << what;
    violations_.push_back(os.str());
}

void
InvariantChecker::operator()(const TraceRecord& r)
{
    ++records_;
    if (r.time < last_time_)
        violate(r, "time went backwards");
    last_time_ = std::max(last_time_, r.time);

    auto it = nodes_.find(r.node);
    if (it == nodes_.end()) {
        violate(r, "record from an unknown node");
        return;
    }
    NodeView& v = it->second;
    const MacParams& mac = cfg_.mac;
    // NAV values are whole microseconds from now; allow for float rounding.
    constexpr double eps = 1e-12;

    switch (r.kind) {
    case TraceKind::RxState:
        if (!is_rx_state(static_cast<MacState>(r.aux)))
            violate(r, "rx_state outside {IDLE, RECV, COLL}");
        break;
    case TraceKind::TxState:
        if (!is_tx_state(static_cast<MacState>(r.aux)))
            violate(r, "tx_state outside {IDLE, SEND, RTS, CTS, ACK}");
        break;
    case TraceKind::Nav:
        if (!(r.value > v.nav))
            violate(r, "NAV did not move forward");
        if (r.value + eps < r.time)
            violate(r, "NAV set into the past");
        v.nav = std::max(v.nav, r.value);
        break;
    case TraceKind::Cw: {
        const auto cw = static_cast<std::uint64_t>(r.aux);
        if (r.aux < 0 || cw < mac.cw_min || cw > mac.cw_max)
            violate(r, "cw outside [cw_min, cw_max]");
        else if (!is_pow2_minus_one(cw) && cw != mac.cw_max)
            violate(r, "cw is not of the form 2^k - 1");
        v.cw = static_cast<std::uint32_t>(cw);
        break;
    }
    case TraceKind::BackoffStart:
        if (r.aux < 0 || static_cast<std::uint64_t>(r.aux) > v.cw)
            violate(r, "backoff draw outside [0, cw]");
        break;
    case TraceKind::Transmit:
    case TraceKind::TxSuccess:
    case TraceKind::TxDrop: {
        if (r.kind == TraceKind::Transmit && r.frame_type != FrameType::Data)
            break;
        const std::uint32_t limit = std::max(mac.short_retry_limit, mac.long_retry_limit);
        if (r.aux < 1 || static_cast<std::uint64_t>(r.aux) > limit)
            violate(r, "DATA attempt count outside [1, retry limit]");
        break;
    }
    default:
        break;
    }
}

void
InvariantChecker::check_conservation(const Metrics& m)
{
    for (std::size_t i = 0; i < m.flows.size(); ++i) {
        const FlowMetrics& f = m.flows[i];
        if (f.dst == kBroadcast)
            continue;
        const FlowCounts& c = f.total;
        std::ostringstream os;
        os << "flow " << i << ": ";
        if (c.offered != c.acked + c.retry_drops + c.queue_drops + f.in_flight_at_end) {
            os << "offered " << c.offered << " != acked " << c.acked << " + retry drops "
               << c.retry_drops << " + queue drops " << c.queue_drops << " + in flight "
               << f.in_flight_at_end;
            violations_.push_back(os.str());
            continue;
        }
        if (c.delivered_frames < c.acked ||
            c.delivered_frames > c.acked + c.retry_drops + f.in_flight_at_end) {
            os << "delivered " << c.delivered_frames << " outside [acked " << c.acked
               << ", acked + retry drops + in flight]";
            violations_.push_back(os.str());
        }
    }
}

} // namespace dcfsim
