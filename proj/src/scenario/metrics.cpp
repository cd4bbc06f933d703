#include "dcfsim/scenario/metrics.hpp"

#include "dcfsim/sim/errors.hpp"

#include <string>

namespace dcfsim {

double
Metrics::throughput_bps() const
{
    double s = 0.0;
    for (const FlowMetrics& f : flows)
        s += f.throughput_bps;
    return s;
}

std::uint64_t
Metrics::captures() const
{
    std::uint64_t s = 0;
    for (const auto& [key, n] : captures_at)
        s += n;
    return s;
}

std::uint64_t
Metrics::collisions() const
{
    std::uint64_t s = 0;
    for (const auto& [key, n] : collisions_at)
        s += n;
    return s;
}

std::uint64_t
Metrics::retry_drops() const
{
    std::uint64_t s = 0;
    for (const FlowMetrics& f : flows)
        s += f.window.retry_drops;
    return s;
}

std::uint64_t
Metrics::queue_drops() const
{
    std::uint64_t s = 0;
    for (const FlowMetrics& f : flows)
        s += f.window.queue_drops;
    return s;
}

double
Metrics::share(std::size_t i) const
{
    const double total = throughput_bps();
    return total > 0.0 ? flows.at(i).throughput_bps / total : 0.0;
}

const NodeMetrics*
Metrics::node(NodeId id) const
{
    for (const NodeMetrics& n : nodes)
        if (n.id == id)
            return &n;
    return nullptr;
}

MetricsCollector::MetricsCollector(const ScenarioConfig& cfg, double t0, double t1)
{
    if (!(t1 > t0))
        throw InputError("metrics: window end must be after its start");
    m_.t0 = t0;
    m_.t1 = t1;
    for (const FlowSpec& f : cfg.flows) {
        FlowMetrics fm;
        fm.src = f.src;
        fm.dst = f.dst;
        m_.flows.push_back(fm);
    }
    for (const NodeSpec& n : cfg.nodes) {
        node_index_[n.id] = m_.nodes.size();
        NodeMetrics nm;
        nm.id = n.id;
        m_.nodes.push_back(nm);
    }
}

NodeMetrics&
MetricsCollector::node(NodeId id)
{
    return m_.nodes[node_index_.at(id)];
}

void
MetricsCollector::count_flow(FlowId flow, const TraceRecord& r, bool in_window)
{
    if (flow < 0 || static_cast<std::size_t>(flow) >= m_.flows.size())
        return;
    FlowMetrics& fm = m_.flows[static_cast<std::size_t>(flow)];
    for (FlowCounts* c : {&fm.total, in_window ? &fm.window : nullptr}) {
        if (c == nullptr)
            continue;
        switch (r.kind) {
        case TraceKind::Enqueue:
            ++c->offered;
            break;
        case TraceKind::QueueDrop:
            ++c->offered;
            ++c->queue_drops;
            break;
        case TraceKind::Transmit:
            ++c->transmissions;
            break;
        case TraceKind::TxSuccess:
            ++c->acked;
            break;
        case TraceKind::TxDrop:
            ++c->retry_drops;
            break;
        case TraceKind::Deliver:
            ++c->delivered_frames;
            c->delivered_bytes += static_cast<std::uint64_t>(r.aux);
            break;
        default:
            break;
        }
    }
}

void
MetricsCollector::operator()(const TraceRecord& r)
{
    const bool in_window = r.time >= m_.t0 && r.time <= m_.t1;

    switch (r.kind) {
    case TraceKind::Enqueue:
    case TraceKind::TxSuccess:
    case TraceKind::Deliver:
        count_flow(r.flow, r, in_window);
        break;
    case TraceKind::QueueDrop:
        count_flow(r.flow, r, in_window);
        if (in_window)
            ++node(r.node).queue_drops;
        break;
    case TraceKind::TxDrop:
        count_flow(r.flow, r, in_window);
        if (in_window)
            ++node(r.node).retry_drops;
        break;
    case TraceKind::Transmit:
        if (r.frame_type != FrameType::Data)
            break;
        count_flow(r.flow, r, in_window);
        if (in_window) {
            ++node(r.node).frames_sent;
            if (r.aux > 1)
                ++node(r.node).retransmissions;
        }
        break;
    case TraceKind::Capture: {
        if (!in_window)
            break;
        const auto winner = static_cast<NodeId>(r.aux);
        ++m_.captures_at[{r.node, winner}];
        if (node_index_.contains(winner))
            ++node(winner).captures_won;
        for (FlowMetrics& fm : m_.flows)
            if (fm.dst == r.node && fm.src == winner)
                ++fm.window.captures;
        break;
    }
    case TraceKind::Collision:
        if (!in_window)
            break;
        ++m_.collisions_at[{r.node, r.peer}];
        ++node(r.node).collisions_observed;
        for (FlowMetrics& fm : m_.flows)
            if (fm.dst == r.node && fm.src == r.peer)
                ++fm.window.collisions;
        break;
    default:
        break;
    }
}

Metrics
MetricsCollector::finish(const std::vector<std::uint64_t>& in_flight) const
{
    Metrics m = m_;
    const double span = m.t1 - m.t0;
    for (std::size_t i = 0; i < m.flows.size(); ++i) {
        FlowMetrics& f = m.flows[i];
        f.throughput_bps = 8.0 * static_cast<double>(f.window.delivered_bytes) / span;
        if (i < in_flight.size())
            f.in_flight_at_end = in_flight[i];
    }
    return m;
}

} // namespace dcfsim
