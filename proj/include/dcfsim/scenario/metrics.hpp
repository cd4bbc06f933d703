#pragma once

#include "dcfsim/mac/trace.hpp"
#include "dcfsim/scenario/config.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dcfsim {

struct FlowCounts
{
    std::uint64_t offered = 0;      ///< frames generated (accepted + queue drops)
    std::uint64_t queue_drops = 0;
    std::uint64_t transmissions = 0; ///< DATA attempts on air
    std::uint64_t acked = 0;
    std::uint64_t retry_drops = 0;
    std::uint64_t delivered_frames = 0;
    std::uint64_t delivered_bytes = 0;
    std::uint64_t captures = 0;     ///< at dst, a frame of src survived an overlap
    std::uint64_t collisions = 0;   ///< at dst, a frame of src was lost to an overlap
};

struct FlowMetrics
{
    NodeId src = 0;
    NodeId dst = 0;
    FlowCounts window;  ///< events inside the measurement window
    FlowCounts total;   ///< whole run, for conservation checks
    std::uint64_t in_flight_at_end = 0;
    double throughput_bps = 0.0;
};

struct NodeMetrics
{
    NodeId id = 0;
    std::uint64_t frames_sent = 0;      ///< DATA transmissions
    std::uint64_t retransmissions = 0;
    std::uint64_t retry_drops = 0;
    std::uint64_t queue_drops = 0;
    std::uint64_t collisions_observed = 0; ///< collision records at this receiver
    std::uint64_t captures_won = 0;     ///< overlaps at any receiver won by this node's frame
};

/// Window-scoped results of one run. Rates use the window length.
struct Metrics
{
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<FlowMetrics> flows;
    std::vector<NodeMetrics> nodes;
    /// (receiver, surviving sender) -> captures; (receiver, lost sender) -> collisions.
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> captures_at;
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> collisions_at;

    double throughput_bps() const;
    std::uint64_t captures() const;
    std::uint64_t collisions() const;
    std::uint64_t retry_drops() const;
    std::uint64_t queue_drops() const;
    /// Share of total delivered throughput carried by flow i (0 when nothing
    /// was delivered).
    double share(std::size_t i) const;
    const NodeMetrics* node(NodeId id) const;
};

/// Trace consumer that accumulates Metrics over a window [t0, t1].
class MetricsCollector
{
  public:
    MetricsCollector(const ScenarioConfig& cfg, double t0, double t1);

    void operator()(const TraceRecord& r);

    /// Finalize throughput; `in_flight` is per-flow frames still queued or
    /// outstanding at the MAC when the run stopped.
    Metrics finish(const std::vector<std::uint64_t>& in_flight) const;

  private:
    NodeMetrics& node(NodeId id);
    void count_flow(FlowId flow, const TraceRecord& r, bool in_window);

    Metrics m_;
    std::map<NodeId, std::size_t> node_index_;
};

} // namespace dcfsim
