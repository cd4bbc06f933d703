#pragma once

#include "dcfsim/mac/mac_802_11.hpp"
#include "dcfsim/phy/channel.hpp"
#include "dcfsim/phy/wireless_phy.hpp"
#include "dcfsim/scenario/config.hpp"
#include "dcfsim/scenario/ifq.hpp"
#include "dcfsim/scenario/metrics.hpp"
#include "dcfsim/sim/rng.hpp"
#include "dcfsim/sim/scheduler.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace dcfsim {

/// Independent stream seed for (run seed, node, purpose).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t node, std::uint64_t purpose);

/**
 * One simulation instance built from a ScenarioConfig: a channel, one
 * PHY/MAC/IFQ stack per node and a CBR source per flow.
 */
class Network
{
  public:
    /// Derives and validates a copy of `cfg`.
    explicit Network(ScenarioConfig cfg);
    ~Network();

    Network(const Network&) = delete;
    Network& operator=(const Network&) = delete;

    /// Extra consumer for every trace record (trace file, invariant checker).
    void add_observer(TraceSink sink) { observers_.push_back(std::move(sink)); }

    /// Run to the configured duration and return the window metrics.
    Metrics run();

    const ScenarioConfig& config() const { return cfg_; }
    Scheduler& scheduler() { return sched_; }
    std::size_t node_count() const { return nodes_.size(); }
    Mac80211& mac(std::size_t i);
    WirelessPhy& phy(std::size_t i);
    InterfaceQueue& ifq(std::size_t i);
    Channel& channel() { return *channel_; }

    /// Frames of flow i that are queued or outstanding at the MAC right now.
    std::uint64_t in_flight(std::size_t flow) const;

  private:
    struct Node;
    struct Source;

    void emit(const TraceRecord& r);
    std::size_t index_of(NodeId id) const;
    void offer(std::size_t flow);
    void cbr_tick(std::size_t flow);

    // Scheduler first: every timer below refers to it and must die before it.
    Scheduler sched_;
    ScenarioConfig cfg_;
    UidAllocator uids_;
    std::unique_ptr<Channel> channel_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<Source> sources_;
    std::vector<TraceSink> observers_;
    std::unique_ptr<MetricsCollector> collector_;
};

} // namespace dcfsim
