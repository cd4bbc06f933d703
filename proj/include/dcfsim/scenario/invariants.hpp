#pragma once

#include "dcfsim/mac/trace.hpp"
#include "dcfsim/scenario/config.hpp"
#include "dcfsim/scenario/metrics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dcfsim {

/**
 * Online checker for per-node MAC trace invariants:
 *  - record times never go backwards;
 *  - rx/tx states stay inside their domains;
 *  - the NAV only ever moves forward and never into the past;
 *  - the contention window stays in [cw_min, cw_max] and has the 2^k - 1
 *    form, and each backoff draw lies in [0, cw];
 *  - no DATA frame is attempted more often than its retry limit allows.
 * check_conservation() adds the per-flow frame accounting once a run ends.
 */
class InvariantChecker
{
  public:
    explicit InvariantChecker(const ScenarioConfig& cfg);

    void operator()(const TraceRecord& r);

    /// offered = acked + retry_drops + queue_drops + in_flight and
    /// acked <= delivered <= acked + retry_drops + in_flight, per unicast flow.
    void check_conservation(const Metrics& m);

    const std::vector<std::string>& violations() const { return violations_; }
    std::uint64_t records() const { return records_; }
    bool ok() const { return violations_.empty(); }

  private:
    struct NodeView
    {
        double nav = 0.0;
        std::uint32_t cw = 0;
    };

    void violate(const TraceRecord& r, const std::string& what);

    ScenarioConfig cfg_;
    std::map<NodeId, NodeView> nodes_;
    double last_time_ = 0.0;
    std::uint64_t records_ = 0;
    std::vector<std::string> violations_;
};

} // namespace dcfsim
