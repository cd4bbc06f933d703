#pragma once

#include "dcfsim/mac/mac_params.hpp"
#include "dcfsim/phy/frame.hpp"
#include "dcfsim/phy/phy_params.hpp"
#include "dcfsim/radio/fading.hpp"
#include "dcfsim/radio/propagation.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dcfsim {

struct NodeSpec
{
    NodeId id = 0;
    Vec3 position{0.0, 0.0, 1.5}; ///< z is the antenna height
    std::optional<double> pt;     ///< W; overrides the radio default for this node

    bool operator==(const NodeSpec&) const = default;
};

/// Constant-bit-rate source feeding one node's interface queue.
/// interval == 0 makes the source saturated: the queue is kept full.
struct FlowSpec
{
    NodeId src = 0;
    NodeId dst = 1;
    std::uint32_t payload = 1000; ///< bytes
    double interval = 0.0;        ///< s
    double start = 0.0;
    double stop = 0.0;            ///< 0 means "until the end of the run"

    bool saturated() const { return interval == 0.0; }
    bool operator==(const FlowSpec&) const = default;
};

struct ScenarioConfig
{
    double duration = 10.0;     ///< s
    double warmup = 1.0;        ///< start of the measurement window, s
    std::uint64_t seed = 1;
    bool trace = false;

    radio::RadioParams radio;   ///< ht/hr here are only used to derive thresholds
    radio::FadingModel fading = radio::FadingModel::None;
    PhyParams phy;
    MacParams mac;
    std::uint32_t queue_capacity = 50;

    std::vector<NodeSpec> nodes;
    std::vector<FlowSpec> flows;

    /// Fill derived values (thresholds, EIFS) so the config is self-contained.
    void derive();

    /// Throws InputError naming the first violated invariant. Expects a
    /// derived config.
    void validate() const;

    const NodeSpec* find_node(NodeId id) const;
    double flow_stop(const FlowSpec& f) const { return f.stop > 0.0 ? f.stop : duration; }

    bool operator==(const ScenarioConfig&) const = default;
};

struct RandomScenarioParams
{
    std::uint32_t nodes = 10;
    double width = 500.0;   ///< m
    double height = 500.0;  ///< m
    std::uint32_t flows = 5;
    std::uint32_t payload = 1000;
    double interval = 0.1;  ///< s between CBR frames
    double duration = 10.0;
    std::uint64_t seed = 1;
};

/// Uniform static placement and distinct random (src, dst) CBR flows.
/// Rejects seed 0 and flow counts that cannot be made distinct.
ScenarioConfig generate_random_scenario(const RandomScenarioParams& p);

} // namespace dcfsim
