#include "dcfsim/scenario/config.hpp"

#include "dcfsim/sim/errors.hpp"
#include "dcfsim/sim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace dcfsim {

void
ScenarioConfig::derive()
{
    if (phy.rx_thresh == 0.0)
        phy.rx_thresh = radio::default_rx_thresh(radio);
    if (phy.cs_thresh == 0.0)
        phy.cs_thresh = radio::default_cs_thresh(radio);
    mac.derive(phy);
}

const NodeSpec*
ScenarioConfig::find_node(NodeId id) const
{
    for (const NodeSpec& n : nodes)
        if (n.id == id)
            return &n;
    return nullptr;
}

void
ScenarioConfig::validate() const
{
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw InputError("simulation.duration must be a positive number");
    if (!(warmup >= 0.0) || !(warmup < duration))
        throw InputError("simulation.warmup must lie in [0, duration)");
    radio.validate();
    phy.validate();
    mac.validate();
    if (mac.eifs == 0.0)
        throw InputError("mac.eifs is not derived");
    if (queue_capacity == 0)
        throw InputError("queue.capacity must be >= 1");

    if (nodes.empty())
        throw InputError("scenario needs at least one node");
    std::set<NodeId> ids;
    for (const NodeSpec& n : nodes) {
        const std::string tag = "node." + std::to_string(n.id);
        if (n.id == kBroadcast)
            throw InputError(tag + ": id is reserved for broadcast");
        if (!ids.insert(n.id).second)
            throw InputError(tag + ": duplicate node id");
        if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y) ||
            !(n.position.z > 0.0) || !std::isfinite(n.position.z))
            throw InputError(tag + ": position must be finite with z (antenna height) > 0");
        if (n.pt && !(*n.pt > 0.0))
            throw InputError(tag + ": pt must be > 0");
    }

    for (std::size_t i = 0; i < flows.size(); ++i) {
        const FlowSpec& f = flows[i];
        const std::string tag = "flow." + std::to_string(i);
        if (f.src == f.dst)
            throw InputError(tag + ": src and dst must differ");
        if (find_node(f.src) == nullptr)
            throw InputError(tag + ": unknown src node " + std::to_string(f.src));
        if (f.dst != kBroadcast && find_node(f.dst) == nullptr)
            throw InputError(tag + ": unknown dst node " + std::to_string(f.dst));
        if (f.payload == 0)
            throw InputError(tag + ": payload must be > 0");
        if (!(f.interval >= 0.0) || !std::isfinite(f.interval))
            throw InputError(tag + ": interval must be >= 0");
        if (!(f.start >= 0.0) || !(f.start < duration))
            throw InputError(tag + ": start must lie in [0, duration)");
        if (!(f.stop >= 0.0) || (f.stop > 0.0 && !(f.stop > f.start)))
            throw InputError(tag + ": stop must be 0 (end of run) or > start");
    }
}

ScenarioConfig
generate_random_scenario(const RandomScenarioParams& p)
{
    if (p.seed == 0)
        throw InputError("gen: seed cannot be 0");
    if (p.nodes < 2)
        throw InputError("gen: need at least 2 nodes");
    if (!(p.width > 0.0) || !(p.height > 0.0))
        throw InputError("gen: area dimensions must be > 0");
    const std::uint64_t pairs = std::uint64_t{p.nodes} * (p.nodes - 1);
    if (p.flows > pairs)
        throw InputError("gen: more flows than distinct (src, dst) pairs");

    ScenarioConfig c;
    c.duration = p.duration;
    c.warmup = std::min(1.0, p.duration / 2);
    c.seed = p.seed;

    Rng rng(p.seed);
    for (std::uint32_t i = 0; i < p.nodes; ++i) {
        NodeSpec n;
        n.id = i;
        n.position = {rng.uniform01() * p.width, rng.uniform01() * p.height, c.radio.ht};
        c.nodes.push_back(n);
    }

    std::set<std::pair<NodeId, NodeId>> used;
    while (c.flows.size() < p.flows) {
        const auto src = static_cast<NodeId>(rng.uniform_int(p.nodes - 1));
        const auto dst = static_cast<NodeId>(rng.uniform_int(p.nodes - 1));
        if (src == dst || !used.emplace(src, dst).second)
            continue;
        FlowSpec f;
        f.src = src;
        f.dst = dst;
        f.payload = p.payload;
        f.interval = p.interval;
        f.start = rng.uniform01() * std::min(1.0, p.duration / 2);
        c.flows.push_back(f);
    }

    c.derive();
    c.validate();
    return c;
}

} // namespace dcfsim
