#include "dcfsim/scenario/network.hpp"

#include "dcfsim/sim/errors.hpp"

#include <string>
#include <utility>

namespace dcfsim {

namespace {

std::uint64_t
splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum : std::uint64_t { kStreamBackoff = 1, kStreamFading = 2 };

} // namespace

std::uint64_t
derive_seed(std::uint64_t seed, std::uint64_t node, std::uint64_t purpose)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ node) ^ purpose);
}

struct Network::Node
{
    Node(Network& net, const NodeSpec& spec)
      : backoff_rng(derive_seed(net.cfg_.seed, spec.id, kStreamBackoff)),
        fading_rng(derive_seed(net.cfg_.seed, spec.id, kStreamFading)),
        phy(net.sched_, spec.id, spec.position, radio_for(net.cfg_, spec), net.cfg_.phy,
            net.cfg_.fading, fading_rng),
        mac(net.sched_, backoff_rng, net.uids_, spec.id, net.cfg_.mac, net.cfg_.phy, phy),
        ifq(net.cfg_.queue_capacity,
            [this](Frame f, std::function<void()> done) { mac.send(std::move(f), std::move(done)); })
    {
    }

    static radio::RadioParams radio_for(const ScenarioConfig& cfg, const NodeSpec& spec)
    {
        radio::RadioParams r = cfg.radio;
        if (spec.pt)
            r.pt = *spec.pt;
        return r;
    }

    Rng backoff_rng;
    Rng fading_rng;
    WirelessPhy phy;
    Mac80211 mac;
    InterfaceQueue ifq;
};

struct Network::Source
{
    std::size_t flow;
    std::size_t node;
    std::uint64_t ticks = 0;
};

Network::Network(ScenarioConfig cfg) : cfg_(std::move(cfg))
{
    cfg_.derive();
    cfg_.validate();

    channel_ = std::make_unique<Channel>(sched_);
    for (const NodeSpec& spec : cfg_.nodes) {
        auto node = std::make_unique<Node>(*this, spec);
        node->phy.set_mac_receiver([m = &node->mac](Frame f) { m->recv(std::move(f)); });
        node->mac.set_trace([this](const TraceRecord& r) { emit(r); });
        channel_->add(node->phy);
        nodes_.push_back(std::move(node));
    }
    channel_->prepare();

    for (std::size_t i = 0; i < cfg_.flows.size(); ++i)
        sources_.push_back(Source{i, index_of(cfg_.flows[i].src)});

    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        nodes_[n]->ifq.on_dequeue([this](const Frame& f) {
            const FlowSpec& spec = cfg_.flows.at(static_cast<std::size_t>(f.flow));
            const double t = sched_.now();
            if (spec.saturated() && t >= spec.start && t < cfg_.flow_stop(spec))
                offer(static_cast<std::size_t>(f.flow));
        });
    }

    collector_ = std::make_unique<MetricsCollector>(cfg_, cfg_.warmup, cfg_.duration);
}

Network::~Network() = default;

std::size_t
Network::index_of(NodeId id) const
{
    for (std::size_t i = 0; i < cfg_.nodes.size(); ++i)
        if (cfg_.nodes[i].id == id)
            return i;
    throw InputError("unknown node " + std::to_string(id));
}

Mac80211&
Network::mac(std::size_t i)
{
    return nodes_.at(i)->mac;
}

WirelessPhy&
Network::phy(std::size_t i)
{
    return nodes_.at(i)->phy;
}

InterfaceQueue&
Network::ifq(std::size_t i)
{
    return nodes_.at(i)->ifq;
}

void
Network::emit(const TraceRecord& r)
{
    (*collector_)(r);
    for (const TraceSink& s : observers_)
        s(r);
}

void
Network::offer(std::size_t flow)
{
    const FlowSpec& spec = cfg_.flows[flow];
    Node& node = *nodes_[sources_[flow].node];

    Frame f;
    f.uid = uids_();
    f.direction = Direction::Down;
    f.size = spec.payload;
    f.payload = spec.payload;
    f.flow = static_cast<FlowId>(flow);
    f.mac.dst = spec.dst;

    TraceRecord r;
    r.time = sched_.now();
    r.node = spec.src;
    r.uid = f.uid;
    r.frame_type = FrameType::Data;
    r.peer = spec.dst;
    r.flow = f.flow;
    r.aux = spec.payload;

    if (node.ifq.blocked() && node.ifq.full()) {
        r.kind = TraceKind::QueueDrop;
        emit(r);
        return;
    }
    r.kind = TraceKind::Enqueue;
    emit(r);
    if (!node.ifq.enqueue(std::move(f)))
        throw ProtocolFault("ifq rejected a frame it reported room for");
}

void
Network::cbr_tick(std::size_t flow)
{
    const FlowSpec& spec = cfg_.flows[flow];
    Source& src = sources_[flow];
    const double stop = cfg_.flow_stop(spec);
    if (sched_.now() >= stop)
        return;
    offer(flow);
    ++src.ticks;
    const double next = spec.start + static_cast<double>(src.ticks) * spec.interval;
    if (next < stop)
        sched_.schedule(next - sched_.now(), [this, flow] { cbr_tick(flow); });
}

std::uint64_t
Network::in_flight(std::size_t flow) const
{
    const Node& node = *nodes_[sources_.at(flow).node];
    std::uint64_t n = 0;
    node.ifq.for_each([&](const Frame& f) {
        if (f.flow == static_cast<FlowId>(flow))
            ++n;
    });
    const auto& pending = node.mac.pending_tx();
    if (pending && pending->flow == static_cast<FlowId>(flow))
        ++n;
    return n;
}

Metrics
Network::run()
{
    if (sched_.now() != 0.0)
        throw ProtocolFault("network already ran");

    for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
        const FlowSpec& spec = cfg_.flows[i];
        if (spec.saturated()) {
            sched_.schedule(spec.start, [this, i] {
                Node& node = *nodes_[sources_[i].node];
                // Prime the queue; every later dequeue tops it up again.
                while (!(node.ifq.blocked() && node.ifq.full()))
                    offer(i);
            });
        } else {
            sched_.schedule(spec.start, [this, i] { cbr_tick(i); });
        }
    }

    sched_.run_until(cfg_.duration);

    std::vector<std::uint64_t> in_flight_now;
    for (std::size_t i = 0; i < cfg_.flows.size(); ++i)
        in_flight_now.push_back(in_flight(i));
    return collector_->finish(in_flight_now);
}

} // namespace dcfsim
