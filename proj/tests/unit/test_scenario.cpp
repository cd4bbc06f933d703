#include "dcfsim/scenario/config.hpp"
#include "dcfsim/scenario/ifq.hpp"
#include "dcfsim/scenario/invariants.hpp"
#include "dcfsim/scenario/metrics.hpp"
#include "dcfsim/scenario/network.hpp"
#include "dcfsim/sim/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace dcfsim;

namespace {

ScenarioConfig
pair_config(double d, double interval)
{
    ScenarioConfig c;
    c.duration = 2.0;
    c.warmup = 1.0;
    c.nodes = {NodeSpec{0, {0, 0, 1.5}, {}}, NodeSpec{1, {d, 0, 1.5}, {}}};
    FlowSpec f;
    f.src = 0;
    f.dst = 1;
    f.interval = interval;
    c.flows = {f};
    return c;
}

} // namespace

TEST_CASE("ifq hands frames over in FIFO order")
{
    std::vector<std::uint64_t> got;
    std::function<void()> done;
    InterfaceQueue q(50, [&](Frame f, std::function<void()> cb) {
        got.push_back(f.uid);
        done = std::move(cb);
    });
    for (std::uint64_t uid : {1, 2, 3}) {
        Frame f;
        f.uid = uid;
        CHECK(q.enqueue(f));
    }
    CHECK(got == std::vector<std::uint64_t>{1});
    CHECK(q.blocked());
    CHECK(q.in_flight() == 3);
    done();
    done();
    CHECK(got == std::vector<std::uint64_t>{1, 2, 3});
    done();
    CHECK_FALSE(q.blocked());
    CHECK_THROWS_AS(q.resume(), ProtocolFault);
}

TEST_CASE("ifq drops at capacity")
{
    InterfaceQueue q(2, [](Frame, std::function<void()>) {});
    Frame f;
    CHECK(q.enqueue(f)); // straight to the MAC
    CHECK(q.enqueue(f));
    CHECK(q.enqueue(f));
    CHECK(q.full());
    CHECK_FALSE(q.enqueue(f));
    CHECK(q.size() == 2);
}

TEST_CASE("cbr source offers one frame per interval inside [start, stop)")
{
    ScenarioConfig c = pair_config(100, 0.01);
    c.flows[0].start = 0.5;
    c.flows[0].stop = 1.5;
    std::vector<TraceRecord> t;
    Network net(c);
    net.add_observer([&](const TraceRecord& r) { t.push_back(r); });
    const Metrics m = net.run();
    CHECK(m.flows[0].total.offered == 100);
    double last = 0;
    for (const auto& r : t)
        if (r.kind == TraceKind::Enqueue)
            last = r.time;
    CHECK(last < 1.5);
    CHECK(m.flows[0].total.delivered_frames == 100);
}

TEST_CASE("saturated source keeps the MAC busy")
{
    ScenarioConfig c = pair_config(100, 0.0);
    Network net(c);
    std::size_t idle_with_empty_queue = 0;
    net.add_observer([&](const TraceRecord& r) {
        if (r.kind == TraceKind::BackoffIdle && r.node == 0)
            ++idle_with_empty_queue;
    });
    const Metrics m = net.run();
    CHECK(idle_with_empty_queue == 0);
    CHECK(net.ifq(0).full());
    CHECK(m.flows[0].window.queue_drops == 0);
    CHECK(m.flows[0].throughput_bps > 4.5e6);
}

TEST_CASE("metrics arithmetic and window")
{
    ScenarioConfig c = pair_config(100, 0.0);
    MetricsCollector mc(c, 1.0, 2.0);
    TraceRecord r;
    r.kind = TraceKind::Deliver;
    r.node = 1;
    r.peer = 0;
    r.flow = 0;
    r.aux = 1000;
    r.time = 0.5; // before the window
    mc(r);
    for (int i = 0; i < 1000; ++i) {
        r.time = 1.0 + i * 1e-3;
        mc(r);
    }
    const Metrics m = mc.finish({0});
    CHECK(m.flows[0].throughput_bps == doctest::Approx(8e6));
    CHECK(m.flows[0].window.delivered_frames == 1000);
    CHECK(m.flows[0].total.delivered_frames == 1001);
    CHECK(m.share(0) == doctest::Approx(1.0));

    MetricsCollector empty(c, 1.0, 2.0);
    const Metrics z = empty.finish({0});
    CHECK(z.throughput_bps() == 0.0);
    CHECK(z.captures() == 0);
    CHECK(z.share(0) == 0.0);
    CHECK_THROWS_AS(MetricsCollector(c, 2.0, 1.0), InputError);
}

TEST_CASE("runs are deterministic per seed and differ across seeds")
{
    ScenarioConfig c = pair_config(100, 0.0);
    c.nodes.push_back(NodeSpec{2, {50, 50, 1.5}, {}});
    FlowSpec f;
    f.src = 2;
    f.dst = 1;
    c.flows.push_back(f);
    auto run = [](const ScenarioConfig& cfg) {
        Network n(cfg);
        return n.run();
    };
    const Metrics a = run(c);
    const Metrics b = run(c);
    CHECK(a.flows[0].window.delivered_frames == b.flows[0].window.delivered_frames);
    CHECK(a.flows[1].window.delivered_frames == b.flows[1].window.delivered_frames);
    CHECK(a.collisions() == b.collisions());
    c.seed = 99;
    const Metrics d = run(c);
    CHECK(a.flows[0].window.delivered_frames != d.flows[0].window.delivered_frames);
}

TEST_CASE("invariants and conservation hold on a contended run")
{
    ScenarioConfig c;
    c.duration = 3.0;
    c.nodes = {NodeSpec{0, {-200, 0, 1.5}, {}}, NodeSpec{1, {200, 0, 1.5}, {}},
               NodeSpec{2, {0, 0, 1.5}, {}}};
    FlowSpec f0;
    f0.src = 0;
    f0.dst = 2;
    FlowSpec f1 = f0;
    f1.src = 1;
    FlowSpec f2;
    f2.src = 2;
    f2.dst = 0;
    f2.interval = 0.002;
    c.flows = {f0, f1, f2};
    c.fading = radio::FadingModel::Rayleigh;

    Network net(c);
    InvariantChecker chk(c);
    net.add_observer(std::ref(chk));
    const Metrics m = net.run();
    chk.check_conservation(m);
    for (const auto& v : chk.violations())
        MESSAGE(v);
    CHECK(chk.ok());
    CHECK(chk.records() > 10000);
    CHECK(m.retry_drops() > 0);
    CHECK(m.collisions() > 0);
}

TEST_CASE("invariant checker flags broken traces")
{
    ScenarioConfig c = pair_config(100, 0.0);
    InvariantChecker chk(c);
    TraceRecord r;
    r.node = 0;
    r.time = 1.0;
    r.kind = TraceKind::Nav;
    r.value = 2.0;
    chk(r);
    r.value = 1.5;
    chk(r); // NAV going backwards
    r.kind = TraceKind::Cw;
    r.aux = 2047;
    chk(r);
    r.kind = TraceKind::RxState;
    r.aux = 0x0100; // SEND is not an rx state
    chk(r);
    r.time = 0.5;
    r.kind = TraceKind::Transmit;
    r.frame_type = FrameType::Data;
    r.aux = 8;
    chk(r); // time backwards, attempts over the limit
    CHECK(chk.violations().size() == 5);
}

TEST_CASE("config validation")
{
    ScenarioConfig c = pair_config(100, 0.0);
    c.derive();
    CHECK_NOTHROW(c.validate());
    auto bad = [&](auto mutate) {
        ScenarioConfig x = c;
        mutate(x);
        CHECK_THROWS_AS(x.validate(), InputError);
    };
    bad([](ScenarioConfig& x) { x.flows[0].dst = 0; });
    bad([](ScenarioConfig& x) { x.flows[0].payload = 0; });
    bad([](ScenarioConfig& x) { x.flows[0].stop = x.flows[0].start; x.flows[0].start = 0.5; x.flows[0].stop = 0.4; });
    bad([](ScenarioConfig& x) { x.nodes[1].id = 0; });
    bad([](ScenarioConfig& x) { x.flows[0].dst = 7; });
    bad([](ScenarioConfig& x) { x.warmup = x.duration; });
    bad([](ScenarioConfig& x) { std::swap(x.phy.rx_thresh, x.phy.cs_thresh); });
    bad([](ScenarioConfig& x) { x.nodes[0].position.z = 0; });
}

TEST_CASE("random scenario generator")
{
    RandomScenarioParams p;
    p.nodes = 10;
    p.seed = 7;
    const ScenarioConfig a = generate_random_scenario(p);
    const ScenarioConfig b = generate_random_scenario(p);
    CHECK(a == b);
    CHECK(a.nodes.size() == 10);
    CHECK(a.flows.size() == 5);
    for (std::size_t i = 0; i < a.flows.size(); ++i)
        for (std::size_t j = i + 1; j < a.flows.size(); ++j)
            CHECK_FALSE((a.flows[i].src == a.flows[j].src && a.flows[i].dst == a.flows[j].dst));

    p.seed = 0;
    CHECK_THROWS_AS(generate_random_scenario(p), InputError);

    p.seed = 3;
    p.nodes = 2;
    p.flows = 2;
    const ScenarioConfig two = generate_random_scenario(p);
    for (const NodeSpec& n : two.nodes) {
        CHECK(n.position.x >= 0.0);
        CHECK(n.position.x <= 500.0);
        CHECK(n.position.y >= 0.0);
        CHECK(n.position.y <= 500.0);
    }
    p.flows = 3;
    CHECK_THROWS_AS(generate_random_scenario(p), InputError);
}

TEST_CASE("generated scenarios run cleanly")
{
    RandomScenarioParams p;
    p.nodes = 8;
    p.flows = 6;
    p.duration = 2.0;
    p.interval = 0.005;
    p.seed = 11;
    const ScenarioConfig c = generate_random_scenario(p);
    Network net(c);
    InvariantChecker chk(c);
    net.add_observer(std::ref(chk));
    const Metrics m = net.run();
    chk.check_conservation(m);
    CHECK(chk.ok());
}
