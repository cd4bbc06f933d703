#include "dcfsim/cli/app.hpp"
#include "dcfsim/cli/config_io.hpp"
#include "dcfsim/cli/sweep.hpp"
#include "dcfsim/radio/propagation.hpp"
#include "dcfsim/sim/errors.hpp"

#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dcfsim;
using namespace dcfsim::cli;

namespace {

const char* kMinimal = R"(
[node.0]
position = 0, 0

[node.1]
position = 100, 0

[flow.0]
src = 0
dst = 1
)";

std::string
temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("dcfsim_test_" + name)).string();
}

std::string
write_temp(const std::string& name, const std::string& text)
{
    const std::string p = temp_path(name);
    std::ofstream(p) << text;
    return p;
}

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result
app(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_app(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("minimal config fills defaults and derives 250 m / 550 m ranges")
{
    const ConfigFile cf = parse_config(kMinimal);
    const ScenarioConfig& c = cf.scenario;
    CHECK(c.nodes.size() == 2);
    CHECK(c.nodes[0].position.z == 1.5);
    CHECK(radio::get_dist(c.phy.rx_thresh, c.radio) == doctest::Approx(250.0));
    CHECK(radio::get_dist(c.phy.cs_thresh, c.radio) == doctest::Approx(550.0));
    CHECK(c.mac.eifs == doctest::Approx(364e-6));
    CHECK(c.flows[0].payload == 1000);
    CHECK(c.flows[0].saturated());
    CHECK_FALSE(cf.sweep);
}

TEST_CASE("threshold ordering is enforced")
{
    const std::string text = std::string(kMinimal) + "\n[phy]\nrx_thresh = 1e-12\ncs_thresh = 1e-11\n";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("rx_thresh"), InputError);
}

TEST_CASE("emit then parse is the identity")
{
    ScenarioConfig c = parse_config(kMinimal).scenario;
    c.nodes[1].pt = 2.8183815;
    c.nodes[1].position = {0.1, -1e-7, 2.25};
    c.radio.lambda = 0.328227;
    c.fading = radio::FadingModel::Rayleigh;
    c.mac.eifs_enabled = false;
    c.duration = 1.0 / 3.0;
    c.warmup = 0.1;
    c.flows[0].interval = 0.0123456789;
    c.flows[0].stop = 0.3;
    c.seed = 18446744073709551615ULL;
    SweepSpec sw{"mac.cw_min", {"15", "31"}, 2, 1};
    const std::string text = emit_config(c, sw);
    const ConfigFile back = parse_config(text);
    CHECK(back.scenario == c);
    REQUIRE(back.sweep);
    CHECK(*back.sweep == sw);
    CHECK(emit_config(back.scenario, back.sweep) == text);
}

TEST_CASE("syntax errors carry a line number")
{
    CHECK_THROWS_WITH_AS(parse_config("[node.0]\nposition = 0, 0\n[broken\n"), doctest::Contains("line 3"),
                         InputError);
}

TEST_CASE("semantic errors name the key")
{
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "[mac]\ncw_mni = 3\n"),
                         doctest::Contains("cw_mni"), InputError);
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "[radio]\nfading = rician\n"),
                         doctest::Contains("radio.fading"), InputError);
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "[flow.2]\nsrc = 0\ndst = 1\n"),
                         doctest::Contains("flow.1"), InputError);
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "[mac]\nslot_time = fast\n"),
                         doctest::Contains("mac.slot_time"), InputError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[bogus]\nx = 1\n"), InputError);
}

TEST_CASE("overrides address section.key")
{
    Tree t = read_tree(kMinimal);
    apply_overrides(t, {"node.1.position=0, 200", "mac.eifs_enabled = false", "simulation.seed=5"});
    const ScenarioConfig c = from_tree(t).scenario;
    CHECK(c.nodes[1].position.y == 200.0);
    CHECK_FALSE(c.mac.eifs_enabled);
    CHECK(c.seed == 5);
    CHECK_THROWS_AS(apply_overrides(t, {"noequals"}), InputError);
    CHECK_THROWS_AS(apply_overrides(t, {"nosection=1"}), InputError);
}

TEST_CASE("distance placement keeps bearings")
{
    ScenarioConfig c = parse_config(std::string(kMinimal) + "[node.2]\nposition = -30, 40, 2\n").scenario;
    set_distance(c, 0, 250);
    CHECK(c.nodes[1].position.x == doctest::Approx(250));
    CHECK(c.nodes[1].position.y == doctest::Approx(0));
    CHECK(c.nodes[2].position.x == doctest::Approx(-150));
    CHECK(c.nodes[2].position.y == doctest::Approx(200));
    CHECK(c.nodes[2].position.z == 2.0);
    CHECK(c.nodes[0].position.x == 0.0);
    CHECK_THROWS_AS(set_distance(c, 9, 10), InputError);
}

TEST_CASE("sweep rows come in (value, replication) order with distinct seeds")
{
    Tree t = read_tree(std::string(kMinimal) + "[simulation]\nduration = 1.5\n");
    SweepSpec sw{"distance", {"50", "150"}, 5, {}};
    const auto rows = run_sweep(t, sw, 4);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == (i < 5 ? "50" : "150"));
        CHECK(rows[i].replication == i % 5);
        CHECK(rows[i].seed == 1 + i % 5);
    }
    // Serial and parallel execution agree byte for byte.
    const auto serial = run_sweep(t, sw, 1);
    std::ostringstream a, b;
    for (const auto& r : rows)
        write_csv_row(a, r);
    for (const auto& r : serial)
        write_csv_row(b, r);
    CHECK(a.str() == b.str());
}

TEST_CASE("sweep over a config key re-validates every point")
{
    Tree t = read_tree(std::string(kMinimal) + "[simulation]\nduration = 1.5\n");
    SweepSpec sw{"mac.cw_min", {"15", "0"}, 1, {}};
    CHECK_THROWS_AS(run_sweep(t, sw, 1), InputError);
    SweepSpec typo{"mac.cw_mni", {"15"}, 1, {}};
    CHECK_THROWS_AS(run_sweep(t, typo, 1), InputError);
}

TEST_CASE("csv header is fixed")
{
    const auto h = csv_header(2);
    REQUIRE(h.size() == 9 + 10);
    CHECK(h[0] == "parameter");
    CHECK(h[4] == "throughput_bps");
    CHECK(h[9] == "flow0_throughput_bps");
    CHECK(h[18] == "flow1_retry_drops");
}

TEST_CASE("format_double round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 3.652622424e-10, 299792458.0 / 914e6, 1e300, 5e-324})
    {
        const std::string text = format_double(v);
        double back = 0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("tool exit codes")
{
    const std::string good = write_temp("good.ini", std::string(kMinimal) + "[simulation]\nduration = 1.5\n");
    const std::string bad = write_temp("bad.ini", std::string(kMinimal) + "[mac]\ncw_min = 0\n");

    CHECK(app({}).code == kUsageError);
    CHECK(app({"frobnicate"}).code == kUsageError);
    CHECK(app({"--help"}).code == kOk);
    CHECK(app({"validate", good}).code == kOk);
    CHECK(app({"validate", good}).out.find("rx range 250.0 m") != std::string::npos);
    CHECK(app({"validate", bad}).code == kUsageError);
    CHECK(app({"validate", temp_path("missing.ini")}).code == kUsageError);
    CHECK(app({"run", good, "--set", "mac.cw_min=oops"}).code == kUsageError);
    CHECK(app({"gen", "--seed", "0"}).code == kUsageError);

    const Result run = app({"run", good});
    CHECK(run.code == kOk);
    CHECK(run.out.find("flow 0 0->1") != std::string::npos);

    CHECK(app({"sweep", good, "--param", "distance", "--values", "50,100", "--out",
               "/nonexistent-dir/out.csv"})
              .code == kUsageError);
}

TEST_CASE("sweep output is byte-identical across runs and job counts")
{
    const std::string cfg = write_temp("sweep.ini", std::string(kMinimal) +
                                                        "[simulation]\nduration = 1.5\n"
                                                        "[sweep]\nparameter = distance\n"
                                                        "values = 100, 300\nreplications = 2\n");
    const Result a = app({"sweep", cfg, "--jobs", "1"});
    const Result b = app({"sweep", cfg, "--jobs", "3"});
    REQUIRE(a.code == kOk);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line))
        ++n;
    CHECK(n == 1 + 4);
}

TEST_CASE("run writes trace and csv files")
{
    const std::string cfg = write_temp("trace.ini", std::string(kMinimal) + "[simulation]\nduration = 1.2\n");
    const std::string trace = temp_path("trace.txt");
    const std::string csv = temp_path("run.csv");
    REQUIRE(app({"run", cfg, "--trace", trace, "--csv", csv}).code == kOk);
    std::ifstream t(trace);
    std::string first;
    std::getline(t, first);
    // time node kind uid detail
    std::istringstream fields(first);
    std::string time, node, kind, uid;
    fields >> time >> node >> kind >> uid;
    CHECK(kind == "enqueue");
    CHECK(std::filesystem::file_size(csv) > 0);
}

TEST_CASE("gen emits a config that validates")
{
    const Result g = app({"gen", "--nodes", "6", "--flows", "4", "--seed", "7"});
    REQUIRE(g.code == kOk);
    const ConfigFile cf = parse_config(g.out);
    CHECK(cf.scenario.nodes.size() == 6);
    CHECK(cf.scenario.flows.size() == 4);
    CHECK(app({"gen", "--nodes", "6", "--flows", "4", "--seed", "7"}).out == g.out);
}
