// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "dcfsim/cli/app.hpp"
#include "dcfsim/cli/config_io.hpp"
#include "dcfsim/cli/sweep.hpp"
#include "dcfsim/phy/channel.hpp"
#include "dcfsim/phy/phy_params.hpp"
#include "dcfsim/phy/wireless_phy.hpp"
#include "dcfsim/radio/propagation.hpp"
#include "dcfsim/scenario/invariants.hpp"
#include "dcfsim/scenario/network.hpp"
#include "dcfsim/sim/rng.hpp"
#include "dcfsim/sim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace dcfsim;

namespace {

#ifndef DCFSIM_CONFIG_DIR
#define DCFSIM_CONFIG_DIR "configs"
#endif

const std::string kConfigDir = DCFSIM_CONFIG_DIR;

// Replications per scenario point for the statistical criteria.
constexpr std::uint32_t kReps = 5;

int failures = 0;

void
report(int id, const char* name, bool pass, const std::string& detail)
{
    std::printf("[%s] criterion %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string
fmt(const char* f, double a)
{
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

// Every simulated run is observed by an invariant checker; criterion 9 reports
// the accumulated violations.
std::uint64_t checked_runs = 0;
std::uint64_t checked_records = 0;
std::vector<std::string> all_violations;

struct Checked
{
    Metrics metrics;
    std::vector<std::string> violations;
    std::uint64_t records = 0;
};

Checked
run_checked(const ScenarioConfig& cfg)
{
    Network net(cfg);
    InvariantChecker checker(net.config());
    net.add_observer([&checker](const TraceRecord& r) { checker(r); });
    Checked c;
    c.metrics = net.run();
    checker.check_conservation(c.metrics);
    c.violations = checker.violations();
    c.records = checker.records();
    return c;
}

std::vector<Metrics>
run_all(const std::vector<ScenarioConfig>& cfgs)
{
    std::vector<std::future<Checked>> fs;
    for (const ScenarioConfig& c : cfgs)
        fs.push_back(std::async(std::launch::async, run_checked, c));
    std::vector<Metrics> out;
    for (auto& f : fs) {
        Checked c = f.get();
        ++checked_runs;
        checked_records += c.records;
        all_violations.insert(all_violations.end(), c.violations.begin(), c.violations.end());
        out.push_back(std::move(c.metrics));
    }
    return out;
}

cli::Tree
load(const std::string& name, const std::map<std::string, std::string>& sets)
{
    cli::Tree t = cli::read_tree(cli::read_file(kConfigDir + "/" + name));
    for (const auto& [k, v] : sets)
        cli::set_value(t, k, v);
    return t;
}

/// Configs for each distance in `ds`, kReps seeds each, in (d, rep) order.
std::vector<ScenarioConfig>
distance_points(const cli::Tree& tree, NodeId anchor, const std::vector<double>& ds)
{
    cli::SweepSpec s;
    s.parameter = "distance";
    s.anchor = anchor;
    s.replications = kReps;
    std::vector<ScenarioConfig> out;
    for (double d : ds) {
        s.values.push_back(cli::format_double(d));
        for (std::uint32_t r = 0; r < kReps; ++r)
            out.push_back(cli::sweep_point(tree, s, s.values.back(), r));
    }
    return out;
}

/// Mean of f(metrics) over the kReps runs of each distance.
template <class F>
std::vector<double>
per_distance(const std::vector<Metrics>& ms, std::size_t n, F f)
{
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < ms.size(); ++i)
        out[i / kReps] += f(ms[i]) / kReps;
    return out;
}

std::string
list(const std::vector<double>& v, const char* f)
{
    std::string s;
    for (double x : v)
        s += (s.empty() ? "" : " ") + fmt(f, x);
    return s;
}

// ---------------------------------------------------------------------------

void
range_reproduction()
{
    const radio::RadioParams p = radio::default_radio();
    const double rx = radio::get_dist(radio::default_rx_thresh(p), p);
    const double cs = radio::get_dist(radio::default_cs_thresh(p), p);
    const bool ok = rx >= 247.5 && rx <= 252.5 && cs >= 544.5 && cs <= 555.5;
    report(1, "range reproduction", ok,
           "rx range " + fmt("%.3f", rx) + " m, cs range " + fmt("%.3f", cs) + " m");
}

void
threshold_classification()
{
    const radio::RadioParams p = radio::default_radio();
    PhyParams phy;
    phy.rx_thresh = radio::default_rx_thresh(p);
    phy.cs_thresh = radio::default_cs_thresh(p);
    const std::vector<std::pair<double, ReceptionClass>> want{
        {100, ReceptionClass::Decodable},   {249, ReceptionClass::Decodable},
        {251, ReceptionClass::SensedError}, {400, ReceptionClass::SensedError},
        {549, ReceptionClass::SensedError}, {551, ReceptionClass::NotSensed}};
    bool ok = true;
    std::string detail;
    for (const auto& [d, cls] : want) {
        const ReceptionClass got = classify(radio::two_ray_pr(p, d), phy);
        ok = ok && got == cls;
        detail += (detail.empty() ? "" : ", ") + fmt("%.0f", d) + "=" + std::string(to_string(got));
    }
    report(2, "threshold classification", ok, detail);
}

void
fading_statistics()
{
    // Frames sent through a real channel and interface pair 200 m apart.
    constexpr int kFrames = 20000;
    Scheduler sched;
    Rng tx_rng(11), rx_rng(12);
    Channel channel(sched);
    const radio::RadioParams p = radio::default_radio();
    PhyParams phy;
    phy.rx_thresh = radio::default_rx_thresh(p);
    phy.cs_thresh = radio::default_cs_thresh(p);
    WirelessPhy a(sched, 0, {0, 0, 1.5}, p, phy, radio::FadingModel::Rayleigh, tx_rng);
    WirelessPhy b(sched, 1, {200, 0, 1.5}, p, phy, radio::FadingModel::Rayleigh, rx_rng);
    channel.add(a);
    channel.add(b);
    int decodable = 0;
    b.set_mac_receiver([&](Frame f) { decodable += f.error ? 0 : 1; });
    for (int k = 0; k < kFrames; ++k) {
        sched.schedule(k * 1e-3, [&a, k] {
            Frame f;
            f.uid = static_cast<std::uint64_t>(k) + 1;
            f.size = 1028;
            a.send_down(f, 5e-4);
        });
    }
    sched.run_until(kFrames * 1e-3 + 1.0);

    // Oracle: exponential power around the two-ray mean Pt ht^2 hr^2 / d^4.
    const double mean = p.pt * std::pow(1.5, 4) / std::pow(200.0, 4);
    const double expect = std::exp(-phy.rx_thresh / mean);
    const double got = static_cast<double>(decodable) / kFrames;
    report(3, "fading statistics", std::abs(got - expect) <= 0.02,
           "decodable " + fmt("%.4f", got) + " vs exp(-rx/P(200)) " + fmt("%.4f", expect) +
               " over " + std::to_string(kFrames) + " receptions");
}

void
saturation_oracle()
{
    const ScenarioConfig cfg =
        cli::parse_config(cli::read_file(kConfigDir + "/baseline_single_flow.ini")).scenario;
    const Metrics m = run_all({cfg}).front();

    // Independent cycle: DIFS + CWmin/2 slots + DATA + SIFS + ACK + two propagation legs.
    const double data = 192e-6 + 8.0 * (1000 + 28) / 11e6;
    const double ack = 192e-6 + 8.0 * 14 / 1e6;
    const double cycle = 50e-6 + 15.5 * 20e-6 + data + 10e-6 + ack + 2 * 100.0 / 299792458.0;
    const double oracle = 8.0 * 1000 / cycle;
    const double err = std::abs(m.throughput_bps() - oracle) / oracle;
    report(4, "single-flow saturation", err <= 0.05,
           "measured " + fmt("%.0f", m.throughput_bps()) + " bit/s, oracle " +
               fmt("%.0f", oracle) + " bit/s, error " + fmt("%.2f", 100 * err) + "%");
}

void
capture_dominance()
{
    const auto cfgs = distance_points(load("fig8_capture.ini", {{"mac.eifs_enabled", "false"},
                                                                 {"radio.fading", "none"}}),
                                      2, {50});
    const auto ms = run_all(cfgs);
    double share = 0;
    std::uint64_t collisions = 0, captures = 0;
    for (const Metrics& m : ms) {
        share += m.share(0) / ms.size();
        collisions += m.flows[0].window.collisions;
        captures += m.flows[0].window.captures;
    }
    const bool ok = share >= 0.9 && collisions == 0 && captures > 0;
    report(5, "capture dominance", ok,
           "node 0 share " + fmt("%.3f", share) + ", node 0 frames lost to collision at BS " +
               std::to_string(collisions) + ", captured " + std::to_string(captures));
}

void
fading_unfairness()
{
    const std::vector<double> ds{50, 150, 250};
    auto shares = [&](const char* fading) {
        return per_distance(run_all(distance_points(load("fig8_capture.ini",
                                                         {{"mac.eifs_enabled", "false"},
                                                          {"radio.fading", fading}}),
                                                    2, ds)),
                            ds.size(), [](const Metrics& m) { return m.share(0); });
    };
    const auto faded = shares("rayleigh");
    const auto clear = shares("none");
    std::vector<double> gap(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        gap[i] = faded[i] - clear[i];
    const bool monotone = std::is_sorted(faded.begin(), faded.end());
    const bool widens = gap[2] > gap[0] && gap[2] > gap[1];
    report(6, "fading unfairness trend", monotone && widens,
           "share with fading " + list(faded, "%.3f") + ", without " + list(clear, "%.3f") +
               ", gap " + list(gap, "%+.3f"));
}

void
eifs_effect()
{
    auto share = [](const char* eifs) {
        const auto ms = run_all(distance_points(
            load("fig8_capture.ini", {{"mac.eifs_enabled", eifs}, {"radio.fading", "none"}}), 2,
            {150}));
        double s = 0;
        for (const Metrics& m : ms)
            s += m.share(0) / ms.size();
        return s;
    };
    const double off = share("false");
    const double on = share("true");
    report(7, "eifs effect", std::abs(on - off) > 0.05,
           "d=150 m node 0 share " + fmt("%.3f", off) + " without EIFS, " + fmt("%.3f", on) +
               " with EIFS");
}

void
fading_collapse()
{
    const std::vector<double> ds{50, 100, 150, 200, 250};
    auto tput = [&](const char* fading) {
        return per_distance(
            run_all(distance_points(load("fig6_analog.ini", {{"radio.fading", fading}}), 0, ds)),
            ds.size(), [](const Metrics& m) { return m.throughput_bps() / 1e6; });
    };
    const auto faded = tput("rayleigh");
    const auto clear = tput("none");
    bool steps = true;
    for (std::size_t i = 1; i < faded.size(); ++i)
        steps = steps && faded[i] <= 0.98 * faded[i - 1];
    const bool collapse = faded.back() < 0.5 * faded.front();
    const auto [lo, hi] = std::minmax_element(clear.begin(), clear.end());
    const bool flat = (*hi - *lo) <= 0.02 * *hi;
    report(8, "fading throughput collapse", steps && collapse && flat,
           "Mb/s with fading " + list(faded, "%.3f") + ", without " + list(clear, "%.3f"));
}

bool
scheduler_order(std::string& detail)
{
    constexpr int kEvents = 1000000;
    Scheduler sched;
    Rng rng(5);
    struct Seen
    {
        double time;
        double due;
        int seq;
    };
    std::vector<Seen> seen;
    seen.reserve(kEvents);
    // Coarse times force many ties; ties must dispatch in scheduling order.
    for (int i = 0; i < kEvents; ++i) {
        const double due = std::floor(rng.uniform01() * 1000.0) * 1e-3;
        sched.schedule(due, [&sched, &seen, due, i] { seen.push_back({sched.now(), due, i}); });
    }
    sched.run_until(2.0);
    bool ok = seen.size() == static_cast<std::size_t>(kEvents);
    for (std::size_t i = 0; ok && i < seen.size(); ++i) {
        ok = seen[i].time == seen[i].due;
        if (i > 0) {
            const Seen& a = seen[i - 1];
            const Seen& b = seen[i];
            ok = ok && (a.time < b.time || (a.time == b.time && a.seq < b.seq));
        }
    }
    detail = std::to_string(seen.size()) + " events " + (ok ? "in order" : "OUT OF ORDER");
    return ok;
}

bool
csv_deterministic(std::string& detail)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dcfsim_acceptance";
    fs::create_directories(dir);
    auto sweep = [&](const std::string& jobs, const std::string& name) {
        const std::string out = (dir / name).string();
        std::ostringstream o, e;
        const int rc = cli::run_app({"sweep", kConfigDir + "/fig8_capture.ini", "--set",
                                     "radio.fading=rayleigh", "--duration", "5", "--values",
                                     "50,150,250", "--replications", "2", "-j", jobs, "-o", out},
                                    o, e);
        std::ifstream in(out, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        return std::make_pair(rc, body.str());
    };
    const auto a = sweep("1", "a.csv");
    const auto b = sweep("4", "b.csv");
    const auto c = sweep("1", "c.csv");
    fs::remove_all(dir);
    const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && !a.second.empty() &&
                    a.second == b.second && a.second == c.second;
    detail = "3 sweeps, " + std::to_string(a.second.size()) + " bytes, " +
             (ok ? "identical" : "DIFFERENT");
    return ok;
}

void
invariant_suite()
{
    std::string order, csv;
    const bool sched_ok = scheduler_order(order);
    const bool csv_ok = csv_deterministic(csv);
    const bool inv_ok = all_violations.empty() && checked_runs > 0;
    std::string detail = "scheduler " + order + "; " + std::to_string(checked_runs) +
                         " runs, " + std::to_string(checked_records) + " trace records, " +
                         std::to_string(all_violations.size()) + " violations; csv " + csv;
    report(9, "invariant suite", sched_ok && csv_ok && inv_ok, detail);
    for (std::size_t i = 0; i < std::min<std::size_t>(all_violations.size(), 10); ++i)
        std::printf("    %s\n", all_violations[i].c_str());
}

} // namespace

int
main()
{
    range_reproduction();
    threshold_classification();
    fading_statistics();
    saturation_oracle();
    capture_dominance();
    fading_unfairness();
    eifs_effect();
    fading_collapse();
    invariant_suite();
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
