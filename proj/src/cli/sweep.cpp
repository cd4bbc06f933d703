#include "dcfsim/cli/sweep.hpp"

#include "dcfsim/scenario/network.hpp"
#include "dcfsim/sim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

namespace dcfsim::cli {

void
set_distance(ScenarioConfig& cfg, NodeId anchor, double d)
{
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InputError("distance must be a finite value >= 0");
    const NodeSpec* a = cfg.find_node(anchor);
    if (a == nullptr)
        throw InputError("distance sweep: anchor node " + std::to_string(anchor) + " not found");
    const Vec3 origin = a->position;
    for (NodeSpec& n : cfg.nodes) {
        if (n.id == anchor)
            continue;
        const double dx = n.position.x - origin.x;
        const double dy = n.position.y - origin.y;
        const double r = std::hypot(dx, dy);
        const double ux = r > 0.0 ? dx / r : 1.0;
        const double uy = r > 0.0 ? dy / r : 0.0;
        n.position.x = origin.x + ux * d;
        n.position.y = origin.y + uy * d;
    }
}

ScenarioConfig
sweep_point(const Tree& base, const SweepSpec& sweep, const std::string& value,
            std::uint32_t replication)
{
    ScenarioConfig cfg;
    if (sweep.parameter == "distance") {
        cfg = from_tree(base).scenario;
        NodeId anchor = 0;
        if (sweep.anchor)
            anchor = *sweep.anchor;
        else if (!cfg.flows.empty())
            anchor = cfg.flows.front().dst;
        else
            throw InputError("distance sweep needs sweep.anchor or at least one flow");
        double d = 0.0;
        try {
            std::size_t used = 0;
            d = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw InputError("distance sweep: '" + value + "' is not a number");
        }
        set_distance(cfg, anchor, d);
    } else {
        Tree t = base;
        set_value(t, sweep.parameter, value);
        cfg = from_tree(t).scenario;
    }
    cfg.seed += replication;
    cfg.validate();
    return cfg;
}

std::vector<SweepRow>
run_sweep(const Tree& base, const SweepSpec& sweep, unsigned jobs)
{
    sweep.validate();

    // Build every point up front so configuration errors surface before any
    // simulation time is spent.
    std::vector<SweepRow> rows;
    std::vector<ScenarioConfig> configs;
    for (const std::string& v : sweep.values) {
        for (std::uint32_t r = 0; r < sweep.replications; ++r) {
            configs.push_back(sweep_point(base, sweep, v, r));
            SweepRow row;
            row.parameter = sweep.parameter;
            row.value = v;
            row.replication = r;
            row.seed = configs.back().seed;
            rows.push_back(std::move(row));
        }
    }

    std::vector<std::exception_ptr> errors(rows.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            try {
                Network net(configs[i]);
                rows[i].metrics = net.run();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();

    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

std::vector<std::string>
csv_header(std::size_t flows)
{
    std::vector<std::string> h{"parameter",   "value",      "replication", "seed",
                               "throughput_bps", "captures", "collisions", "retry_drops",
                               "queue_drops"};
    for (std::size_t i = 0; i < flows; ++i) {
        const std::string p = "flow" + std::to_string(i) + "_";
        for (const char* col : {"throughput_bps", "delivered_frames", "captures", "collisions",
                                "retry_drops"})
            h.push_back(p + col);
    }
    return h;
}

void
write_csv_header(std::ostream& os, std::size_t flows)
{
    const auto h = csv_header(flows);
    for (std::size_t i = 0; i < h.size(); ++i)
        os << (i ? "," : "") << h[i];
    os << '\n';
}

namespace {

std::string
csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

void
write_csv_row(std::ostream& os, const SweepRow& row)
{
    const Metrics& m = row.metrics;
    os << csv_field(row.parameter) << ',' << csv_field(row.value) << ',' << row.replication << ','
       << row.seed << ',' << format_double(m.throughput_bps()) << ',' << m.captures() << ','
       << m.collisions() << ',' << m.retry_drops() << ',' << m.queue_drops();
    for (const FlowMetrics& f : m.flows) {
        os << ',' << format_double(f.throughput_bps) << ',' << f.window.delivered_frames << ','
           << f.window.captures << ',' << f.window.collisions << ',' << f.window.retry_drops;
    }
    os << '\n';
}

} // namespace dcfsim::cli
