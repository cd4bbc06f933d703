#include "dcfsim/cli/app.hpp"

#include "dcfsim/cli/config_io.hpp"
#include "dcfsim/cli/sweep.hpp"
#include "dcfsim/scenario/network.hpp"
#include "dcfsim/sim/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>

namespace dcfsim::cli {

namespace {

/// Open `path` for writing, or fall back to `fallback` when path is empty.
class Output
{
  public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (path.empty())
            return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_)
            throw InputError("cannot write '" + path + "'");
        os_ = file_.get();
    }

    std::ostream& stream() { return *os_; }

    void close(const std::string& path)
    {
        if (file_) {
            file_->close();
            if (!*file_)
                throw InputError("error while writing '" + path + "'");
        }
    }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

struct CommonOptions
{
    std::string config;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
};

void
add_common(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("config", o.config, "scenario file")->required();
    cmd->add_option("--set", o.sets, "override a value: section.key=value (repeatable)");
    cmd->add_option("--seed", o.seed, "override simulation.seed");
    cmd->add_option("--duration", o.duration, "override simulation.duration (s)");
}

Tree
load_tree(const CommonOptions& o)
{
    Tree tree = read_tree(read_file(o.config));
    std::vector<std::string> sets = o.sets;
    if (o.seed)
        sets.push_back("simulation.seed=" + std::to_string(*o.seed));
    if (o.duration)
        sets.push_back("simulation.duration=" + format_double(*o.duration));
    apply_overrides(tree, sets);
    return tree;
}

void
print_summary(std::ostream& os, const ScenarioConfig& cfg, const Metrics& m)
{
    char line[256];
    std::snprintf(line, sizeof line, "window %.6g .. %.6g s, seed %llu\n", m.t0, m.t1,
                  static_cast<unsigned long long>(cfg.seed));
    os << line;
    for (std::size_t i = 0; i < m.flows.size(); ++i) {
        const FlowMetrics& f = m.flows[i];
        std::snprintf(line, sizeof line,
                      "flow %zu %u->%u: %.0f bit/s, delivered %llu, captures %llu, collisions "
                      "%llu, retry drops %llu, queue drops %llu\n",
                      i, f.src, f.dst, f.throughput_bps,
                      static_cast<unsigned long long>(f.window.delivered_frames),
                      static_cast<unsigned long long>(f.window.captures),
                      static_cast<unsigned long long>(f.window.collisions),
                      static_cast<unsigned long long>(f.window.retry_drops),
                      static_cast<unsigned long long>(f.window.queue_drops));
        os << line;
    }
    std::snprintf(line, sizeof line, "total: %.0f bit/s, captures %llu, collisions %llu\n",
                  m.throughput_bps(), static_cast<unsigned long long>(m.captures()),
                  static_cast<unsigned long long>(m.collisions()));
    os << line;
}

int
cmd_run(const CommonOptions& o, const std::string& trace_path, const std::string& csv_path,
        std::ostream& out)
{
    const ConfigFile cf = from_tree(load_tree(o));

    std::string tpath = trace_path;
    if (tpath.empty() && cf.scenario.trace)
        tpath = o.config + ".trace";

    Output csv(csv_path, out);
    std::unique_ptr<Output> trace;
    Network net(cf.scenario);
    if (!tpath.empty()) {
        trace = std::make_unique<Output>(tpath, out);
        std::ostream* ts = &trace->stream();
        net.add_observer([ts](const TraceRecord& r) { write_trace_line(*ts, r); });
    }

    SweepRow row;
    row.parameter = "-";
    row.value = "-";
    row.seed = cf.scenario.seed;
    row.metrics = net.run();

    if (trace)
        trace->close(tpath);
    if (!csv_path.empty()) {
        write_csv_header(csv.stream(), row.metrics.flows.size());
        write_csv_row(csv.stream(), row);
        csv.close(csv_path);
    }
    print_summary(out, net.config(), row.metrics);
    return kOk;
}

int
cmd_sweep(const CommonOptions& o, const std::string& param, const std::vector<std::string>& values,
          std::optional<std::uint32_t> reps, std::optional<NodeId> anchor, unsigned jobs,
          const std::string& out_path, std::ostream& out)
{
    Tree tree = load_tree(o);
    const ConfigFile cf = from_tree(tree);

    SweepSpec sweep = cf.sweep.value_or(SweepSpec{});
    if (!param.empty())
        sweep.parameter = param;
    if (!values.empty())
        sweep.values = values;
    if (reps)
        sweep.replications = *reps;
    if (anchor)
        sweep.anchor = anchor;
    sweep.validate();

    // Fail on an unwritable path before spending time on the runs.
    Output dest(out_path, out);
    const auto rows = run_sweep(tree, sweep, jobs);
    write_csv_header(dest.stream(), cf.scenario.flows.size());
    for (const SweepRow& r : rows)
        write_csv_row(dest.stream(), r);
    dest.close(out_path);
    return kOk;
}

} // namespace

int
run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"dcfsim: discrete-event simulator for 802.11 DCF networks", "dcfsim"};
    app.require_subcommand(1);

    CommonOptions run_o;
    std::string trace_path, csv_path;
    auto* run = app.add_subcommand("run", "run one scenario and print its metrics");
    add_common(run, run_o);
    run->add_option("--trace", trace_path, "write a per-event trace to this file");
    run->add_option("--csv", csv_path, "also write the metrics as a one-row CSV");

    CommonOptions sweep_o;
    std::string param, out_path;
    std::vector<std::string> values;
    std::optional<std::uint32_t> reps;
    std::optional<NodeId> anchor;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
    add_common(sweep, sweep_o);
    sweep->add_option("--param", param, "swept parameter: distance or section.key");
    sweep->add_option("--values", values, "comma-separated values")->delimiter(',');
    sweep->add_option("--replications", reps, "runs per value (seeds seed, seed+1, ...)");
    sweep->add_option("--anchor", anchor, "fixed node for distance sweeps");
    sweep->add_option("--jobs,-j", jobs, "parallel runs")->check(CLI::PositiveNumber);
    sweep->add_option("--out,-o", out_path, "CSV output file (default stdout)");

    RandomScenarioParams gp;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a random static scenario");
    gen->add_option("--nodes", gp.nodes, "number of nodes")->capture_default_str();
    gen->add_option("--width", gp.width, "area width (m)")->capture_default_str();
    gen->add_option("--height", gp.height, "area height (m)")->capture_default_str();
    gen->add_option("--flows", gp.flows, "number of CBR flows")->capture_default_str();
    gen->add_option("--payload", gp.payload, "CBR payload (bytes)")->capture_default_str();
    gen->add_option("--interval", gp.interval, "CBR interval (s), 0 = saturated")
        ->capture_default_str();
    gen->add_option("--duration", gp.duration, "run length (s)")->capture_default_str();
    gen->add_option("--seed", gp.seed, "generator seed (not 0)")->capture_default_str();
    gen->add_option("--out,-o", gen_out, "output file (default stdout)");

    CommonOptions val_o;
    bool emit = false;
    auto* validate = app.add_subcommand("validate", "check a scenario file");
    add_common(validate, val_o);
    validate->add_flag("--emit", emit, "print the fully derived config");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*run)
            return cmd_run(run_o, trace_path, csv_path, out);
        if (*sweep)
            return cmd_sweep(sweep_o, param, values, reps, anchor, jobs, out_path, out);
        if (*gen) {
            const ScenarioConfig c = generate_random_scenario(gp);
            Output dest(gen_out, out);
            dest.stream() << emit_config(c);
            dest.close(gen_out);
            return kOk;
        }
        if (*validate) {
            const ConfigFile cf = from_tree(load_tree(val_o));
            if (emit) {
                out << emit_config(cf.scenario, cf.sweep);
            } else {
                char line[200];
                std::snprintf(line, sizeof line,
                              "ok: %zu nodes, %zu flows, rx range %.1f m, cs range %.1f m\n",
                              cf.scenario.nodes.size(), cf.scenario.flows.size(),
                              radio::get_dist(cf.scenario.phy.rx_thresh, cf.scenario.radio),
                              radio::get_dist(cf.scenario.phy.cs_thresh, cf.scenario.radio));
                out << line;
            }
            return kOk;
        }
    } catch (const ProtocolFault& e) {
        err << "protocol fault: " << e.what() << '\n';
        return kProtocolFault;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

} // namespace dcfsim::cli
