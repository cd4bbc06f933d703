#include "dcfsim/cli/config_io.hpp"

#include "dcfsim/sim/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace dcfsim::cli {

namespace pt = boost::property_tree;

namespace {

pt::ptree::path_type
literal(const std::string& key)
{
    // Section names contain dots ("node.0"); use a separator that never occurs.
    return pt::ptree::path_type(key, '\0');
}

std::string_view
trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double
to_double(std::string_view s, const std::string& what)
{
    s = trim(s);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw InputError(what + ": expected a number, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t
to_uint(std::string_view s, const std::string& what, std::uint64_t max = UINT32_MAX)
{
    s = trim(s);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v > max)
        throw InputError(what + ": expected a non-negative integer, got '" + std::string(s) + "'");
    return v;
}

bool
to_bool(std::string_view s, const std::string& what)
{
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on")
        return true;
    if (s == "false" || s == "0" || s == "no" || s == "off")
        return false;
    throw InputError(what + ": expected true/false, got '" + std::string(s) + "'");
}

/// Key reader for one section; rejects keys nobody asked for.
class Section
{
  public:
    Section(const pt::ptree& tree, std::string name) : tree_(tree), name_(std::move(name))
    {
        for (const auto& [key, child] : tree_) {
            if (!child.empty())
                throw InputError(name_ + "." + key + ": nested values are not allowed");
            if (!keys_.insert(key).second)
                throw InputError(name_ + "." + key + ": duplicate key");
        }
    }

    std::optional<std::string> raw(const std::string& key)
    {
        used_.insert(key);
        if (auto v = tree_.get_optional<std::string>(literal(key)))
            return std::string(trim(*v));
        return std::nullopt;
    }

    void num(const std::string& key, double& out)
    {
        if (auto v = raw(key))
            out = to_double(*v, what(key));
    }

    template <typename T>
    void uint(const std::string& key, T& out)
    {
        if (auto v = raw(key))
            out = static_cast<T>(to_uint(*v, what(key), std::numeric_limits<T>::max()));
    }

    void flag(const std::string& key, bool& out)
    {
        if (auto v = raw(key))
            out = to_bool(*v, what(key));
    }

    std::string what(const std::string& key) const { return name_ + "." + key; }

    void finish() const
    {
        for (const std::string& k : keys_)
            if (!used_.contains(k))
                throw InputError(name_ + ": unknown key '" + k + "'");
    }

  private:
    const pt::ptree& tree_;
    std::string name_;
    std::set<std::string> keys_;
    std::set<std::string> used_;
};

/// "node.12" -> 12 for prefix "node."
std::optional<std::uint64_t>
indexed(const std::string& section, std::string_view prefix)
{
    if (!section.starts_with(prefix))
        return std::nullopt;
    return to_uint(std::string_view(section).substr(prefix.size()), "section [" + section + "]");
}

std::string
fmt_bool(bool b)
{
    return b ? "true" : "false";
}

} // namespace

std::string
format_double(double v)
{
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

std::vector<std::string>
split_list(std::string_view s)
{
    std::vector<std::string> out;
    while (true) {
        const auto comma = s.find(',');
        const std::string_view item = trim(s.substr(0, comma));
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

void
SweepSpec::validate() const
{
    if (parameter.empty())
        throw InputError("sweep.parameter must be set");
    if (values.empty())
        throw InputError("sweep.values needs at least one value");
    if (replications == 0)
        throw InputError("sweep.replications must be >= 1");
}

Tree
read_tree(const std::string& text)
{
    std::istringstream in(text);
    Tree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    return tree;
}

void
set_value(Tree& tree, std::string_view dotted, const std::string& value)
{
    const auto dot = dotted.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == dotted.size())
        throw InputError("'" + std::string(dotted) + "': expected section.key");
    const std::string section(dotted.substr(0, dot));
    const std::string key(dotted.substr(dot + 1));
    auto child = tree.get_child_optional(literal(section));
    if (!child)
        child = tree.put_child(literal(section), Tree{});
    child->put(literal(key), value);
}

void
apply_overrides(Tree& tree, const std::vector<std::string>& assignments)
{
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos)
            throw InputError("override '" + a + "': expected section.key=value");
        set_value(tree, trim(std::string_view(a).substr(0, eq)),
                  std::string(trim(std::string_view(a).substr(eq + 1))));
    }
}

ConfigFile
from_tree(const Tree& tree)
{
    ConfigFile out;
    ScenarioConfig& c = out.scenario;
    const pt::ptree empty;

    auto section = [&](const std::string& name) -> const pt::ptree& {
        auto child = tree.get_child_optional(literal(name));
        return child ? *child : empty;
    };

    for (const auto& [name, child] : tree) {
        if (!child.data().empty())
            throw InputError("'" + name + "': values must live inside a [section]");
        static const std::set<std::string> fixed{"simulation", "radio", "phy", "mac", "queue",
                                                 "sweep"};
        if (!fixed.contains(name) && !name.starts_with("node.") && !name.starts_with("flow."))
            throw InputError("unknown section [" + name + "]");
    }

    {
        Section s(section("simulation"), "simulation");
        s.num("duration", c.duration);
        s.num("warmup", c.warmup);
        s.uint("seed", c.seed);
        s.flag("trace", c.trace);
        s.finish();
    }
    {
        Section s(section("radio"), "radio");
        s.num("pt", c.radio.pt);
        s.num("gt", c.radio.gt);
        s.num("gr", c.radio.gr);
        s.num("ht", c.radio.ht);
        s.num("hr", c.radio.hr);
        s.num("system_loss", c.radio.system_loss);
        s.num("lambda", c.radio.lambda);
        if (auto f = s.raw("fading")) {
            auto m = radio::fading_from_string(*f);
            if (!m)
                throw InputError("radio.fading: expected none or rayleigh, got '" + *f + "'");
            c.fading = *m;
        }
        s.finish();
    }
    {
        Section s(section("phy"), "phy");
        s.num("cs_thresh", c.phy.cs_thresh);
        s.num("rx_thresh", c.phy.rx_thresh);
        s.num("cp_thresh_db", c.phy.cp_thresh_db);
        s.num("data_rate", c.phy.data_rate);
        s.num("plcp_overhead", c.phy.plcp_overhead);
        s.finish();
    }
    {
        Section s(section("mac"), "mac");
        MacParams& m = c.mac;
        s.num("slot_time", m.slot_time);
        s.num("sifs", m.sifs);
        s.num("difs", m.difs);
        s.num("eifs", m.eifs);
        s.uint("cw_min", m.cw_min);
        s.uint("cw_max", m.cw_max);
        s.uint("short_retry_limit", m.short_retry_limit);
        s.uint("long_retry_limit", m.long_retry_limit);
        s.uint("rts_threshold", m.rts_threshold);
        s.flag("eifs_enabled", m.eifs_enabled);
        s.num("basic_rate", m.basic_rate);
        s.num("max_propagation_delay", m.max_propagation_delay);
        s.uint("rts_size", m.rts_size);
        s.uint("cts_size", m.cts_size);
        s.uint("ack_size", m.ack_size);
        s.uint("data_header_size", m.data_header_size);
        s.finish();
    }
    {
        Section s(section("queue"), "queue");
        s.uint("capacity", c.queue_capacity);
        s.finish();
    }

    std::map<std::uint64_t, FlowSpec> flows;
    for (const auto& [name, child] : tree) {
        if (auto id = indexed(name, "node.")) {
            Section s(child, name);
            NodeSpec n;
            n.id = static_cast<NodeId>(*id);
            const auto pos = s.raw("position");
            if (!pos)
                throw InputError(name + ".position is required");
            const auto xyz = split_list(*pos);
            if (xyz.size() != 2 && xyz.size() != 3)
                throw InputError(name + ".position: expected x, y or x, y, z");
            n.position.x = to_double(xyz[0], name + ".position");
            n.position.y = to_double(xyz[1], name + ".position");
            n.position.z = xyz.size() == 3 ? to_double(xyz[2], name + ".position") : c.radio.ht;
            if (auto p = s.raw("pt"))
                n.pt = to_double(*p, s.what("pt"));
            s.finish();
            c.nodes.push_back(n);
        } else if (auto idx = indexed(name, "flow.")) {
            Section s(child, name);
            FlowSpec f;
            auto src = s.raw("src");
            auto dst = s.raw("dst");
            if (!src || !dst)
                throw InputError(name + ": src and dst are required");
            f.src = static_cast<NodeId>(to_uint(*src, s.what("src")));
            f.dst = *dst == "broadcast" ? kBroadcast
                                        : static_cast<NodeId>(to_uint(*dst, s.what("dst")));
            s.uint("payload", f.payload);
            s.num("interval", f.interval);
            s.num("start", f.start);
            s.num("stop", f.stop);
            s.finish();
            flows.emplace(*idx, f);
        }
    }
    std::uint64_t expect = 0;
    for (auto& [idx, f] : flows) {
        if (idx != expect)
            throw InputError("flow sections must be numbered 0, 1, 2, ... (missing flow." +
                             std::to_string(expect) + ")");
        ++expect;
        c.flows.push_back(f);
    }

    if (tree.get_child_optional(literal("sweep"))) {
        Section s(section("sweep"), "sweep");
        SweepSpec sw;
        if (auto p = s.raw("parameter"))
            sw.parameter = *p;
        if (auto v = s.raw("values"))
            sw.values = split_list(*v);
        s.uint("replications", sw.replications);
        if (auto a = s.raw("anchor"))
            sw.anchor = static_cast<NodeId>(to_uint(*a, s.what("anchor")));
        s.finish();
        sw.validate();
        out.sweep = sw;
    }

    c.derive();
    c.validate();
    return out;
}

ConfigFile
parse_config(const std::string& text)
{
    return from_tree(read_tree(text));
}

std::string
emit_config(const ScenarioConfig& c, const std::optional<SweepSpec>& sweep)
{
    std::ostringstream os;
    auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
    auto num = [&](const char* k, double v) { kv(k, format_double(v)); };
    auto uint = [&](const char* k, std::uint64_t v) { kv(k, std::to_string(v)); };

    os << "[simulation]\n";
    num("duration", c.duration);
    num("warmup", c.warmup);
    uint("seed", c.seed);
    kv("trace", fmt_bool(c.trace));

    os << "\n[radio]\n";
    num("pt", c.radio.pt);
    num("gt", c.radio.gt);
    num("gr", c.radio.gr);
    num("ht", c.radio.ht);
    num("hr", c.radio.hr);
    num("system_loss", c.radio.system_loss);
    num("lambda", c.radio.lambda);
    kv("fading", std::string(radio::to_string(c.fading)));

    os << "\n[phy]\n";
    num("cs_thresh", c.phy.cs_thresh);
    num("rx_thresh", c.phy.rx_thresh);
    num("cp_thresh_db", c.phy.cp_thresh_db);
    num("data_rate", c.phy.data_rate);
    num("plcp_overhead", c.phy.plcp_overhead);

    os << "\n[mac]\n";
    const MacParams& m = c.mac;
    num("slot_time", m.slot_time);
    num("sifs", m.sifs);
    num("difs", m.difs);
    num("eifs", m.eifs);
    uint("cw_min", m.cw_min);
    uint("cw_max", m.cw_max);
    uint("short_retry_limit", m.short_retry_limit);
    uint("long_retry_limit", m.long_retry_limit);
    uint("rts_threshold", m.rts_threshold);
    kv("eifs_enabled", fmt_bool(m.eifs_enabled));
    num("basic_rate", m.basic_rate);
    num("max_propagation_delay", m.max_propagation_delay);
    uint("rts_size", m.rts_size);
    uint("cts_size", m.cts_size);
    uint("ack_size", m.ack_size);
    uint("data_header_size", m.data_header_size);

    os << "\n[queue]\n";
    uint("capacity", c.queue_capacity);

    for (const NodeSpec& n : c.nodes) {
        os << "\n[node." << n.id << "]\n";
        kv("position", format_double(n.position.x) + ", " + format_double(n.position.y) + ", " +
                           format_double(n.position.z));
        if (n.pt)
            num("pt", *n.pt);
    }
    for (std::size_t i = 0; i < c.flows.size(); ++i) {
        const FlowSpec& f = c.flows[i];
        os << "\n[flow." << i << "]\n";
        uint("src", f.src);
        kv("dst", f.dst == kBroadcast ? std::string("broadcast") : std::to_string(f.dst));
        uint("payload", f.payload);
        num("interval", f.interval);
        num("start", f.start);
        num("stop", f.stop);
    }

    if (sweep) {
        os << "\n[sweep]\n";
        kv("parameter", sweep->parameter);
        std::string values;
        for (const std::string& v : sweep->values)
            values += (values.empty() ? "" : ", ") + v;
        kv("values", values);
        uint("replications", sweep->replications);
        if (sweep->anchor)
            uint("anchor", *sweep->anchor);
    }
    return os.str();
}

std::string
read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace dcfsim::cli
