#pragma once

#include "dcfsim/scenario/config.hpp"

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcfsim::cli {

/// Parameter sweep: every value is run `replications` times with seeds
/// seed, seed+1, ...
struct SweepSpec
{
    std::string parameter;           ///< "distance" or "section.key"
    std::vector<std::string> values;
    std::uint32_t replications = 1;
    std::optional<NodeId> anchor;    ///< distance sweeps: fixed node (default: first flow's dst)

    void validate() const;
    bool operator==(const SweepSpec&) const = default;
};

struct ConfigFile
{
    ScenarioConfig scenario;
    std::optional<SweepSpec> sweep;
};

using Tree = boost::property_tree::ptree;

/// Read INI text into a tree. Throws InputError("line N: ...") on syntax errors.
Tree read_tree(const std::string& text);

/// Set `section.key` (the key is the part after the last dot, so
/// "node.0.position" addresses key "position" of section "node.0").
void set_value(Tree& tree, std::string_view dotted, const std::string& value);

/// Apply "section.key=value" overrides.
void apply_overrides(Tree& tree, const std::vector<std::string>& assignments);

/// Convert, derive and validate. Throws InputError naming the offending key
/// or invariant.
ConfigFile from_tree(const Tree& tree);

ConfigFile parse_config(const std::string& text);

/// Self-contained text form with every value explicit.
/// parse_config(emit_config(c)).scenario == c for any derived, valid c.
std::string emit_config(const ScenarioConfig& c, const std::optional<SweepSpec>& sweep = {});

std::string read_file(const std::string& path);

/// Shortest text that parses back to exactly `v`.
std::string format_double(double v);

/// Comma-separated list, surrounding blanks trimmed from each item.
std::vector<std::string> split_list(std::string_view s);

} // namespace dcfsim::cli
