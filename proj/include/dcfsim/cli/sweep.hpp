#pragma once

#include "dcfsim/cli/config_io.hpp"
#include "dcfsim/scenario/metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dcfsim::cli {

struct SweepRow
{
    std::string parameter;
    std::string value;
    std::uint32_t replication = 0;
    std::uint64_t seed = 0;
    Metrics metrics;
};

/// Move every node except `anchor` so that its horizontal distance to the
/// anchor becomes `d`, keeping its bearing and antenna height. A node sitting
/// on the anchor is placed along +x.
void set_distance(ScenarioConfig& cfg, NodeId anchor, double d);

/// The scenario for one sweep point. Values for "distance" go through
/// set_distance(); anything else is written into the tree as section.key and
/// the whole config is re-read, so every invariant is checked again.
ScenarioConfig sweep_point(const Tree& base, const SweepSpec& sweep, const std::string& value,
                           std::uint32_t replication);

/// Run every (value, replication) point, using up to `jobs` threads. Rows
/// come back in (value, replication) order whatever the completion order.
std::vector<SweepRow> run_sweep(const Tree& base, const SweepSpec& sweep, unsigned jobs);

/// Column names for a scenario with `flows` flows.
std::vector<std::string> csv_header(std::size_t flows);
void write_csv_header(std::ostream& os, std::size_t flows);
void write_csv_row(std::ostream& os, const SweepRow& row);

} // namespace dcfsim::cli
