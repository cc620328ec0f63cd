#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "wpcn/model.hpp"
#include "wpcn/planner.hpp"
#include "wpcn/separated.hpp"

// File formats of the CLI: JSON scenarios and placements, CSV metrics and
// iteration histories. Serialization is canonical so identical inputs
// produce byte-identical files, and parse(serialize(x)) == x holds exactly.

namespace wpcn {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

std::string placement_to_json(const Placement& placement, bool hap_mode);
Placement placement_from_json(const std::string& text);
Placement load_placement(const std::string& path);

/// Per-device metric rows plus one summary row carrying P_r, t* and cost.
std::string metrics_to_csv(const Metrics& metrics, const Scenario& scenario,
                           std::optional<double> t_star = std::nullopt,
                           std::optional<double> cost = std::nullopt);

std::string history_to_csv(const SolveReport& report);

struct RunSummary {
    std::string command;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    std::optional<double> p_r;
    std::optional<double> t_star;
    std::optional<double> cost;
    std::optional<bool> feasible;
};

std::string run_record_to_json(const RunSummary& summary, const std::string& scenario_digest,
                               const std::vector<std::string>& outputs);

/// FNV-1a 64 over the canonical scenario serialization, hex encoded.
std::string scenario_digest(const Scenario& scenario);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Round-trip exact formatting for CSV cells.
std::string format_double(double v);

}  // namespace wpcn
