#pragma once

#include <string>
#include <vector>

#include "netresp/analytic.hpp"
#include "netresp/errors.hpp"

namespace netresp {

// One named model configuration, loadable from the line-oriented
// "key = value" scenario format.  Keys: label, w, b, alpha, q, d,
// alpha_schedule, q_schedule, response (comma-separated reals), graph
// (edge-list path), seed_node.  '#' starts a comment; unknown or duplicate
// keys are rejected with their line number.
struct ScenarioSpec {
  std::string label = "scenario";
  ModelParams params;
  std::vector<double> attenuation_schedule;  // key alpha_schedule
  std::vector<double> compliance_schedule;   // key q_schedule
  std::vector<double> response;              // key response
  std::string graph_path;                    // key graph; empty = none
  int seed_node = -1;                        // key seed_node; -1 = unset

  bool has_schedules() const {
    return !attenuation_schedule.empty() || !compliance_schedule.empty() ||
           !response.empty();
  }

  // Explicit schedules with missing sides filled by the constant parameters.
  DepthSchedule schedule() const;

  void validate() const;

  bool operator==(const ScenarioSpec&) const = default;
};

ScenarioSpec parse_scenario(const std::string& text);

// Emits a file that parses back to an identical spec (doubles are written in
// shortest round-trip form).
std::string write_scenario(const ScenarioSpec& spec);

// Shipped scenarios, addressable by name from the CLI.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);  // throws ValidationError
ScenarioSpec load_preset(const std::string& name);

// Shortest-round-trip decimal form of a double (also used for CSV cells).
std::string format_double(double value);

}  // namespace netresp
