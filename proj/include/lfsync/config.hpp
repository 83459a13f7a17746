#pragma once

#include <map>
#include <string>
#include <vector>

#include "lfsync/scenario.hpp"

namespace lfsync {

// Flat dotted-key text: one `key = value` per line, # comments, blank lines
// ignored. Duplicate keys and malformed lines are rejected.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

// Strict translation; unknown keys raise ParseError so typos cannot fall
// back to defaults silently. Schema documented in the README.
ScenarioConfig scenario_from_config(const ConfigMap& map);

// Full echo of every effective field with %.17g doubles; parsing the echo
// reproduces the run bit for bit.
ConfigMap scenario_to_config(const ScenarioConfig& cfg);

std::string config_text(const ConfigMap& map);

struct SweepGrid {
  std::vector<std::string> topologies;  // topology names or "random9"
  std::vector<int> m_list;
  std::vector<TunerKind> tuners;
};

// sweep.topologies / sweep.m / sweep.tuners, comma-separated lists.
SweepGrid grid_from_config(const ConfigMap& map);

// Scenario keys only (sweep.* removed).
ConfigMap strip_sweep_keys(const ConfigMap& map);

}  // namespace lfsync
