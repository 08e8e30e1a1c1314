#pragma once

#include "probeboost/boosting.hpp"
#include "probeboost/resampling.hpp"
#include "probeboost/simgen.hpp"
#include "probeboost/stability.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace probeboost {

// Flat "key = value" files. '#' and ';' start comment lines; blank lines are
// skipped. Keys match the long command-line flag names, so a file written
// here can be passed to any subcommand through --config.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_kv(std::istream& in);
void write_kv(std::ostream& out, const KeyValues& values);

KeyValues to_kv(const BoostConfig& config);
KeyValues to_kv(const StabilityConfig& config);
KeyValues to_kv(const CvConfig& config);
KeyValues to_kv(const SimulationScenario& scenario);

// Missing keys keep the defaults of `base`; malformed values throw ConfigError.
BoostConfig boost_config_from_kv(const KeyValues& kv, BoostConfig base = {});
StabilityConfig stability_config_from_kv(const KeyValues& kv, StabilityConfig base = {});
CvConfig cv_config_from_kv(const KeyValues& kv, CvConfig base = {});
SimulationScenario scenario_from_kv(const KeyValues& kv, SimulationScenario base = {});

// Scenario grid file: n, p, p_inf and rho may hold comma-separated lists; the
// Cartesian product is returned in (n, p, p_inf, rho) lexicographic order.
std::vector<SimulationScenario> scenario_grid_from_kv(const KeyValues& kv);

// Merges b into a (b wins on duplicate keys).
KeyValues merge(KeyValues a, const KeyValues& b);

}  // namespace probeboost
