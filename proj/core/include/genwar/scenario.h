#pragma once

#include <iosfwd>
#include <string>

#include "genwar/sim.h"

namespace genwar {

struct Scenario {
  MapSpec map;
  std::vector<Unit> units;
  int max_ticks = 200;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 20x20 board with a road column through the center, an urban cluster, the
// control point mid-map, six red units against five blue.
Scenario make_default_scenario();

GameState make_initial_state(const Scenario& sc, std::uint64_t seed);

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(std::istream& in);
void save_scenario(const Scenario& sc, std::ostream& out);

}  // namespace genwar
