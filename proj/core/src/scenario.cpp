#include "genwar/scenario.h"

#include <fstream>
#include <set>

#include <json.hpp>

namespace genwar {

namespace {

using ordered_json = nlohmann::ordered_json;

void validate(const Scenario& sc) {
  const MapSpec& m = sc.map;
  if (m.rows < 1 || m.rows > 99 || m.cols < 1 || m.cols > 99) {
    throw ScenarioError("rows and cols must be in [1,99] for the 4-digit hex id convention");
  }
  if (static_cast<int>(m.terrain.size()) != m.rows * m.cols) {
    throw ScenarioError("terrain grid does not match rows x cols");
  }
  if (!m.in_bounds(m.control_point)) {
    throw ScenarioError("control_point outside the map");
  }
  std::set<int> ids;
  std::set<std::pair<int, int>> cells;
  for (const Unit& u : sc.units) {
    if (!m.in_bounds(u.pos)) {
      throw ScenarioError("unit " + std::to_string(u.id) + " placed outside the map");
    }
    if (!ids.insert(u.id).second) {
      throw ScenarioError("duplicate unit id " + std::to_string(u.id));
    }
    if (!cells.insert({u.pos.row, u.pos.col}).second) {
      throw ScenarioError("two units share hex " + hex_id_string(u.pos));
    }
    if (u.hit_base < 0.0 || u.hit_base > 1.0) {
      throw ScenarioError("unit " + std::to_string(u.id) + ": hit_base outside [0,1]");
    }
    if (u.vision_range < 0 || u.weapon_range < 0) {
      throw ScenarioError("unit " + std::to_string(u.id) + ": negative range");
    }
  }
  if (sc.max_ticks < 1) throw ScenarioError("max_ticks must be >= 1");
}

}  // namespace

Scenario make_default_scenario() {
  Scenario sc;
  sc.map.rows = 20;
  sc.map.cols = 20;
  sc.map.terrain.assign(20 * 20, Terrain::open);
  for (int r = 0; r < 20; r++) {
    sc.map.terrain[r * 20 + 10] = Terrain::road;
  }
  for (int r = 6; r <= 9; r++) {
    for (int c = 4; c <= 7; c++) {
      sc.map.terrain[r * 20 + c] = Terrain::urban;
    }
  }
  sc.map.control_point = HexCoord{10, 10};
  sc.max_ticks = 200;

  auto add = [&](int id, Side side, int row, int col) {
    Unit u;
    u.id = id;
    u.side = side;
    u.pos = HexCoord{row, col};
    sc.units.push_back(u);
  };
  add(1, Side::red, 19, 4);
  add(2, Side::red, 19, 7);
  add(3, Side::red, 19, 10);
  add(4, Side::red, 19, 13);
  add(5, Side::red, 19, 16);
  add(6, Side::red, 18, 10);
  add(7, Side::blue, 0, 4);
  add(8, Side::blue, 0, 8);
  add(9, Side::blue, 0, 12);
  add(10, Side::blue, 0, 16);
  add(11, Side::blue, 1, 10);
  return sc;
}

GameState make_initial_state(const Scenario& sc, std::uint64_t seed) {
  GameState s;
  s.map = sc.map;
  s.units = sc.units;
  s.tick = 0;
  s.rng = Rng(seed);
  return s;
}

Scenario parse_scenario(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    Scenario sc;
    sc.map.rows = j.at("rows").get<int>();
    sc.map.cols = j.at("cols").get<int>();
    for (const auto& row : j.at("terrain")) {
      for (const auto& tag : row) {
        const auto t = terrain_from_name(tag.get<std::string>());
        if (!t) throw ScenarioError("unknown terrain tag: " + tag.get<std::string>());
        sc.map.terrain.push_back(*t);
      }
    }
    sc.map.control_point = HexCoord{j.at("control_point").at(0).get<int>(),
                                    j.at("control_point").at(1).get<int>()};
    for (const auto& ju : j.at("units")) {
      Unit u;
      u.id = ju.at("id").get<int>();
      const auto side = side_from_name(ju.at("side").get<std::string>());
      if (!side) throw ScenarioError("unknown side: " + ju.at("side").get<std::string>());
      u.side = *side;
      u.pos = HexCoord{ju.at("pos").at(0).get<int>(), ju.at("pos").at(1).get<int>()};
      u.vision_range = ju.at("vision_range").get<int>();
      u.weapon_range = ju.at("weapon_range").get<int>();
      u.hit_base = ju.at("hit_base").get<double>();
      sc.units.push_back(u);
    }
    sc.max_ticks = j.at("max_ticks").get<int>();
    validate(sc);
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario schema error: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  return parse_scenario(in);
}

void save_scenario(const Scenario& sc, std::ostream& out) {
  ordered_json j;
  j["rows"] = sc.map.rows;
  j["cols"] = sc.map.cols;
  ordered_json terrain = ordered_json::array();
  for (int r = 0; r < sc.map.rows; r++) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < sc.map.cols; c++) {
      row.push_back(terrain_name(sc.map.terrain_at(HexCoord{r, c})));
    }
    terrain.push_back(row);
  }
  j["terrain"] = terrain;
  j["control_point"] = {sc.map.control_point.row, sc.map.control_point.col};
  ordered_json units = ordered_json::array();
  for (const Unit& u : sc.units) {
    ordered_json ju;
    ju["id"] = u.id;
    ju["side"] = side_name(u.side);
    ju["pos"] = {u.pos.row, u.pos.col};
    ju["vision_range"] = u.vision_range;
    ju["weapon_range"] = u.weapon_range;
    ju["hit_base"] = u.hit_base;
    units.push_back(ju);
  }
  j["units"] = units;
  j["max_ticks"] = sc.max_ticks;
  out << j.dump(2) << "\n";
}

}  // namespace genwar
