#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genwar/hex.h"
#include "genwar/rng.h"

namespace genwar {

enum class Terrain : std::uint8_t { open = 0, road, urban };

const char* terrain_name(Terrain t);
std::optional<Terrain> terrain_from_name(const std::string& name);

enum class Side : std::uint8_t { red = 0, blue };

const char* side_name(Side s);
std::optional<Side> side_from_name(const std::string& name);
inline Side opponent(Side s) { return s == Side::red ? Side::blue : Side::red; }

struct MapSpec {
  int rows = 0;
  int cols = 0;
  std::vector<Terrain> terrain;  // row-major, rows*cols entries
  HexCoord control_point;

  Terrain terrain_at(HexCoord c) const { return terrain[c.row * cols + c.col]; }
  bool in_bounds(HexCoord c) const { return hex_in_bounds(c, rows, cols); }
};

struct Unit {
  int id = 0;
  Side side = Side::red;
  HexCoord pos;
  bool alive = true;
  bool speed_boost = false;  // set while the last action was an accelerated move
  int vision_range = 4;
  int weapon_range = 2;
  double hit_base = 0.6;
};

enum class ActionType : std::uint8_t { hold = 0, move, accel_move, shoot, defend, evade };

// Plan-encodable actions carry codes 1..10 (1-6 move, 7 accelerate, 8 shoot,
// 9 defend, 10 evade). Hold is the fallback action and encodes as 0.
struct Action {
  ActionType type = ActionType::hold;
  Direction dir = Direction::east;  // move / accel_move
  int target = -1;                  // shoot

  static Action hold() { return {}; }
  static Action move(Direction d) { return {ActionType::move, d, -1}; }
  static Action accel_move(Direction d) { return {ActionType::accel_move, d, -1}; }
  static Action shoot(int target_id) { return {ActionType::shoot, Direction::east, target_id}; }
  static Action defend() { return {ActionType::defend, Direction::east, -1}; }
  static Action evade() { return {ActionType::evade, Direction::east, -1}; }

  friend bool operator==(const Action&, const Action&) = default;
};

int action_code(const Action& a);
std::string action_to_string(const Action& a);

using ActionMap = std::map<int, Action>;

struct ObservationRecord {
  int observer = 0;
  int observed = 0;
  Side observed_side = Side::red;
  HexCoord observed_pos;
  int tick = 0;
  std::string description;
};

struct GameState {
  MapSpec map;
  std::vector<Unit> units;
  int tick = 0;
  Rng rng;
  std::optional<Side> winner;
  // Tick of the most recent contested control-point arrival, if any. A tick
  // where movers of both sides bid for the point cancels those moves and the
  // game continues.
  std::optional<int> last_contested_tick;

  const Unit* find_unit(int id) const;
  Unit* find_unit(int id);
  const Unit* living_unit_at(HexCoord c) const;
  int count_living(Side s) const;
  std::vector<int> living_ids(Side s) const;
};

struct IllegalAction : std::runtime_error {
  IllegalAction(int unit_id, const std::string& what);
  int unit_id;
};

// Deterministic natural-language description of a unit as seen this tick.
std::string describe_unit(const GameState& s, const Unit& u);

// Everything the observer can see this tick, self included, nearest ids first.
// A dead observer sees nothing.
std::vector<ObservationRecord> visible_units(const GameState& s, const Unit& observer);

// Full-knowledge legality for one unit. Throws IllegalAction for an unknown or
// dead unit id.
std::vector<Action> legal_actions(const GameState& s, int unit_id);

// Replaces actions that are illegal under full knowledge (typically moves into
// hexes held by unseen units) with Hold, logging a note per replacement.
ActionMap sanitize_actions(const GameState& s, const ActionMap& actions);

// Advances one tick: simultaneous shot resolution, then movement, then the
// victory check. Throws IllegalAction when a submitted action fails the
// legality check. After a winner is set the board freezes and only the tick
// advances.
GameState step(const GameState& s, const ActionMap& actions);

std::optional<Side> check_victory(const GameState& s);

// FNV-1a digest over the observable state (tick, winner, units). Chain per
// tick for a trajectory hash.
std::uint64_t state_digest(const GameState& s);
std::uint64_t chain_digest(std::uint64_t acc, std::uint64_t next);

}  // namespace genwar
