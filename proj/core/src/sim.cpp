#include "genwar/sim.h"

#include <algorithm>
#include <set>

#include "genwar/log.h"

namespace genwar {

const char* terrain_name(Terrain t) {
  switch (t) {
    case Terrain::open: return "open";
    case Terrain::road: return "road";
    case Terrain::urban: return "urban";
  }
  return "?";
}

std::optional<Terrain> terrain_from_name(const std::string& name) {
  if (name == "open") return Terrain::open;
  if (name == "road") return Terrain::road;
  if (name == "urban") return Terrain::urban;
  return std::nullopt;
}

const char* side_name(Side s) { return s == Side::red ? "red" : "blue"; }

std::optional<Side> side_from_name(const std::string& name) {
  if (name == "red") return Side::red;
  if (name == "blue") return Side::blue;
  return std::nullopt;
}

int action_code(const Action& a) {
  switch (a.type) {
    case ActionType::hold: return 0;
    case ActionType::move: return 1 + static_cast<int>(a.dir);
    case ActionType::accel_move: return 7;
    case ActionType::shoot: return 8;
    case ActionType::defend: return 9;
    case ActionType::evade: return 10;
  }
  return 0;
}

std::string action_to_string(const Action& a) {
  switch (a.type) {
    case ActionType::hold: return "hold";
    case ActionType::move: return std::string("move ") + direction_name(a.dir);
    case ActionType::accel_move: return std::string("accelerate ") + direction_name(a.dir);
    case ActionType::shoot: return "shoot unit " + std::to_string(a.target);
    case ActionType::defend: return "defend";
    case ActionType::evade: return "evade";
  }
  return "?";
}

const Unit* GameState::find_unit(int id) const {
  for (const Unit& u : units) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

Unit* GameState::find_unit(int id) {
  return const_cast<Unit*>(static_cast<const GameState*>(this)->find_unit(id));
}

const Unit* GameState::living_unit_at(HexCoord c) const {
  for (const Unit& u : units) {
    if (u.alive && u.pos == c) return &u;
  }
  return nullptr;
}

int GameState::count_living(Side s) const {
  int n = 0;
  for (const Unit& u : units) {
    if (u.alive && u.side == s) n++;
  }
  return n;
}

std::vector<int> GameState::living_ids(Side s) const {
  std::vector<int> out;
  for (const Unit& u : units) {
    if (u.alive && u.side == s) out.push_back(u.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IllegalAction::IllegalAction(int unit, const std::string& what)
    : std::runtime_error("unit " + std::to_string(unit) + ": " + what), unit_id(unit) {}

std::string describe_unit(const GameState& s, const Unit& u) {
  const std::string who = std::string(side_name(u.side)) + " agent " + std::to_string(u.id);
  const int dist_cp = hex_distance(u.pos, s.map.control_point);
  if (dist_cp == 0) {
    return who + " is seizing the control point";
  }
  if (dist_cp <= 2) {
    if (u.speed_boost) return who + " is approaching the control point at a higher speed";
    return who + " is approaching the control point and trying to control it";
  }
  std::string text;
  switch (s.map.terrain_at(u.pos)) {
    case Terrain::road: text = who + " is moving on the road"; break;
    case Terrain::urban: text = who + " is moving through the urban residential area"; break;
    case Terrain::open: text = who + " is moving across open ground"; break;
  }
  if (u.speed_boost) text += " at a higher speed";
  return text;
}

std::vector<ObservationRecord> visible_units(const GameState& s, const Unit& observer) {
  std::vector<ObservationRecord> out;
  if (!observer.alive) return out;
  std::vector<const Unit*> seen;
  for (const Unit& u : s.units) {
    if (!u.alive) continue;
    if (hex_distance(observer.pos, u.pos) > observer.vision_range) continue;
    seen.push_back(&u);
  }
  std::sort(seen.begin(), seen.end(), [&](const Unit* a, const Unit* b) {
    const int da = hex_distance(observer.pos, a->pos);
    const int db = hex_distance(observer.pos, b->pos);
    return da != db ? da < db : a->id < b->id;
  });
  out.reserve(seen.size());
  for (const Unit* u : seen) {
    out.push_back(ObservationRecord{observer.id, u->id, u->side, u->pos, s.tick, describe_unit(s, *u)});
  }
  return out;
}

namespace {

bool cell_free(const GameState& s, HexCoord c) {
  return s.map.in_bounds(c) && s.living_unit_at(c) == nullptr;
}

bool target_visible(const GameState& s, const Unit& shooter, const Unit& target) {
  return target.alive && hex_distance(shooter.pos, target.pos) <= shooter.vision_range;
}

bool shot_legal(const GameState& s, const Unit& shooter, int target_id) {
  const Unit* t = s.find_unit(target_id);
  if (!t || !t->alive || t->side == shooter.side) return false;
  if (hex_distance(shooter.pos, t->pos) > shooter.weapon_range) return false;
  return target_visible(s, shooter, *t);
}

bool action_legal(const GameState& s, const Unit& u, const Action& a) {
  switch (a.type) {
    case ActionType::hold:
    case ActionType::defend:
    case ActionType::evade:
      return true;
    case ActionType::move:
      return cell_free(s, hex_step(u.pos, a.dir));
    case ActionType::accel_move:
      return cell_free(s, hex_step(u.pos, a.dir));
    case ActionType::shoot:
      return shot_legal(s, u, a.target);
  }
  return false;
}

}  // namespace

std::vector<Action> legal_actions(const GameState& s, int unit_id) {
  const Unit* u = s.find_unit(unit_id);
  if (!u) throw IllegalAction(unit_id, "unknown unit id");
  if (!u->alive) throw IllegalAction(unit_id, "unit is dead");

  std::vector<Action> out;
  for (Direction d : kAllDirections) {
    if (cell_free(s, hex_step(u->pos, d))) out.push_back(Action::move(d));
  }
  for (Direction d : kAllDirections) {
    if (cell_free(s, hex_step(u->pos, d))) out.push_back(Action::accel_move(d));
  }
  for (const Unit& t : s.units) {
    if (t.side == u->side) continue;
    if (shot_legal(s, *u, t.id)) out.push_back(Action::shoot(t.id));
  }
  out.push_back(Action::defend());
  out.push_back(Action::evade());
  out.push_back(Action::hold());
  return out;
}

ActionMap sanitize_actions(const GameState& s, const ActionMap& actions) {
  ActionMap out;
  for (const auto& [id, a] : actions) {
    const Unit* u = s.find_unit(id);
    if (!u || !u->alive) continue;
    if (action_legal(s, *u, a)) {
      out[id] = a;
    } else {
      log_warning("unit " + std::to_string(id) + ": " + action_to_string(a) +
                  " not executable, holding instead");
      out[id] = Action::hold();
    }
  }
  return out;
}

std::optional<Side> check_victory(const GameState& s) {
  if (s.winner) return s.winner;
  if (const Unit* holder = s.living_unit_at(s.map.control_point)) {
    return holder->side;
  }
  const int red = s.count_living(Side::red);
  const int blue = s.count_living(Side::blue);
  if (red > 0 && blue == 0) return Side::red;
  if (blue > 0 && red == 0) return Side::blue;
  return std::nullopt;
}

GameState step(const GameState& s, const ActionMap& actions) {
  GameState next = s;

  if (next.winner) {
    next.tick++;
    return next;
  }

  // Validation against the pre-step state.
  for (const auto& [id, a] : actions) {
    const Unit* u = next.find_unit(id);
    if (!u) throw IllegalAction(id, "unknown unit id");
    if (!u->alive) throw IllegalAction(id, "dead unit cannot act");
    if (!action_legal(next, *u, a)) {
      throw IllegalAction(id, "illegal action: " + action_to_string(a));
    }
  }

  auto action_of = [&](int id) -> const Action* {
    auto it = actions.find(id);
    return it == actions.end() ? nullptr : &it->second;
  };

  // Shot phase. All shots fire against the pre-phase board; deaths land after
  // every shot has rolled. Shooters roll in ascending id order so the RNG
  // stream is reproducible.
  std::set<int> killed;
  for (const auto& [id, a] : actions) {
    if (a.type != ActionType::shoot) continue;
    const Unit* shooter = next.find_unit(id);
    const Unit* target = next.find_unit(a.target);
    double p = shooter->hit_base;
    if (next.map.terrain_at(target->pos) == Terrain::urban) p -= 0.2;
    const Action* ta = action_of(target->id);
    if (ta && ta->type == ActionType::evade) p -= 0.2;
    p = std::clamp(p, 0.0, 1.0);
    if (next.rng.uniform01() < p) killed.insert(target->id);
  }
  for (int id : killed) {
    next.find_unit(id)->alive = false;
  }

  // Move phase. A tick where both sides bid for the control point is a
  // contested arrival: every bid move is cancelled and the game continues.
  bool red_bid = false;
  bool blue_bid = false;
  auto bids_control_point = [&](const Unit& u, const Action& a) {
    if (a.type != ActionType::move && a.type != ActionType::accel_move) return false;
    const HexCoord first = hex_step(u.pos, a.dir);
    if (first == next.map.control_point) return true;
    return a.type == ActionType::accel_move && hex_step(first, a.dir) == next.map.control_point;
  };
  for (const auto& [id, a] : actions) {
    const Unit* u = next.find_unit(id);
    if (!u->alive) continue;
    if (bids_control_point(*u, a)) {
      (u->side == Side::red ? red_bid : blue_bid) = true;
    }
  }
  const bool contested = red_bid && blue_bid;
  if (contested) next.last_contested_tick = next.tick;

  for (const auto& [id, a] : actions) {
    Unit* u = next.find_unit(id);
    if (!u->alive) continue;
    u->speed_boost = a.type == ActionType::accel_move;
    if (a.type != ActionType::move && a.type != ActionType::accel_move) continue;
    if (contested && bids_control_point(*u, a)) continue;
    const int cells = a.type == ActionType::accel_move ? 2 : 1;
    for (int i = 0; i < cells; i++) {
      const HexCoord dest = hex_step(u->pos, a.dir);
      if (!cell_free(next, dest)) break;
      u->pos = dest;
    }
  }

  next.winner = check_victory(next);
  next.tick++;
  return next;
}

std::uint64_t chain_digest(std::uint64_t acc, std::uint64_t next) {
  acc ^= next + 0x9e3779b97f4a7c15ull + (acc << 6) + (acc >> 2);
  return acc;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; i++) {
    h ^= (v >> (i * 8)) & 0xff;
    h *= 0x00000100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t state_digest(const GameState& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(h, static_cast<std::uint64_t>(s.tick));
  h = fnv1a(h, s.winner ? 1 + static_cast<std::uint64_t>(*s.winner) : 0);
  h = fnv1a(h, s.last_contested_tick ? 1 + static_cast<std::uint64_t>(*s.last_contested_tick) : 0);
  for (const Unit& u : s.units) {
    h = fnv1a(h, static_cast<std::uint64_t>(u.id));
    h = fnv1a(h, static_cast<std::uint64_t>(u.side));
    h = fnv1a(h, static_cast<std::uint64_t>(u.pos.row) << 32 | static_cast<std::uint32_t>(u.pos.col));
    h = fnv1a(h, (u.alive ? 1u : 0u) | (u.speed_boost ? 2u : 0u));
  }
  return h;
}

}  // namespace genwar
