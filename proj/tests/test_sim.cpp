#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "genwar/scenario.h"
#include "genwar/sim.h"

using namespace genwar;

namespace {

// Bare 12x12 open board with the control point at (6,6) and no units.
GameState open_board(std::uint64_t seed = 1) {
  GameState s;
  s.map.rows = 12;
  s.map.cols = 12;
  s.map.terrain.assign(144, Terrain::open);
  s.map.control_point = {6, 6};
  s.rng = Rng(seed);
  return s;
}

Unit make_unit(int id, Side side, HexCoord pos) {
  Unit u;
  u.id = id;
  u.side = side;
  u.pos = pos;
  return u;
}

void set_terrain(GameState& s, HexCoord c, Terrain t) {
  s.map.terrain[c.row * s.map.cols + c.col] = t;
}

bool contains(const std::vector<Action>& actions, const Action& a) {
  return std::find(actions.begin(), actions.end(), a) != actions.end();
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("unit descriptions reflect position and pace") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {6, 6}));   // on the point
  s.units.push_back(make_unit(2, Side::red, {5, 6}));   // adjacent
  s.units.push_back(make_unit(3, Side::blue, {1, 6}));  // far, open
  s.units.push_back(make_unit(4, Side::red, {1, 2}));   // far, road
  s.units.push_back(make_unit(5, Side::blue, {11, 11}));
  set_terrain(s, {1, 2}, Terrain::road);
  set_terrain(s, {11, 11}, Terrain::urban);

  CHECK(describe_unit(s, *s.find_unit(1)) == "red agent 1 is seizing the control point");
  CHECK(describe_unit(s, *s.find_unit(2)) ==
        "red agent 2 is approaching the control point and trying to control it");
  CHECK(describe_unit(s, *s.find_unit(3)) == "blue agent 3 is moving across open ground");
  CHECK(describe_unit(s, *s.find_unit(4)) == "red agent 4 is moving on the road");
  CHECK(describe_unit(s, *s.find_unit(5)) ==
        "blue agent 5 is moving through the urban residential area");

  s.find_unit(2)->speed_boost = true;
  s.find_unit(4)->speed_boost = true;
  CHECK(describe_unit(s, *s.find_unit(2)) ==
        "red agent 2 is approaching the control point at a higher speed");
  CHECK(describe_unit(s, *s.find_unit(4)) == "red agent 4 is moving on the road at a higher speed");
}

TEST_CASE("visibility is inclusive at the range limit and sorted by distance") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {6, 1}));
  s.units.push_back(make_unit(2, Side::blue, {6, 5}));  // distance 4: visible
  s.units.push_back(make_unit(3, Side::blue, {6, 6}));  // distance 5: hidden
  s.units.push_back(make_unit(4, Side::red, {6, 3}));   // distance 2
  s.units.push_back(make_unit(5, Side::blue, {6, 2}));  // distance 1, but dead
  s.find_unit(5)->alive = false;

  const auto seen = visible_units(s, *s.find_unit(1));
  REQUIRE(seen.size() == 3);
  // Self at distance zero, then nearer ids first.
  CHECK(seen[0].observed == 1);
  CHECK(seen[1].observed == 4);
  CHECK(seen[2].observed == 2);
  CHECK(seen[2].observed_side == Side::blue);
  CHECK(seen[2].observed_pos == HexCoord{6, 5});
  CHECK(seen[0].observer == 1);
  CHECK(seen[0].description == describe_unit(s, *s.find_unit(1)));

  SUBCASE("a dead observer sees nothing") {
    s.find_unit(1)->alive = false;
    CHECK(visible_units(s, *s.find_unit(1)).empty());
  }

  SUBCASE("equidistant units order by id") {
    GameState t = open_board();
    t.units.push_back(make_unit(9, Side::red, {6, 1}));
    t.units.push_back(make_unit(7, Side::blue, {5, 1}));
    t.units.push_back(make_unit(3, Side::blue, {7, 1}));
    const auto eq = visible_units(t, *t.find_unit(9));
    REQUIRE(eq.size() == 3);
    CHECK(eq[0].observed == 9);
    CHECK(eq[1].observed == 3);
    CHECK(eq[2].observed == 7);
  }
}

TEST_CASE("legal actions cover moves, shots, and stances") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {3, 3}));
  s.units.push_back(make_unit(2, Side::blue, {3, 5}));  // weapon range exactly
  s.units.push_back(make_unit(3, Side::blue, {3, 8}));  // out of weapon range
  s.units.push_back(make_unit(4, Side::red, {3, 2}));   // ally blocks the west cell

  const auto acts = legal_actions(s, 1);
  // Five free move cells (west occupied), the matching accelerated moves, one
  // shot, and the three stances.
  CHECK(acts.size() == 5 + 5 + 1 + 3);
  CHECK(contains(acts, Action::move(Direction::east)));
  CHECK_FALSE(contains(acts, Action::move(Direction::west)));
  CHECK(contains(acts, Action::accel_move(Direction::east)));
  CHECK(contains(acts, Action::shoot(2)));
  CHECK_FALSE(contains(acts, Action::shoot(3)));  // too far
  CHECK_FALSE(contains(acts, Action::shoot(4)));  // friendly
  CHECK(contains(acts, Action::defend()));
  CHECK(contains(acts, Action::evade()));
  CHECK(acts.back() == Action::hold());

  SUBCASE("moves come first in direction order") {
    CHECK(acts[0] == Action::move(Direction::east));
    CHECK(acts[1] == Action::move(Direction::northeast));
  }

  SUBCASE("a fully surrounded unit can only shoot or stand") {
    GameState t = open_board();
    t.units.push_back(make_unit(1, Side::red, {5, 5}));
    for (int i = 0; i < 6; i++) {
      t.units.push_back(make_unit(10 + i, Side::red, hex_step({5, 5}, kAllDirections[i])));
    }
    const auto boxed = legal_actions(t, 1);
    CHECK(boxed.size() == 3);
    for (const Action& a : boxed) {
      CHECK((a.type == ActionType::defend || a.type == ActionType::evade ||
             a.type == ActionType::hold));
    }
  }

  SUBCASE("unknown and dead units are rejected") {
    CHECK_THROWS_AS(legal_actions(s, 42), IllegalAction);
    s.find_unit(1)->alive = false;
    CHECK_THROWS_AS(legal_actions(s, 1), IllegalAction);
    try {
      legal_actions(s, 1);
    } catch (const IllegalAction& e) {
      CHECK(e.unit_id == 1);
    }
  }
}

TEST_CASE("sanitize downgrades unexecutable orders to hold") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {3, 3}));
  s.units.push_back(make_unit(2, Side::red, {4, 3}));
  s.units.push_back(make_unit(3, Side::blue, {9, 9}));
  s.find_unit(3)->alive = false;

  ActionMap in;
  in[1] = Action::move(Direction::southeast);  // blocked by unit 2
  in[2] = Action::move(Direction::southeast);  // fine
  in[3] = Action::defend();                    // dead: dropped entirely
  in[4] = Action::hold();                      // unknown: dropped entirely

  const ActionMap out = sanitize_actions(s, in);
  REQUIRE(out.size() == 2);
  CHECK(out.at(1) == Action::hold());
  CHECK(out.at(2) == Action::move(Direction::southeast));
}

TEST_CASE("an empty action map advances only the clock") {
  GameState s = open_board(77);
  s.units.push_back(make_unit(1, Side::red, {2, 2}));
  s.units.push_back(make_unit(2, Side::blue, {9, 9}));
  s.find_unit(1)->speed_boost = true;

  const GameState next = step(s, {});
  CHECK(next.tick == s.tick + 1);
  CHECK(next.find_unit(1)->pos == HexCoord{2, 2});
  CHECK(next.find_unit(1)->speed_boost);  // untouched without an order
  CHECK(next.find_unit(2)->pos == HexCoord{9, 9});
  CHECK_FALSE(next.winner.has_value());
  CHECK(next.rng == s.rng);
}

TEST_CASE("step rejects illegal submissions outright") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {3, 3}));
  s.units.push_back(make_unit(2, Side::red, {4, 3}));

  ActionMap blocked;
  blocked[1] = Action::move(Direction::southeast);
  CHECK_THROWS_AS(step(s, blocked), IllegalAction);

  ActionMap ghost;
  ghost[42] = Action::hold();
  CHECK_THROWS_AS(step(s, ghost), IllegalAction);

  s.find_unit(2)->alive = false;
  ActionMap dead;
  dead[2] = Action::hold();
  CHECK_THROWS_AS(step(s, dead), IllegalAction);
}

TEST_CASE("movement resolves in id order and acceleration covers two cells") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {3, 3}));
  s.units.push_back(make_unit(2, Side::red, {5, 3}));
  // A distant opponent keeps the annihilation rule from ending these games.
  s.units.push_back(make_unit(99, Side::blue, {11, 11}));

  SUBCASE("lower id claims a contested destination") {
    // Both bid for (4,3); both orders are legal against the pre-step board.
    ActionMap both;
    both[1] = Action::move(Direction::southeast);  // (3,3) -> (4,3), col even
    both[2] = Action::move(Direction::northwest);  // (5,3) -> (4,3)
    const GameState next = step(s, both);
    CHECK(next.find_unit(1)->pos == HexCoord{4, 3});
    CHECK(next.find_unit(2)->pos == HexCoord{5, 3});  // blocked mid-phase, stays
  }

  SUBCASE("accelerated movement is two single steps") {
    ActionMap run;
    run[1] = Action::accel_move(Direction::northwest);
    const GameState next = step(s, run);
    CHECK(next.find_unit(1)->pos == HexCoord{1, 3});
    CHECK(next.find_unit(1)->speed_boost);
    // The boost clears on the next ordinary action.
    ActionMap walk;
    walk[1] = Action::move(Direction::northwest);
    const GameState after = step(next, walk);
    CHECK_FALSE(after.find_unit(1)->speed_boost);
  }

  SUBCASE("acceleration stops at the first blocked cell") {
    // Unit 2 at (5,3) blocks the second cell of an accelerated run south.
    ActionMap run;
    run[1] = Action::accel_move(Direction::southeast);
    const GameState next = step(s, run);
    CHECK(next.find_unit(1)->pos == HexCoord{4, 3});
    CHECK(next.find_unit(1)->speed_boost);
  }
}

TEST_CASE("shots share one pre-phase board and land together") {
  SUBCASE("certain hits kill both duelists simultaneously") {
    GameState s = open_board();
    s.units.push_back(make_unit(1, Side::red, {4, 4}));
    s.units.push_back(make_unit(2, Side::blue, {4, 5}));
    s.find_unit(1)->hit_base = 1.0;
    s.find_unit(2)->hit_base = 1.0;
    ActionMap duel;
    duel[1] = Action::shoot(2);
    duel[2] = Action::shoot(1);
    const GameState next = step(s, duel);
    CHECK_FALSE(next.find_unit(1)->alive);
    CHECK_FALSE(next.find_unit(2)->alive);
    CHECK_FALSE(next.winner.has_value());  // nobody left standing on either side
  }

  SUBCASE("urban cover and evasion subtract from the hit chance") {
    GameState s = open_board();
    s.units.push_back(make_unit(1, Side::red, {4, 4}));
    s.units.push_back(make_unit(2, Side::blue, {4, 5}));
    s.find_unit(1)->hit_base = 0.2;
    set_terrain(s, {4, 5}, Terrain::urban);  // 0.2 - 0.2 = 0: cannot hit
    ActionMap orders;
    orders[1] = Action::shoot(2);
    const GameState next = step(s, orders);
    CHECK(next.find_unit(2)->alive);
  }

  SUBCASE("evading reduces the chance to zero as well") {
    GameState s = open_board();
    s.units.push_back(make_unit(1, Side::red, {4, 4}));
    s.units.push_back(make_unit(2, Side::blue, {4, 5}));
    s.find_unit(1)->hit_base = 0.2;
    ActionMap orders;
    orders[1] = Action::shoot(2);
    orders[2] = Action::evade();
    const GameState next = step(s, orders);
    CHECK(next.find_unit(2)->alive);
  }

  SUBCASE("chances clamp at zero under stacked penalties") {
    GameState s = open_board();
    s.units.push_back(make_unit(1, Side::red, {4, 4}));
    s.units.push_back(make_unit(2, Side::blue, {4, 5}));
    s.find_unit(1)->hit_base = 0.3;  // 0.3 - 0.2 - 0.2 clamps to 0
    set_terrain(s, {4, 5}, Terrain::urban);
    ActionMap orders;
    orders[1] = Action::shoot(2);
    orders[2] = Action::evade();
    const GameState next = step(s, orders);
    CHECK(next.find_unit(2)->alive);
  }

  SUBCASE("rolls consume the shared stream in ascending shooter id order") {
    GameState s = open_board(1234);
    s.units.push_back(make_unit(1, Side::red, {4, 4}));
    s.units.push_back(make_unit(3, Side::red, {5, 4}));
    s.units.push_back(make_unit(11, Side::blue, {4, 5}));
    s.units.push_back(make_unit(12, Side::blue, {5, 5}));

    // Replay the two draws on a copy of the stream to predict both outcomes.
    Rng replay = s.rng;
    const bool kills_11 = replay.uniform01() < 0.6;
    const bool kills_12 = replay.uniform01() < 0.6;

    ActionMap orders;
    orders[1] = Action::shoot(11);
    orders[3] = Action::shoot(12);
    const GameState next = step(s, orders);
    CHECK(next.find_unit(11)->alive == !kills_11);
    CHECK(next.find_unit(12)->alive == !kills_12);
    CHECK(next.rng == replay);
  }
}

TEST_CASE("control point arrivals decide or contest the game") {
  GameState s = open_board();

  SUBCASE("a lone arrival wins immediately") {
    s.units.push_back(make_unit(1, Side::red, {6, 5}));
    s.units.push_back(make_unit(2, Side::blue, {0, 0}));
    ActionMap orders;
    orders[1] = Action::move(Direction::northeast);  // (6,5) -> (6,6)
    const GameState next = step(s, orders);
    REQUIRE(next.winner.has_value());
    CHECK(*next.winner == Side::red);
    CHECK(next.find_unit(1)->pos == s.map.control_point);
  }

  SUBCASE("simultaneous bids cancel each other and play continues") {
    s.units.push_back(make_unit(1, Side::red, {6, 5}));
    s.units.push_back(make_unit(2, Side::blue, {6, 7}));
    ActionMap orders;
    orders[1] = Action::move(Direction::northeast);  // (6,5) -> (6,6)
    orders[2] = Action::move(Direction::west);       // (6,7) -> (6,6)
    const GameState next = step(s, orders);
    CHECK_FALSE(next.winner.has_value());
    CHECK(next.find_unit(1)->pos == HexCoord{6, 5});
    CHECK(next.find_unit(2)->pos == HexCoord{6, 7});
    REQUIRE(next.last_contested_tick.has_value());
    CHECK(*next.last_contested_tick == s.tick);
  }

  SUBCASE("an accelerated bid through the point is cancelled whole") {
    s.units.push_back(make_unit(1, Side::red, {8, 6}));  // two south of the point
    s.units.push_back(make_unit(2, Side::blue, {6, 7}));
    ActionMap orders;
    orders[1] = Action::accel_move(Direction::northwest);  // (8,6) -> (7,6) -> (6,6)
    orders[2] = Action::move(Direction::west);
    const GameState next = step(s, orders);
    CHECK_FALSE(next.winner.has_value());
    CHECK(next.find_unit(1)->pos == HexCoord{8, 6});  // not even the first cell
    CHECK(next.last_contested_tick.has_value());
  }

  SUBCASE("moves away from the point still execute on a contested tick") {
    s.units.push_back(make_unit(1, Side::red, {6, 5}));
    s.units.push_back(make_unit(2, Side::blue, {6, 7}));
    s.units.push_back(make_unit(3, Side::red, {2, 2}));
    ActionMap orders;
    orders[1] = Action::move(Direction::northeast);
    orders[2] = Action::move(Direction::west);
    orders[3] = Action::move(Direction::east);  // (2,2) -> (2,3): even column east
    const GameState next = step(s, orders);
    CHECK(next.find_unit(3)->pos == HexCoord{2, 3});
  }
}

TEST_CASE("annihilation ends the game") {
  GameState s = open_board();
  s.units.push_back(make_unit(1, Side::red, {4, 4}));
  s.units.push_back(make_unit(2, Side::blue, {4, 5}));
  s.find_unit(1)->hit_base = 1.0;
  ActionMap orders;
  orders[1] = Action::shoot(2);
  const GameState next = step(s, orders);
  REQUIRE(next.winner.has_value());
  CHECK(*next.winner == Side::red);

  SUBCASE("the board freezes once a winner is set") {
    ActionMap more;
    more[1] = Action::move(Direction::east);
    const GameState frozen = step(next, more);
    CHECK(frozen.tick == next.tick + 1);
    CHECK(frozen.find_unit(1)->pos == next.find_unit(1)->pos);
    CHECK(frozen.winner == next.winner);
  }
}

TEST_CASE("victory check fixtures") {
  GameState s = open_board();
  SUBCASE("no units on either side is not a victory") {
    CHECK_FALSE(check_victory(s).has_value());
  }
  SUBCASE("a holder on the point wins regardless of the body count") {
    s.units.push_back(make_unit(1, Side::blue, {6, 6}));
    s.units.push_back(make_unit(2, Side::red, {0, 0}));
    REQUIRE(check_victory(s).has_value());
    CHECK(*check_victory(s) == Side::blue);
  }
  SUBCASE("last side standing wins") {
    s.units.push_back(make_unit(1, Side::red, {0, 0}));
    s.units.push_back(make_unit(2, Side::blue, {9, 9}));
    s.find_unit(2)->alive = false;
    REQUIRE(check_victory(s).has_value());
    CHECK(*check_victory(s) == Side::red);
  }
  SUBCASE("both sides alive off the point is undecided") {
    s.units.push_back(make_unit(1, Side::red, {0, 0}));
    s.units.push_back(make_unit(2, Side::blue, {9, 9}));
    CHECK_FALSE(check_victory(s).has_value());
  }
}

TEST_CASE("living units never increase across a step") {
  Scenario sc = make_default_scenario();
  GameState s = make_initial_state(sc, 5);
  int before = s.count_living(Side::red) + s.count_living(Side::blue);
  Rng pick(99);
  for (int t = 0; t < 25 && !s.winner; t++) {
    ActionMap orders;
    for (const Unit& u : s.units) {
      if (!u.alive) continue;
      const auto acts = legal_actions(s, u.id);
      orders[u.id] = acts[pick.bounded(acts.size())];
    }
    s = step(s, sanitize_actions(s, orders));
    const int after = s.count_living(Side::red) + s.count_living(Side::blue);
    CHECK(after <= before);
    before = after;
  }
}

TEST_CASE("state digests pin the trajectory") {
  GameState a = open_board();
  a.units.push_back(make_unit(1, Side::red, {3, 3}));
  GameState b = a;
  CHECK(state_digest(a) == state_digest(b));

  SUBCASE("every observable field feeds the digest") {
    GameState t = a;
    t.tick++;
    CHECK(state_digest(t) != state_digest(a));
    t = a;
    t.winner = Side::red;
    CHECK(state_digest(t) != state_digest(a));
    t = a;
    t.last_contested_tick = 0;
    CHECK(state_digest(t) != state_digest(a));
    t = a;
    t.find_unit(1)->pos = {3, 4};
    CHECK(state_digest(t) != state_digest(a));
    t = a;
    t.find_unit(1)->alive = false;
    CHECK(state_digest(t) != state_digest(a));
    t = a;
    t.find_unit(1)->speed_boost = true;
    CHECK(state_digest(t) != state_digest(a));
  }

  SUBCASE("chaining is order sensitive") {
    const std::uint64_t h1 = chain_digest(chain_digest(0, 11), 22);
    const std::uint64_t h2 = chain_digest(chain_digest(0, 22), 11);
    CHECK(h1 != h2);
  }
}

TEST_CASE("scenario serialization round-trips") {
  const Scenario sc = make_default_scenario();
  CHECK(sc.map.rows == 20);
  CHECK(sc.map.cols == 20);
  CHECK(sc.units.size() == 11);
  CHECK(sc.map.in_bounds(sc.map.control_point));

  std::stringstream buf;
  save_scenario(sc, buf);
  const Scenario back = parse_scenario(buf);
  CHECK(back.map.rows == sc.map.rows);
  CHECK(back.map.cols == sc.map.cols);
  CHECK(back.max_ticks == sc.max_ticks);
  CHECK(back.map.control_point == sc.map.control_point);
  CHECK(back.map.terrain == sc.map.terrain);
  REQUIRE(back.units.size() == sc.units.size());
  for (std::size_t i = 0; i < sc.units.size(); ++i) {
    CHECK(back.units[i].id == sc.units[i].id);
    CHECK(back.units[i].side == sc.units[i].side);
    CHECK(back.units[i].pos == sc.units[i].pos);
  }
  // Identical scenarios seed identical simulations.
  CHECK(state_digest(make_initial_state(sc, 9)) == state_digest(make_initial_state(back, 9)));

  SUBCASE("missing files raise a scenario error") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
  }

  SUBCASE("malformed content raises a scenario error") {
    std::stringstream bad("{\"map\": 3}");
    CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
  }
}

}  // TEST_SUITE
