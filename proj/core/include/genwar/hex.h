#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace genwar {

// Offset coordinates on an odd-q vertical hex layout: columns run top to
// bottom, odd columns are shifted half a hex down. Row 0 is the top edge.
struct HexCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(const HexCoord&, const HexCoord&) = default;
  friend auto operator<=>(const HexCoord&, const HexCoord&) = default;
};

// The six hex directions in the fixed resolution order. Indices 0..5 map to
// action codes 1..6.
enum class Direction : int { east = 0, northeast, northwest, west, southwest, southeast };

inline constexpr std::array<Direction, 6> kAllDirections = {
    Direction::east,      Direction::northeast, Direction::northwest,
    Direction::west,      Direction::southwest, Direction::southeast};

const char* direction_name(Direction d);

// Packs a coordinate into the 4-digit hexagon id convention: id = row*100+col,
// so row 14 col 3 becomes 1403. Requires row and col in [0,99].
int pack_hex_id(HexCoord c);
HexCoord unpack_hex_id(int id);
std::string hex_id_string(HexCoord c);  // zero-padded, "0704"

// Neighbor in one direction, ignoring bounds (may be negative).
HexCoord hex_step(HexCoord c, Direction d);

// Shortest-path distance between two hexes on an unbounded grid.
int hex_distance(HexCoord a, HexCoord b);

// In-bounds check against a rows x cols grid.
bool hex_in_bounds(HexCoord c, int rows, int cols);

// The in-bounds subset of the six neighbors, in direction order.
std::vector<HexCoord> hex_neighbors(HexCoord c, int rows, int cols);

// First direction whose step from `from` minimizes the distance to `to`;
// returns false when already there.
bool greedy_direction(HexCoord from, HexCoord to, Direction* out);

}  // namespace genwar
