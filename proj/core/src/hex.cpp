#include "genwar/hex.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace genwar {
namespace {

struct Cube {
  int x, y, z;
};

// odd-q offset -> cube. Odd columns are pushed down, so the row correction
// uses (col - (col & 1)) / 2. Works for the non-negative columns we allow.
Cube to_cube(HexCoord c) {
  const int x = c.col;
  const int z = c.row - (c.col - (c.col & 1)) / 2;
  return Cube{x, -x - z, z};
}

HexCoord from_cube(Cube q) {
  const int col = q.x;
  const int row = q.z + (col - (col & 1)) / 2;
  return HexCoord{row, col};
}

// Cube-space unit vectors in the fixed E, NE, NW, W, SW, SE order.
constexpr int kCubeDir[6][3] = {
    {+1, -1, 0}, {+1, 0, -1}, {0, +1, -1}, {-1, +1, 0}, {-1, 0, +1}, {0, -1, +1},
};

}  // namespace

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::east: return "east";
    case Direction::northeast: return "northeast";
    case Direction::northwest: return "northwest";
    case Direction::west: return "west";
    case Direction::southwest: return "southwest";
    case Direction::southeast: return "southeast";
  }
  return "?";
}

int pack_hex_id(HexCoord c) {
  if (c.row < 0 || c.row > 99 || c.col < 0 || c.col > 99) {
    throw std::out_of_range("hex id packing requires row and col in [0,99]");
  }
  return c.row * 100 + c.col;
}

HexCoord unpack_hex_id(int id) {
  if (id < 0 || id > 9999) {
    throw std::out_of_range("hex id out of range");
  }
  return HexCoord{id / 100, id % 100};
}

std::string hex_id_string(HexCoord c) {
  const int id = pack_hex_id(c);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d", id);
  return buf;
}

HexCoord hex_step(HexCoord c, Direction d) {
  Cube q = to_cube(c);
  const int i = static_cast<int>(d);
  q.x += kCubeDir[i][0];
  q.y += kCubeDir[i][1];
  q.z += kCubeDir[i][2];
  return from_cube(q);
}

int hex_distance(HexCoord a, HexCoord b) {
  const Cube qa = to_cube(a);
  const Cube qb = to_cube(b);
  return (std::abs(qa.x - qb.x) + std::abs(qa.y - qb.y) + std::abs(qa.z - qb.z)) / 2;
}

bool hex_in_bounds(HexCoord c, int rows, int cols) {
  return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
}

std::vector<HexCoord> hex_neighbors(HexCoord c, int rows, int cols) {
  if (!hex_in_bounds(c, rows, cols)) {
    throw std::out_of_range("hex_neighbors: coordinate outside the map");
  }
  std::vector<HexCoord> out;
  out.reserve(6);
  for (Direction d : kAllDirections) {
    const HexCoord n = hex_step(c, d);
    if (hex_in_bounds(n, rows, cols)) out.push_back(n);
  }
  return out;
}

bool greedy_direction(HexCoord from, HexCoord to, Direction* out) {
  if (from == to) return false;
  int best = hex_distance(from, to);
  bool found = false;
  for (Direction d : kAllDirections) {
    const int dist = hex_distance(hex_step(from, d), to);
    if (dist < best) {
      best = dist;
      *out = d;
      found = true;
    }
  }
  return found;
}

}  // namespace genwar
