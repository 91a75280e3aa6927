#pragma once

#include "decmdp/errors.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace decmdp {

// Square tile types with horizontal/vertical compatibility relations on
// an n x n grid, n a power of two. Tile 0 is the designated origin tile.
struct TilingInstance {
  std::vector<std::string> tiles;
  std::set<std::pair<int, int>> horizontal;
  std::set<std::pair<int, int>> vertical;
  int n = 2;

  int num_tiles() const { return static_cast<int>(tiles.size()); }
  int tile_id(const std::string& name) const;
  // log2(n); throws InputError when n is not a power of two >= 2.
  int grid_bits() const;
};

// assignment[i + n*j] = tile at column i, row j.
struct Tiling {
  int n = 2;
  std::vector<int> assignment;

  int at(int i, int j) const { return assignment[i + n * j]; }
};

struct TilingViolation {
  enum class Kind { Origin, Horizontal, Vertical };
  Kind kind;
  int i, j;  // offending cell (left/upper cell for edge constraints)
};

struct ConsistencyReport {
  std::vector<TilingViolation> violations;
  bool consistent() const { return violations.empty(); }
};

// Checks f(0,0) = t0 and every in-grid H/V edge.
ConsistencyReport check_tiling(const TilingInstance& instance, const Tiling& f);

// Lexicographically first consistent tiling in row-major cell order, or
// nullopt. Backtracking with immediate constraint checks; throws
// BudgetExceeded when node expansions pass `budget`.
std::optional<Tiling> solve_tiling_bruteforce(const TilingInstance& instance,
                                              const BigInt& budget);

}  // namespace decmdp
