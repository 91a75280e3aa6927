#include "decmdp/tiling.hpp"

#include <algorithm>
#include <functional>

namespace decmdp {

int TilingInstance::tile_id(const std::string& name) const {
  auto it = std::find(tiles.begin(), tiles.end(), name);
  if (it == tiles.end()) throw InputError("unknown tile: " + name);
  return static_cast<int>(it - tiles.begin());
}

int TilingInstance::grid_bits() const {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw InputError("grid size must be a power of two >= 2, got " +
                     std::to_string(n));
  }
  int b = 0;
  for (int v = n; v > 1; v >>= 1) ++b;
  return b;
}

ConsistencyReport check_tiling(const TilingInstance& instance,
                               const Tiling& f) {
  ConsistencyReport report;
  int n = instance.n;
  if (f.at(0, 0) != 0) {
    report.violations.push_back({TilingViolation::Kind::Origin, 0, 0});
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n && !instance.horizontal.count({f.at(i, j), f.at(i + 1, j)})) {
        report.violations.push_back({TilingViolation::Kind::Horizontal, i, j});
      }
      if (j + 1 < n && !instance.vertical.count({f.at(i, j), f.at(i, j + 1)})) {
        report.violations.push_back({TilingViolation::Kind::Vertical, i, j});
      }
    }
  }
  return report;
}

std::optional<Tiling> solve_tiling_bruteforce(const TilingInstance& instance,
                                              const BigInt& budget) {
  int n = instance.n;
  instance.grid_bits();  // validates n
  int cells = n * n;
  int k = instance.num_tiles();
  Tiling f;
  f.n = n;
  f.assignment.assign(cells, -1);
  BigInt expansions(0);

  // Row-major: cell c = (i, j) with i = c % n, j = c / n. Left and upper
  // neighbors are already placed when c is assigned.
  std::function<bool(int)> place = [&](int c) -> bool {
    if (c == cells) return true;
    int i = c % n, j = c / n;
    for (int t = 0; t < k; ++t) {
      if (++expansions > budget) throw BudgetExceeded(expansions);
      if (c == 0 && t != 0) continue;  // f(0,0) = t0
      if (i > 0 && !instance.horizontal.count({f.at(i - 1, j), t})) continue;
      if (j > 0 && !instance.vertical.count({f.at(i, j - 1), t})) continue;
      f.assignment[c] = t;
      if (place(c + 1)) return true;
      f.assignment[c] = -1;
    }
    return false;
  };

  if (place(0)) return f;
  return std::nullopt;
}

}  // namespace decmdp
