#include "decmdp/tiling.hpp"

#include <doctest.h>

using namespace decmdp;

namespace {

TilingInstance single_tile_full(int n) {
  TilingInstance inst;
  inst.n = n;
  inst.tiles = {"t0"};
  inst.horizontal = {{0, 0}};
  inst.vertical = {{0, 0}};
  return inst;
}

TilingInstance checkerboard_instance(int n) {
  TilingInstance inst;
  inst.n = n;
  inst.tiles = {"t0", "t1"};
  inst.horizontal = {{0, 1}, {1, 0}};
  inst.vertical = {{0, 1}, {1, 0}};
  return inst;
}

}  // namespace

TEST_CASE("check_tiling: constant tiling on the single-tile instance") {
  TilingInstance inst = single_tile_full(2);
  Tiling f{2, {0, 0, 0, 0}};
  CHECK(check_tiling(inst, f).consistent());

  inst.horizontal.clear();
  auto report = check_tiling(inst, f);
  REQUIRE_FALSE(report.consistent());
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.kind == TilingViolation::Kind::Horizontal && v.i == 0 && v.j == 0) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("check_tiling: origin constraint") {
  TilingInstance inst = single_tile_full(2);
  inst.tiles.push_back("t1");
  for (int a : {0, 1}) {
    for (int b : {0, 1}) {
      inst.horizontal.insert({a, b});
      inst.vertical.insert({a, b});
    }
  }
  Tiling f{2, {1, 1, 1, 1}};
  auto report = check_tiling(inst, f);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == TilingViolation::Kind::Origin);
}

TEST_CASE("check_tiling: checkerboard is consistent") {
  TilingInstance inst = checkerboard_instance(2);
  Tiling f{2, {0, 1, 1, 0}};
  CHECK(check_tiling(inst, f).consistent());
  Tiling g{2, {0, 1, 0, 1}};  // vertical neighbors repeat
  CHECK_FALSE(check_tiling(inst, g).consistent());
}

TEST_CASE("solve_tiling_bruteforce: witnesses and refusals") {
  CHECK(solve_tiling_bruteforce(single_tile_full(2), BigInt(1000)).has_value());

  TilingInstance empty_h = single_tile_full(2);
  empty_h.horizontal.clear();
  CHECK_FALSE(solve_tiling_bruteforce(empty_h, BigInt(1000)).has_value());

  auto board = solve_tiling_bruteforce(checkerboard_instance(2), BigInt(1000));
  REQUIRE(board);
  CHECK(board->assignment == std::vector<int>{0, 1, 1, 0});

  CHECK_THROWS_AS(solve_tiling_bruteforce(checkerboard_instance(8), BigInt(2)),
                  BudgetExceeded);
}

TEST_CASE("brute force agrees with exhaustive enumeration at n=2, k<=2") {
  // All (H, V) pairs over two tiles: the solver finds a witness exactly
  // when some of the 16 assignments passes check_tiling.
  for (int hmask = 0; hmask < 16; ++hmask) {
    for (int vmask = 0; vmask < 16; ++vmask) {
      TilingInstance inst;
      inst.n = 2;
      inst.tiles = {"t0", "t1"};
      for (int p = 0; p < 4; ++p) {
        if (hmask & (1 << p)) inst.horizontal.insert({p / 2, p % 2});
        if (vmask & (1 << p)) inst.vertical.insert({p / 2, p % 2});
      }
      auto witness = solve_tiling_bruteforce(inst, BigInt(100000));
      bool any = false;
      Tiling f{2, {0, 0, 0, 0}};
      for (int code = 0; code < 16 && !any; ++code) {
        for (int c = 0; c < 4; ++c) f.assignment[c] = (code >> c) & 1;
        any = check_tiling(inst, f).consistent();
      }
      CHECK(witness.has_value() == any);
      if (witness) CHECK(check_tiling(inst, *witness).consistent());
    }
  }
}

TEST_CASE("grid size must be a power of two") {
  TilingInstance inst = single_tile_full(3);
  CHECK_THROWS_AS(inst.grid_bits(), InputError);
  CHECK(single_tile_full(8).grid_bits() == 3);
}
