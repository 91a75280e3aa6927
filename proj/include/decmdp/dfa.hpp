#pragma once

#include "decmdp/errors.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace decmdp {

// One of the six deterministic automata tracking a component of the
// reduction's state. All read the environment's coin flips ({0,1}) and
// are total; the four checkers additionally carry accepting states whose
// meaning, on words of length exactly 4*log2(n), is an arithmetic
// predicate on the two decoded grid positions.
struct ComponentDfa {
  enum class Kind { LastBit, Counter, Equal, UpperLeft, Horizontal, Vertical };

  Kind kind;
  int start = 0;
  std::vector<std::array<int, 2>> next;  // next[state][bit]
  std::vector<bool> accepting;
  std::vector<std::string> state_names;

  int num_states() const { return static_cast<int>(next.size()); }
};

struct DfaRunResult {
  bool accept;
  int final_state;
};

DfaRunResult dfa_run(const ComponentDfa& dfa, const std::vector<int>& word);

ComponentDfa build_last_bit_dfa();
ComponentDfa build_counter_dfa(int n);
ComponentDfa build_equal_dfa();
ComponentDfa build_upper_left_dfa();
ComponentDfa build_horizontal_dfa(int n);
ComponentDfa build_vertical_dfa(int n);

// Order: last-bit, counter, equal, upper-left, horizontal, vertical.
std::array<ComponentDfa, 6> build_component_dfas(int n);

// Decoded grid positions for a coin word of length 4*log2(n): bits are
// interleaved least significant first, i1/i2 alternating, then j1/j2.
struct GridPositions {
  int i1, j1, i2, j2;
};
GridPositions decode_positions(const std::vector<int>& word, int n);

// Synchronous cross product of the six component automata, restricted to
// the states reachable by words of length <= 4*log2(n). State 0 is the
// tuple of component start states; discovery order is breadth-first.
struct ProductMachine {
  std::array<ComponentDfa, 6> components;
  std::vector<std::array<int, 6>> states;
  std::vector<std::array<int, 2>> next;  // -1 past the position phase
  int grid_bits = 1;

  struct Flags {
    int last_bit;      // 0/1 (start state reports 0)
    int bits_chosen;   // counter value
    bool equal, upper_left, horizontal, vertical;
  };
  Flags flags(int state) const;
  int num_states() const { return static_cast<int>(states.size()); }
};

ProductMachine build_product_machine(int n);

}  // namespace decmdp
