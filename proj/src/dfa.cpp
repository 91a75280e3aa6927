#include "decmdp/dfa.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace decmdp {

namespace {

int grid_bits_of(int n) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw InputError("grid size must be a power of two >= 2, got " +
                     std::to_string(n));
  }
  int b = 0;
  for (int v = n; v > 1; v >>= 1) ++b;
  return b;
}

// Descriptor for the position-indexed checkers. pos = symbols read so
// far; first = the pending first bit of a pair at odd positions, -1 at
// pair boundaries. mode is checker-specific. REJ is the sink.
struct Desc {
  bool rej = false;
  int pos = 0;
  int mode = 0;
  int first = -1;

  auto key() const { return std::tuple(rej, pos, mode, first); }
};

constexpr int kCarry = 0;
constexpr int kDone = 1;
constexpr int kPre = 2;  // vertical checker's i-phase

// Builds a DFA from a start descriptor and step function by closure.
template <typename Step, typename Accept, typename Name>
ComponentDfa build_from_step(ComponentDfa::Kind kind, const Desc& start,
                             Step step, Accept accept, Name name) {
  ComponentDfa dfa;
  dfa.kind = kind;
  std::map<decltype(start.key()), int> ids;
  std::vector<Desc> descs;
  auto intern = [&](const Desc& d) {
    auto [it, inserted] = ids.insert({d.key(), static_cast<int>(descs.size())});
    if (inserted) descs.push_back(d);
    return it->second;
  };
  dfa.start = intern(start);
  std::deque<int> queue{dfa.start};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (static_cast<int>(dfa.next.size()) <= s) dfa.next.resize(s + 1);
    Desc d = descs[s];
    for (int bit : {0, 1}) {
      Desc nd = step(d, bit);
      std::size_t before = descs.size();
      int t = intern(nd);
      if (descs.size() > before) queue.push_back(t);
      if (static_cast<int>(dfa.next.size()) <= t) dfa.next.resize(t + 1);
      dfa.next[s][bit] = t;
    }
  }
  dfa.accepting.resize(descs.size());
  dfa.state_names.resize(descs.size());
  for (std::size_t s = 0; s < descs.size(); ++s) {
    dfa.accepting[s] = accept(descs[s]);
    dfa.state_names[s] = name(descs[s]);
  }
  return dfa;
}

std::string mode_name(int mode) {
  switch (mode) {
    case kCarry: return "carry";
    case kDone: return "done";
    default: return "pre";
  }
}

std::string desc_name(const Desc& d) {
  if (d.rej) return "rej";
  std::string s = "p" + std::to_string(d.pos) + ":" + mode_name(d.mode);
  if (d.first >= 0) s += ":" + std::to_string(d.first);
  return s;
}

}  // namespace

DfaRunResult dfa_run(const ComponentDfa& dfa, const std::vector<int>& word) {
  int s = dfa.start;
  for (int bit : word) s = dfa.next[s][bit];
  return {dfa.accepting[s], s};
}

ComponentDfa build_last_bit_dfa() {
  ComponentDfa dfa;
  dfa.kind = ComponentDfa::Kind::LastBit;
  dfa.start = 0;
  dfa.next = {{0, 1}, {0, 1}};
  dfa.accepting = {false, false};
  dfa.state_names = {"last0", "last1"};
  return dfa;
}

ComponentDfa build_counter_dfa(int n) {
  int limit = 4 * grid_bits_of(n);
  ComponentDfa dfa;
  dfa.kind = ComponentDfa::Kind::Counter;
  dfa.start = 0;
  for (int c = 0; c <= limit; ++c) {
    int succ = c < limit ? c + 1 : limit;
    dfa.next.push_back({succ, succ});
    dfa.accepting.push_back(c == limit);
    dfa.state_names.push_back("count" + std::to_string(c));
  }
  return dfa;
}

// (00 + 11)*: both positions identical.
ComponentDfa build_equal_dfa() {
  ComponentDfa dfa;
  dfa.kind = ComponentDfa::Kind::Equal;
  dfa.start = 0;
  // 0 = pair boundary (accepting), 1 = saw 0, 2 = saw 1, 3 = sink.
  dfa.next = {{1, 2}, {0, 3}, {3, 0}, {3, 3}};
  dfa.accepting = {true, false, false, false};
  dfa.state_names = {"even", "mid0", "mid1", "rej"};
  return dfa;
}

// (0(0 + 1))*: every bit of the first position is 0.
ComponentDfa build_upper_left_dfa() {
  ComponentDfa dfa;
  dfa.kind = ComponentDfa::Kind::UpperLeft;
  dfa.start = 0;
  // 0 = pair boundary (accepting), 1 = saw leading 0, 2 = sink.
  dfa.next = {{1, 2}, {0, 0}, {2, 2}};
  dfa.accepting = {true, false, false};
  dfa.state_names = {"even", "mid", "rej"};
  return dfa;
}

// (10)*(01)(11 + 00)* over the i-phase pairs, then log n equal pairs:
// i1 + 1 = i2 (binary increment, least significant bit first) and
// j1 = j2. The pair position is tracked so the phase switch lands after
// exactly 2 log n symbols.
ComponentDfa build_horizontal_dfa(int n) {
  int b = grid_bits_of(n);
  Desc start{false, 0, kCarry, -1};
  auto step = [b](const Desc& d, int bit) -> Desc {
    if (d.rej || d.pos >= 4 * b) return {true};
    if (d.first < 0) return {false, d.pos + 1, d.mode, bit};
    std::pair<int, int> pair{d.first, bit};
    int npos = d.pos + 1;
    if (d.mode == kCarry) {
      if (pair == std::pair{1, 0}) {
        // Carry still pending; reject if the i-phase is exhausted.
        return npos == 2 * b ? Desc{true} : Desc{false, npos, kCarry, -1};
      }
      if (pair == std::pair{0, 1}) return {false, npos, kDone, -1};
      return {true};
    }
    if (pair.first == pair.second) return {false, npos, kDone, -1};
    return {true};
  };
  auto accept = [b](const Desc& d) {
    return !d.rej && d.pos == 4 * b && d.mode == kDone;
  };
  return build_from_step(ComponentDfa::Kind::Horizontal, start, step, accept,
                         desc_name);
}

// log n equal pairs, then (10)*(01)(11 + 00)* over the j-phase pairs:
// i1 = i2 and j1 + 1 = j2.
ComponentDfa build_vertical_dfa(int n) {
  int b = grid_bits_of(n);
  Desc start{false, 0, kPre, -1};
  auto step = [b](const Desc& d, int bit) -> Desc {
    if (d.rej || d.pos >= 4 * b) return {true};
    if (d.first < 0) return {false, d.pos + 1, d.mode, bit};
    std::pair<int, int> pair{d.first, bit};
    int npos = d.pos + 1;
    if (d.mode == kPre) {
      if (pair.first != pair.second) return {true};
      return {false, npos, npos == 2 * b ? kCarry : kPre, -1};
    }
    if (d.mode == kCarry) {
      if (pair == std::pair{1, 0}) {
        return npos == 4 * b ? Desc{true} : Desc{false, npos, kCarry, -1};
      }
      if (pair == std::pair{0, 1}) return {false, npos, kDone, -1};
      return {true};
    }
    if (pair.first == pair.second) return {false, npos, kDone, -1};
    return {true};
  };
  auto accept = [b](const Desc& d) {
    return !d.rej && d.pos == 4 * b && d.mode == kDone;
  };
  return build_from_step(ComponentDfa::Kind::Vertical, start, step, accept,
                         desc_name);
}

std::array<ComponentDfa, 6> build_component_dfas(int n) {
  return {build_last_bit_dfa(), build_counter_dfa(n),   build_equal_dfa(),
          build_upper_left_dfa(), build_horizontal_dfa(n),
          build_vertical_dfa(n)};
}

GridPositions decode_positions(const std::vector<int>& word, int n) {
  int b = grid_bits_of(n);
  if (static_cast<int>(word.size()) != 4 * b) {
    throw InputError("expected a word of length " + std::to_string(4 * b));
  }
  GridPositions p{0, 0, 0, 0};
  for (int r = 0; r < b; ++r) {
    p.i1 |= word[2 * r] << r;
    p.i2 |= word[2 * r + 1] << r;
    p.j1 |= word[2 * b + 2 * r] << r;
    p.j2 |= word[2 * b + 2 * r + 1] << r;
  }
  return p;
}

ProductMachine::Flags ProductMachine::flags(int state) const {
  const auto& tuple = states[state];
  Flags f;
  f.last_bit = tuple[0];  // last-bit DFA states are literally 0/1
  f.bits_chosen = tuple[1];
  f.equal = components[2].accepting[tuple[2]];
  f.upper_left = components[3].accepting[tuple[3]];
  f.horizontal = components[4].accepting[tuple[4]];
  f.vertical = components[5].accepting[tuple[5]];
  return f;
}

ProductMachine build_product_machine(int n) {
  int b = grid_bits_of(n);
  ProductMachine pm;
  pm.grid_bits = b;
  pm.components = build_component_dfas(n);

  std::array<int, 6> start;
  for (int c = 0; c < 6; ++c) start[c] = pm.components[c].start;
  std::map<std::array<int, 6>, int> ids;
  ids[start] = 0;
  pm.states.push_back(start);
  pm.next.push_back({-1, -1});

  // Breadth-first by depth; states at depth 4b (the tile-choice states)
  // are not expanded: the process leaves the automaton there.
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    const auto tuple = pm.states[s];
    if (tuple[1] >= 4 * b) continue;
    for (int bit : {0, 1}) {
      std::array<int, 6> succ;
      for (int c = 0; c < 6; ++c) succ[c] = pm.components[c].next[tuple[c]][bit];
      auto [it, inserted] = ids.insert({succ, static_cast<int>(pm.states.size())});
      if (inserted) {
        pm.states.push_back(succ);
        pm.next.push_back({-1, -1});
        queue.push_back(it->second);
      }
      pm.next[s][bit] = it->second;
    }
  }
  return pm;
}

}  // namespace decmdp
