#pragma once

#include "arena.hpp"
#include "rational.hpp"

#include <functional>
#include <optional>

namespace chronosynth {

// One outgoing edge per O-node; -1 where no choice was made (unreachable
// nodes, or nodes not yet reached during enumeration).
struct PositionalChoice {
  std::vector<int> edge;

  friend bool operator==(const PositionalChoice& a, const PositionalChoice& b) {
    return a.edge == b.edge;
  }
};

// The arena with O's alternatives cut down to the chosen edge.
struct StrategyGraph {
  const Arena* arena = nullptr;
  std::vector<std::vector<int>> out;
  int root = 0;
};

StrategyGraph restrict_to_choice(const Arena& arena, const PositionalChoice& choice);
StrategyGraph restrict_to_choice(const Arena& arena, const PositionalChoice& choice, int root);

enum class LossKind { none, non_final, bad_cycle };

struct StrategyCheck {
  bool winning = true;
  LossKind loss = LossKind::none;
  // Edges from the root to the offending i_up node (non_final), or to the
  // start of the cycle (bad_cycle).
  std::vector<int> prefix;
  // A closed walk through a big edge whose maximal priority is odd.
  std::vector<int> cycle;
  int cycle_priority = -1;
  std::vector<bool> reachable;
};

StrategyCheck check_strategy(const StrategyGraph& g);
bool is_strategy_winning(const StrategyGraph& g);

struct EnumerationOptions {
  // Every complete choice over the reachable O-nodes, without the final-set
  // filter, the block deduplication and the pruning of losing prefixes.
  bool full = false;
  std::size_t cap = 5'000'000; // strategy checks
  unsigned jobs = 1;
};

struct EnumerationStats {
  std::size_t checks = 0;
  std::size_t complete = 0;
};

// Calls `visit` on complete choices in enumeration order until it returns
// false. Without `full`, only choices passing every check are visited, so all
// of them are winning.
EnumerationStats enumerate_choices(
    const Arena& arena, const EnumerationOptions& opt,
    const std::function<bool(const PositionalChoice&, const StrategyCheck&)>& visit);

// Candidate edges at an O-node in the order they are tried.
std::vector<int> choice_candidates(const Arena& arena, int node, bool full);

struct ContinuousResult {
  bool realizable = false;
  std::optional<PositionalChoice> witness;
  Arena arena;
  std::size_t classes = 0;
  EnumerationStats stats;
};

// First winning choice in enumeration order, independent of opt.jobs.
std::optional<PositionalChoice> find_winning_choice(const Arena& arena,
                                                    const EnumerationOptions& opt,
                                                    EnumerationStats* stats = nullptr);

ContinuousResult decide_continuous(const ParityAutomaton& spec, Semantics s,
                                   const EnumerationOptions& opt = {},
                                   std::size_t signature_cap = kDefaultSignatureCap);

// Player O following a positional choice; its i-th timed move (counted over
// the whole play, from 0) uses the scale 2^-i.
class ChoicePlayer {
public:
  ChoicePlayer(const Arena& arena, PositionalChoice choice);
  int edge_at(int node) const;
  Rational scale(std::size_t timed_index) const { return pow2_neg(static_cast<unsigned>(timed_index)); }
  const PositionalChoice& choice() const { return choice_; }
  const Arena& arena() const { return *arena_; }

private:
  const Arena* arena_;
  PositionalChoice choice_;
};

ChoicePlayer witness_to_player(const Arena& arena, const PositionalChoice& choice);

nlohmann::json choice_to_json(const Arena& arena, const PositionalChoice& choice);

} // namespace chronosynth
