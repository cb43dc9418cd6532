#pragma once

#include "automaton.hpp"
#include "discrete_game.hpp"

#include <optional>

namespace chronosynth {

// Safety monitor over D letters ((a, a'), (b, b')) remembering the previous
// interval values (a', b'). At the next letter ((c, c'), (d, d')):
//   a' = c            requires b' = d
//   a' = c = c'       requires b' = d = d'
// Position 0 is unconstrained. With `swapped`, the roles of the input and
// output signals are exchanged.
SafetyMonitor build_psi_star_monitor(const ParityAutomaton& spec, bool swapped = false);

struct DefinableResult {
  bool definable = false;
  std::optional<MealyMachine> witness;       // when definable
  std::optional<MooreCounterMachine> refuter; // I's strategy otherwise
  ParityAutomaton product;
  // Winning regions of the product game; the nodes won by player 1 together
  // with its strategy certify a negative verdict.
  AutomatonGame game;
  GameSolution solution;
};

DefinableResult solve_definable(const ParityAutomaton& spec);

struct DefinableCounterResult {
  bool counter_exists = false;
  std::optional<MooreCounterMachine> counter;
  std::optional<MealyMachine> refuter; // O's answer otherwise
  ParityAutomaton product;
  AutomatonGame game;
  GameSolution solution;
};

// Definable strongly causal counter-operator for the spec: I must falsify the
// spec while keeping its signal continuous wherever the output is.
DefinableCounterResult solve_definable_sc(const ParityAutomaton& spec);

// Checks a negative certificate: player 1 wins from the root by following the
// recorded strategy.
bool check_certificate(const AutomatonGame& game, const GameSolution& sol, int root_state);

} // namespace chronosynth
