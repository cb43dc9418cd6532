#pragma once

#include "automaton.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chronosynth {

// Player 0 (Even) is the output player O, player 1 (Odd) the input player I.
// Winning condition: the maximal priority seen infinitely often is even.
struct ParityGame {
  std::vector<int> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> succ;

  std::size_t size() const noexcept { return owner.size(); }
  int add_node(int owner, int priority);
  void validate() const;
};

struct GameSolution {
  std::vector<int> winner;   // 0 or 1 per node
  std::vector<int> strategy; // chosen successor where the owner wins, else -1
};

// Recursive attractor decomposition. Ties among winning moves go to the
// successor listed first.
GameSolution zielonka(const ParityGame& g);

constexpr std::size_t kBruteForceStrategyCap = std::size_t{1} << 22;

// Test oracle: enumerates every positional strategy of player 0 and checks the
// induced graph for reachable cycles with odd maximal priority.
std::vector<int> brute_force_solve(const ParityGame& g,
                                   std::size_t strategy_cap = kBruteForceStrategyCap);

// True iff every play from `from` in which `player` follows `strategy` is won
// by `player`.
bool plays_are_won(const ParityGame& g, const std::vector<int>& strategy, int player, int from);

// (state, input) -> (state, output): output answers within the same step.
struct MealyMachine {
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  int initial = 0;
  std::vector<int> next;   // [s * num_inputs + a]
  std::vector<int> output; // [s * num_inputs + a]
  std::vector<std::string> labels;

  std::pair<int, int> step(int s, int a) const {
    auto k = static_cast<std::size_t>(s) * num_inputs + static_cast<std::size_t>(a);
    return {next[k], output[k]};
  }
};

// Emits an input letter before reading the output letter of the same step.
struct MooreCounterMachine {
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  int initial = 0;
  std::vector<int> emit; // [s]
  std::vector<int> next; // [s * num_outputs + b]
  std::vector<std::string> labels;
};

LassoWord<int> run_machine(const MealyMachine& m, const LassoWord<int>& input);
// Inputs produced by the counter machine against the given outputs.
LassoWord<int> run_counter(const MooreCounterMachine& m, const LassoWord<int>& outputs);

// Game of an automaton: I-nodes q (priority pr(q)) pick an input letter,
// O-nodes (q, a) (priority 0) pick an output letter.
struct AutomatonGame {
  ParityGame game;
  std::vector<int> i_node;                  // automaton state -> node
  std::vector<std::pair<int, int>> o_label; // node -> (state, input) or (-1, -1)
};

AutomatonGame automaton_game(const ParityAutomaton& a);

struct DiscreteResult {
  bool output_wins = false;
  std::optional<MealyMachine> mealy;
  std::optional<MooreCounterMachine> counter;
  AutomatonGame arena;
  GameSolution solution;
};

DiscreteResult solve(const ParityAutomaton& a);

nlohmann::json to_json(const MealyMachine& m, const ParityAutomaton& a);
nlohmann::json to_json(const MooreCounterMachine& m, const ParityAutomaton& a);
std::string to_dot(const MealyMachine& m, const ParityAutomaton& a);
std::string to_dot(const MooreCounterMachine& m, const ParityAutomaton& a);

} // namespace chronosynth
