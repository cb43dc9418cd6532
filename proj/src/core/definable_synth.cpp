#include "definable_synth.hpp"

namespace chronosynth {

SafetyMonitor build_psi_star_monitor(const ParityAutomaton& spec, bool swapped) {
  if (spec.encoding() != Encoding::d)
    throw DomainError("the continuity monitor needs a D-encoded spec (letters x|y)");
  std::size_t ni = spec.base_in().size(), no = spec.base_out().size();
  // states: start, one per remembered (a', b'), sink
  SafetyMonitor m;
  m.states.push_back("start");
  for (std::size_t x = 0; x < ni; ++x)
    for (std::size_t y = 0; y < no; ++y)
      m.states.push_back(spec.base_in()[x] + "," + spec.base_out()[y]);
  m.states.push_back("sink");
  m.num_letters = spec.num_letters();
  m.initial = 0;
  m.sink = static_cast<int>(m.states.size()) - 1;
  auto remembered = [&](int x2, int y2) { return 1 + x2 * static_cast<int>(no) + y2; };
  for (std::size_t s = 0; s < m.states.size(); ++s)
    for (std::size_t l = 0; l < m.num_letters; ++l) {
      auto [c, c2] = spec.split_input(spec.letter_input(static_cast<int>(l)));
      auto [d, d2] = spec.split_output(spec.letter_output(static_cast<int>(l)));
      int next = remembered(c2, d2);
      if (static_cast<int>(s) == m.sink) {
        next = m.sink;
      } else if (s > 0) {
        int a2 = static_cast<int>(s - 1) / static_cast<int>(no);
        int b2 = static_cast<int>(s - 1) % static_cast<int>(no);
        // driver: the signal whose continuity forces the other one's
        int dp = a2, dc = c, dc2 = c2, fp = b2, fc = d, fc2 = d2;
        if (swapped) {
          std::swap(dp, fp);
          std::swap(dc, fc);
          std::swap(dc2, fc2);
        }
        bool left = dp == dc;
        bool both = left && dc == dc2;
        if ((left && fp != fc) || (both && fc != fc2))
          next = m.sink;
      }
      m.transitions.push_back(next);
    }
  return m;
}

DefinableResult solve_definable(const ParityAutomaton& spec) {
  SafetyMonitor mon = build_psi_star_monitor(spec);
  ParityAutomaton prod = product_with_monitor(spec, mon);
  DiscreteResult r = solve(prod);
  DefinableResult out{r.output_wins, std::move(r.mealy), std::move(r.counter), prod,
                      std::move(r.arena), std::move(r.solution)};
  return out;
}

DefinableCounterResult solve_definable_sc(const ParityAutomaton& spec) {
  SafetyMonitor mon = build_psi_star_monitor(spec, true);
  ParityAutomaton prod = union_with_violation(spec, mon);
  DiscreteResult r = solve(prod);
  DefinableCounterResult out{!r.output_wins, std::move(r.counter), std::move(r.mealy), prod,
                             std::move(r.arena), std::move(r.solution)};
  return out;
}

bool check_certificate(const AutomatonGame& game, const GameSolution& sol, int root_state) {
  int root = game.i_node[static_cast<std::size_t>(root_state)];
  if (sol.winner[static_cast<std::size_t>(root)] != 1)
    return false;
  return plays_are_won(game.game, sol.strategy, 1, root);
}

} // namespace chronosynth
