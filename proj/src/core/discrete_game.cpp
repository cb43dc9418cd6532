#include "discrete_game.hpp"

#include <map>
#include <queue>
#include <sstream>

namespace chronosynth {

using nlohmann::json;

int ParityGame::add_node(int who, int prio) {
  owner.push_back(who);
  priority.push_back(prio);
  succ.emplace_back();
  return static_cast<int>(owner.size()) - 1;
}

void ParityGame::validate() const {
  if (priority.size() != size() || succ.size() != size())
    throw DomainError("inconsistent parity game tables");
  for (std::size_t v = 0; v < size(); ++v) {
    if (succ[v].empty())
      throw DomainError("parity game node " + std::to_string(v) + " has no successor");
    for (int w : succ[v])
      if (w < 0 || static_cast<std::size_t>(w) >= size())
        throw DomainError("parity game edge out of range");
    if (owner[v] != 0 && owner[v] != 1)
      throw DomainError("parity game owner must be 0 or 1");
  }
}

namespace {

using Mask = std::vector<char>;

// Attractor of `target` for `player` inside `in`. Nodes join in index order,
// round by round; `choice` records the move of attracted player nodes.
Mask attractor(const ParityGame& g, const Mask& in, const Mask& target, int player,
               std::vector<int>& choice) {
  Mask attr = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!in[v] || attr[v])
        continue;
      if (g.owner[v] == player) {
        for (int w : g.succ[v])
          if (in[static_cast<std::size_t>(w)] && attr[static_cast<std::size_t>(w)]) {
            choice[v] = w;
            attr[v] = 1;
            changed = true;
            break;
          }
      } else {
        bool all = true;
        for (int w : g.succ[v])
          if (in[static_cast<std::size_t>(w)] && !attr[static_cast<std::size_t>(w)]) {
            all = false;
            break;
          }
        if (all) {
          attr[v] = 1;
          changed = true;
        }
      }
    }
  }
  return attr;
}

void solve_rec(const ParityGame& g, const Mask& in, std::vector<int>& winner,
               std::vector<int>& strategy) {
  int d = -1;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (in[v])
      d = std::max(d, g.priority[v]);
  if (d < 0)
    return;
  int p = d % 2;
  Mask top(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    top[v] = in[v] && g.priority[v] == d;
  std::vector<int> choice_a(g.size(), -1);
  Mask a = attractor(g, in, top, p, choice_a);
  Mask rest(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    rest[v] = in[v] && !a[v];
  std::vector<int> sub_w(g.size(), -1), sub_s(g.size(), -1);
  solve_rec(g, rest, sub_w, sub_s);
  bool opponent_wins_somewhere = false;
  for (std::size_t v = 0; v < g.size(); ++v)
    opponent_wins_somewhere |= rest[v] && sub_w[v] == 1 - p;

  if (!opponent_wins_somewhere) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!in[v])
        continue;
      winner[v] = p;
      strategy[v] = -1;
      if (g.owner[v] != p)
        continue;
      if (rest[v]) {
        strategy[v] = sub_s[v];
      } else if (top[v]) {
        for (int w : g.succ[v])
          if (in[static_cast<std::size_t>(w)]) {
            strategy[v] = w;
            break;
          }
      } else {
        strategy[v] = choice_a[v];
      }
    }
    return;
  }

  Mask lost(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    lost[v] = rest[v] && sub_w[v] == 1 - p;
  std::vector<int> choice_b(g.size(), -1);
  Mask b = attractor(g, in, lost, 1 - p, choice_b);
  Mask rest2(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    rest2[v] = in[v] && !b[v];
  solve_rec(g, rest2, winner, strategy);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!b[v])
      continue;
    winner[v] = 1 - p;
    strategy[v] = -1;
    if (g.owner[v] == 1 - p)
      strategy[v] = lost[v] ? sub_s[v] : choice_b[v];
  }
}

// Nodes from which a cycle whose maximal priority has parity `bad` is
// reachable, when nodes of `player` follow `strategy` (-1 = unrestricted).
std::vector<char> reaches_bad_cycle(const ParityGame& g, const std::vector<int>& strategy,
                                    int player, int bad) {
  std::size_t n = g.size();
  auto moves = [&](std::size_t v) {
    if (g.owner[v] == player && strategy[v] >= 0)
      return std::vector<int>{strategy[v]};
    return g.succ[v];
  };
  std::vector<char> on_bad_cycle(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (g.priority[x] % 2 != bad)
      continue;
    int p = g.priority[x];
    // can x reach itself through nodes of priority <= p?
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> work;
    for (int w : moves(x))
      if (g.priority[static_cast<std::size_t>(w)] <= p && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        work.push(static_cast<std::size_t>(w));
      }
    while (!work.empty() && !seen[x]) {
      auto v = work.front();
      work.pop();
      for (int w : moves(v))
        if (g.priority[static_cast<std::size_t>(w)] <= p && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          work.push(static_cast<std::size_t>(w));
        }
    }
    on_bad_cycle[x] = seen[x];
  }
  // backward reachability to bad cycles
  std::vector<char> bad_from(n, 0);
  bool changed = true;
  for (std::size_t v = 0; v < n; ++v)
    bad_from[v] = on_bad_cycle[v];
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (bad_from[v])
        continue;
      for (int w : moves(v))
        if (bad_from[static_cast<std::size_t>(w)]) {
          bad_from[v] = 1;
          changed = true;
          break;
        }
    }
  }
  return bad_from;
}

} // namespace

GameSolution zielonka(const ParityGame& g) {
  g.validate();
  GameSolution s;
  s.winner.assign(g.size(), -1);
  s.strategy.assign(g.size(), -1);
  solve_rec(g, Mask(g.size(), 1), s.winner, s.strategy);
  return s;
}

std::vector<int> brute_force_solve(const ParityGame& g, std::size_t strategy_cap) {
  g.validate();
  std::vector<std::size_t> even;
  double count = 1;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.owner[v] == 0) {
      even.push_back(v);
      count *= static_cast<double>(g.succ[v].size());
    }
  if (count > static_cast<double>(strategy_cap))
    throw ResourceError("brute force would enumerate too many strategies", 0);
  std::vector<int> winner(g.size(), 1);
  std::vector<std::size_t> digit(even.size(), 0);
  std::vector<int> strategy(g.size(), -1);
  while (true) {
    for (std::size_t k = 0; k < even.size(); ++k)
      strategy[even[k]] = g.succ[even[k]][digit[k]];
    auto bad = reaches_bad_cycle(g, strategy, 0, 1);
    for (std::size_t v = 0; v < g.size(); ++v)
      if (!bad[v])
        winner[v] = 0;
    std::size_t k = 0;
    while (k < even.size() && ++digit[k] == g.succ[even[k]].size())
      digit[k++] = 0;
    if (k == even.size())
      break;
  }
  return winner;
}

bool plays_are_won(const ParityGame& g, const std::vector<int>& strategy, int player, int from) {
  return !reaches_bad_cycle(g, strategy, player, 1 - player)[static_cast<std::size_t>(from)];
}

namespace {

// Shared lasso simulation for both machine kinds: `step` maps (state, letter)
// to (next state, produced letter).
template <class Step>
LassoWord<int> run_transducer(int initial, const LassoWord<int>& w, Step step) {
  std::vector<int> produced;
  int s = initial;
  for (int x : w.prefix()) {
    auto [n, y] = step(s, x);
    produced.push_back(y);
    s = n;
  }
  std::map<int, std::size_t> boundary;
  while (!boundary.count(s)) {
    boundary[s] = produced.size();
    for (int x : w.period()) {
      auto [n, y] = step(s, x);
      produced.push_back(y);
      s = n;
    }
  }
  auto start = static_cast<std::ptrdiff_t>(boundary[s]);
  return normalize(LassoWord<int>(std::vector<int>(produced.begin(), produced.begin() + start),
                                  std::vector<int>(produced.begin() + start, produced.end())));
}

} // namespace

LassoWord<int> run_machine(const MealyMachine& m, const LassoWord<int>& input) {
  return run_transducer(m.initial, input, [&](int s, int a) {
    if (a < 0 || static_cast<std::size_t>(a) >= m.num_inputs)
      throw DomainError("input letter out of range");
    return m.step(s, a);
  });
}

LassoWord<int> run_counter(const MooreCounterMachine& m, const LassoWord<int>& outputs) {
  return run_transducer(m.initial, outputs, [&](int s, int b) {
    if (b < 0 || static_cast<std::size_t>(b) >= m.num_outputs)
      throw DomainError("output letter out of range");
    auto k = static_cast<std::size_t>(s);
    return std::make_pair(m.next[k * m.num_outputs + static_cast<std::size_t>(b)], m.emit[k]);
  });
}

AutomatonGame automaton_game(const ParityAutomaton& in) {
  ParityAutomaton a = convert_convention(in, Convention::max_even);
  AutomatonGame ag;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    ag.i_node.push_back(ag.game.add_node(1, a.priority(static_cast<int>(q))));
    ag.o_label.emplace_back(-1, -1);
  }
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t x = 0; x < a.num_inputs(); ++x) {
      int o = ag.game.add_node(0, 0);
      ag.o_label.emplace_back(static_cast<int>(q), static_cast<int>(x));
      ag.game.succ[static_cast<std::size_t>(ag.i_node[q])].push_back(o);
      for (std::size_t y = 0; y < a.num_outputs(); ++y)
        ag.game.succ[static_cast<std::size_t>(o)].push_back(
            ag.i_node[static_cast<std::size_t>(
                a.next(static_cast<int>(q), static_cast<int>(x), static_cast<int>(y)))]);
    }
  return ag;
}

DiscreteResult solve(const ParityAutomaton& in) {
  ParityAutomaton a = convert_convention(in, Convention::max_even);
  DiscreteResult r;
  r.arena = automaton_game(a);
  r.solution = zielonka(r.arena.game);
  const auto& g = r.arena.game;
  const auto& sol = r.solution;
  int root = r.arena.i_node[static_cast<std::size_t>(a.initial())];
  r.output_wins = sol.winner[static_cast<std::size_t>(root)] == 0;

  // Machine states are the automaton states met under the winner's strategy.
  std::map<int, int> id;
  std::vector<int> order;
  auto state_of = [&](int q) {
    auto [it, fresh] = id.emplace(q, static_cast<int>(order.size()));
    if (fresh)
      order.push_back(q);
    return it->second;
  };
  state_of(a.initial());
  auto o_node = [&](int q, int x) {
    return g.succ[static_cast<std::size_t>(r.arena.i_node[static_cast<std::size_t>(q)])]
                 [static_cast<std::size_t>(x)];
  };
  auto letter_for = [&](int onode, int target) {
    const auto& s = g.succ[static_cast<std::size_t>(onode)];
    return static_cast<int>(std::find(s.begin(), s.end(), target) - s.begin());
  };

  if (r.output_wins) {
    MealyMachine m;
    m.num_inputs = a.num_inputs();
    m.num_outputs = a.num_outputs();
    for (std::size_t k = 0; k < order.size(); ++k) {
      int q = order[k];
      for (std::size_t x = 0; x < a.num_inputs(); ++x) {
        int o = o_node(q, static_cast<int>(x));
        int target = sol.strategy[static_cast<std::size_t>(o)];
        int y = letter_for(o, target);
        m.output.push_back(y);
        m.next.push_back(state_of(a.next(q, static_cast<int>(x), y)));
      }
    }
    m.num_states = order.size();
    for (int q : order)
      m.labels.push_back(a.state_names()[static_cast<std::size_t>(q)]);
    r.mealy = std::move(m);
  } else {
    MooreCounterMachine m;
    m.num_inputs = a.num_inputs();
    m.num_outputs = a.num_outputs();
    for (std::size_t k = 0; k < order.size(); ++k) {
      int q = order[k];
      int chosen = sol.strategy[static_cast<std::size_t>(r.arena.i_node[static_cast<std::size_t>(q)])];
      int x = r.arena.o_label[static_cast<std::size_t>(chosen)].second;
      m.emit.push_back(x);
      for (std::size_t y = 0; y < a.num_outputs(); ++y)
        m.next.push_back(state_of(a.next(q, x, static_cast<int>(y))));
    }
    m.num_states = order.size();
    for (int q : order)
      m.labels.push_back(a.state_names()[static_cast<std::size_t>(q)]);
    r.counter = std::move(m);
  }
  return r;
}

json to_json(const MealyMachine& m, const ParityAutomaton& a) {
  json tr = json::array();
  for (std::size_t s = 0; s < m.num_states; ++s)
    for (std::size_t x = 0; x < m.num_inputs; ++x) {
      auto [n, y] = m.step(static_cast<int>(s), static_cast<int>(x));
      tr.push_back({{"from", m.labels[s]},
                    {"in", a.sigma_in()[x]},
                    {"out", a.sigma_out()[static_cast<std::size_t>(y)]},
                    {"to", m.labels[static_cast<std::size_t>(n)]}});
    }
  return {{"type", "mealy"},
          {"states", m.labels},
          {"initial", m.labels[static_cast<std::size_t>(m.initial)]},
          {"transitions", tr}};
}

json to_json(const MooreCounterMachine& m, const ParityAutomaton& a) {
  json emit = json::object();
  json tr = json::array();
  for (std::size_t s = 0; s < m.num_states; ++s) {
    emit[m.labels[s]] = a.sigma_in()[static_cast<std::size_t>(m.emit[s])];
    for (std::size_t y = 0; y < m.num_outputs; ++y)
      tr.push_back({{"from", m.labels[s]},
                    {"out", a.sigma_out()[y]},
                    {"to", m.labels[static_cast<std::size_t>(m.next[s * m.num_outputs + y])]}});
  }
  return {{"type", "moore_counter"},
          {"states", m.labels},
          {"initial", m.labels[static_cast<std::size_t>(m.initial)]},
          {"emit", emit},
          {"transitions", tr}};
}

std::string to_dot(const MealyMachine& m, const ParityAutomaton& a) {
  std::ostringstream os;
  os << "digraph mealy {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < m.num_states; ++s)
    os << "  s" << s << " [label=\"" << m.labels[s] << "\""
       << (static_cast<int>(s) == m.initial ? ", shape=doublecircle" : "") << "];\n";
  for (std::size_t s = 0; s < m.num_states; ++s)
    for (std::size_t x = 0; x < m.num_inputs; ++x) {
      auto [n, y] = m.step(static_cast<int>(s), static_cast<int>(x));
      os << "  s" << s << " -> s" << n << " [label=\"" << a.sigma_in()[x] << "/"
         << a.sigma_out()[static_cast<std::size_t>(y)] << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string to_dot(const MooreCounterMachine& m, const ParityAutomaton& a) {
  std::ostringstream os;
  os << "digraph counter {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < m.num_states; ++s)
    os << "  s" << s << " [label=\"" << m.labels[s] << " / "
       << a.sigma_in()[static_cast<std::size_t>(m.emit[s])] << "\""
       << (static_cast<int>(s) == m.initial ? ", shape=doublecircle" : "") << "];\n";
  for (std::size_t s = 0; s < m.num_states; ++s)
    for (std::size_t y = 0; y < m.num_outputs; ++y)
      os << "  s" << s << " -> s" << m.next[s * m.num_outputs + y] << " [label=\""
         << a.sigma_out()[y] << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace chronosynth
