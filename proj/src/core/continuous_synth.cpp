#include "continuous_synth.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

namespace chronosynth {

StrategyGraph restrict_to_choice(const Arena& arena, const PositionalChoice& choice) {
  return restrict_to_choice(arena, choice, arena.root);
}

StrategyGraph restrict_to_choice(const Arena& arena, const PositionalChoice& choice, int root) {
  StrategyGraph g;
  g.arena = &arena;
  g.root = root;
  g.out.resize(arena.nodes.size());
  for (std::size_t v = 0; v < arena.nodes.size(); ++v) {
    if (!arena.is_o_node(static_cast<int>(v))) {
      g.out[v] = arena.out[v];
      continue;
    }
    int e = v < choice.edge.size() ? choice.edge[v] : -1;
    if (e >= 0)
      g.out[v].push_back(e);
  }
  return g;
}

namespace {

constexpr int kNone = -1;

// Tarjan over the edges accepted by `keep`, from the nodes in `live`.
std::vector<int> components(const StrategyGraph& g, const std::vector<bool>& live,
                            const std::function<bool(int)>& keep) {
  const auto& E = g.arena->edges;
  std::size_t n = g.out.size();
  std::vector<int> comp(n, kNone), low(n, 0), num(n, kNone), stack;
  std::vector<bool> on(n, false);
  int counter = 0, ncomp = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s] || num[s] != kNone)
      continue;
    std::vector<Frame> call{{static_cast<int>(s), 0}};
    num[s] = low[s] = counter++;
    stack.push_back(static_cast<int>(s));
    on[s] = true;
    while (!call.empty()) {
      auto& f = call.back();
      auto v = static_cast<std::size_t>(f.v);
      if (f.next < g.out[v].size()) {
        int e = g.out[v][f.next++];
        if (!keep(e))
          continue;
        auto w = static_cast<std::size_t>(E[static_cast<std::size_t>(e)].to);
        if (num[w] == kNone) {
          num[w] = low[w] = counter++;
          stack.push_back(static_cast<int>(w));
          on[w] = true;
          call.push_back({static_cast<int>(w), 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      if (low[v] == num[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = ncomp;
        } while (w != f.v);
        ++ncomp;
      }
      int done = f.v;
      call.pop_back();
      if (!call.empty()) {
        auto p = static_cast<std::size_t>(call.back().v);
        low[p] = std::min(low[p], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return comp;
}

// Shortest edge path from s to t using edges accepted by `keep`.
std::vector<int> path(const StrategyGraph& g, int s, int t, const std::function<bool(int)>& keep) {
  const auto& E = g.arena->edges;
  std::vector<int> via(g.out.size(), kNone);
  std::vector<bool> seen(g.out.size(), false);
  std::deque<int> queue{s};
  seen[static_cast<std::size_t>(s)] = true;
  while (!queue.empty() && !seen[static_cast<std::size_t>(t)]) {
    int v = queue.front();
    queue.pop_front();
    for (int e : g.out[static_cast<std::size_t>(v)]) {
      if (!keep(e))
        continue;
      int w = E[static_cast<std::size_t>(e)].to;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        via[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> out;
  for (int v = t; v != s;) {
    int e = via[static_cast<std::size_t>(v)];
    if (e == kNone)
      throw Error("internal: no path inside a component");
    out.push_back(e);
    v = E[static_cast<std::size_t>(e)].from;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

} // namespace

StrategyCheck check_strategy(const StrategyGraph& g) {
  const Arena& ar = *g.arena;
  const auto& E = ar.edges;
  StrategyCheck r;
  r.reachable.assign(g.out.size(), false);
  std::vector<int> order{g.root};
  r.reachable[static_cast<std::size_t>(g.root)] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int e : g.out[static_cast<std::size_t>(order[k])]) {
      auto w = static_cast<std::size_t>(E[static_cast<std::size_t>(e)].to);
      if (!r.reachable[w]) {
        r.reachable[w] = true;
        order.push_back(static_cast<int>(w));
      }
    }
  auto any = [](int) { return true; };

  for (int v : order) {
    const auto& n = ar.nodes[static_cast<std::size_t>(v)];
    if (n.kind == NodeKind::i_up && !ar.final[static_cast<std::size_t>(v)]) {
      r.winning = false;
      r.loss = LossKind::non_final;
      r.prefix = path(g, g.root, v, any);
      return r;
    }
  }

  std::set<int> odd;
  for (int v : order)
    for (int e : g.out[static_cast<std::size_t>(v)]) {
      int p = E[static_cast<std::size_t>(e)].priority;
      if (p % 2 == 1)
        odd.insert(p);
    }
  for (int p : odd) {
    auto keep = [&](int e) { return E[static_cast<std::size_t>(e)].priority <= p; };
    auto comp = components(g, r.reachable, keep);
    auto inside = [&](int e) {
      const auto& x = E[static_cast<std::size_t>(e)];
      return keep(e) && comp[static_cast<std::size_t>(x.from)] != kNone &&
             comp[static_cast<std::size_t>(x.from)] == comp[static_cast<std::size_t>(x.to)];
    };
    for (int v : order)
      for (int ep : g.out[static_cast<std::size_t>(v)]) {
        if (E[static_cast<std::size_t>(ep)].priority != p || !inside(ep))
          continue;
        int c = comp[static_cast<std::size_t>(v)];
        for (int w : order) {
          if (comp[static_cast<std::size_t>(w)] != c)
            continue;
          for (int eb : g.out[static_cast<std::size_t>(w)]) {
            if (E[static_cast<std::size_t>(eb)].size != EdgeSize::big || !inside(eb))
              continue;
            const auto& xp = E[static_cast<std::size_t>(ep)];
            const auto& xb = E[static_cast<std::size_t>(eb)];
            r.winning = false;
            r.loss = LossKind::bad_cycle;
            r.cycle_priority = p;
            r.prefix = path(g, g.root, xp.from, any);
            r.cycle.push_back(ep);
            if (ep != eb) {
              auto a = path(g, xp.to, xb.from, inside);
              r.cycle.insert(r.cycle.end(), a.begin(), a.end());
              r.cycle.push_back(eb);
              auto b = path(g, xb.to, xp.from, inside);
              r.cycle.insert(r.cycle.end(), b.begin(), b.end());
            } else {
              auto a = path(g, xp.to, xp.from, inside);
              r.cycle.insert(r.cycle.end(), a.begin(), a.end());
            }
            return r;
          }
        }
      }
  }
  return r;
}

bool is_strategy_winning(const StrategyGraph& g) { return check_strategy(g).winning; }

std::vector<int> choice_candidates(const Arena& ar, int node, bool full) {
  const auto& outs = ar.out[static_cast<std::size_t>(node)];
  if (full)
    return outs;
  using Sig = std::vector<std::tuple<int, int, int>>;
  std::vector<std::pair<int, Sig>> blocks;
  std::vector<int> other;
  for (int e : outs) {
    int to = ar.edges[static_cast<std::size_t>(e)].to;
    if (ar.nodes[static_cast<std::size_t>(to)].kind != NodeKind::i_up) {
      other.push_back(e);
      continue;
    }
    if (!ar.final[static_cast<std::size_t>(to)])
      continue;
    Sig sig;
    for (int k : ar.out[static_cast<std::size_t>(to)]) {
      const auto& x = ar.edges[static_cast<std::size_t>(k)];
      sig.emplace_back(x.to, static_cast<int>(x.size), x.priority);
    }
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    blocks.emplace_back(e, std::move(sig));
  }
  // A block whose interrupt options contain another block's is never better.
  std::vector<int> out = other;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    bool dropped = false;
    for (std::size_t j = 0; j < blocks.size() && !dropped; ++j) {
      if (i == j)
        continue;
      const auto& a = blocks[i].second;
      const auto& b = blocks[j].second;
      bool contains = std::includes(a.begin(), a.end(), b.begin(), b.end());
      dropped = contains && (a.size() > b.size() || j < i);
    }
    if (!dropped)
      out.push_back(blocks[i].first);
  }
  return out;
}

namespace {

struct Search {
  const Arena& ar;
  const EnumerationOptions& opt;
  const std::function<bool(const PositionalChoice&, const StrategyCheck&)>* visit = nullptr;
  std::atomic<std::size_t>* shared_checks = nullptr;
  const std::atomic<bool>* stop = nullptr;
  EnumerationStats stats;
  std::vector<std::vector<int>> candidates;

  Search(const Arena& a, const EnumerationOptions& o) : ar(a), opt(o) {
    candidates.resize(ar.nodes.size());
    for (std::size_t v = 0; v < ar.nodes.size(); ++v)
      if (ar.is_o_node(static_cast<int>(v)))
        candidates[v] = choice_candidates(ar, static_cast<int>(v), opt.full);
  }

  StrategyCheck check(const PositionalChoice& c) {
    ++stats.checks;
    std::size_t total = shared_checks ? ++*shared_checks : stats.checks;
    if (total > opt.cap)
      throw ResourceError("strategy enumeration cap exceeded", total - 1);
    return check_strategy(restrict_to_choice(ar, c));
  }

  // Smallest reachable O-node without a choice, or -1.
  int open_node(const PositionalChoice& c, const StrategyCheck& chk) const {
    for (std::size_t v = 0; v < ar.nodes.size(); ++v)
      if (chk.reachable[v] && ar.is_o_node(static_cast<int>(v)) && c.edge[v] < 0)
        return static_cast<int>(v);
    return -1;
  }

  // Returns false to stop the whole enumeration.
  bool dfs(PositionalChoice& c) {
    if (stop && stop->load(std::memory_order_relaxed))
      return false;
    StrategyCheck chk = check(c);
    if (!opt.full && !chk.winning)
      return true;
    int v = open_node(c, chk);
    if (v < 0) {
      ++stats.complete;
      return (*visit)(c, chk);
    }
    for (int e : candidates[static_cast<std::size_t>(v)]) {
      c.edge[static_cast<std::size_t>(v)] = e;
      if (!dfs(c))
        return false;
    }
    c.edge[static_cast<std::size_t>(v)] = -1;
    return true;
  }

  // Partial choices whose subtrees, in order, partition the search.
  std::vector<PositionalChoice> split(std::size_t want) {
    std::vector<PositionalChoice> tasks{PositionalChoice{std::vector<int>(ar.nodes.size(), -1)}};
    for (int round = 0; round < 8 && tasks.size() < want; ++round) {
      std::vector<PositionalChoice> next;
      bool grew = false;
      for (auto& t : tasks) {
        StrategyCheck chk = check(t);
        int v = (opt.full || chk.winning) ? open_node(t, chk) : -2;
        if (v == -2)
          continue;
        if (v < 0) {
          next.push_back(t);
          continue;
        }
        for (int e : candidates[static_cast<std::size_t>(v)]) {
          auto c = t;
          c.edge[static_cast<std::size_t>(v)] = e;
          next.push_back(std::move(c));
          grew = true;
        }
      }
      tasks = std::move(next);
      if (!grew)
        break;
    }
    return tasks;
  }
};

} // namespace

EnumerationStats enumerate_choices(
    const Arena& ar, const EnumerationOptions& opt,
    const std::function<bool(const PositionalChoice&, const StrategyCheck&)>& visit) {
  Search s(ar, opt);
  s.visit = &visit;
  PositionalChoice c{std::vector<int>(ar.nodes.size(), -1)};
  if (!ar.nodes.empty())
    s.dfs(c);
  return s.stats;
}

std::optional<PositionalChoice> find_winning_choice(const Arena& ar, const EnumerationOptions& opt,
                                                    EnumerationStats* stats) {
  if (ar.nodes.empty())
    return std::nullopt;
  EnumerationOptions o = opt;
  o.full = false;
  if (o.jobs <= 1) {
    std::optional<PositionalChoice> found;
    auto st = enumerate_choices(ar, o, [&](const PositionalChoice& c, const StrategyCheck&) {
      found = c;
      return false;
    });
    if (stats)
      *stats = st;
    return found;
  }

  std::atomic<std::size_t> checks{0};
  Search root(ar, o);
  root.shared_checks = &checks;
  auto tasks = root.split(8 * static_cast<std::size_t>(o.jobs));

  struct Outcome {
    std::optional<PositionalChoice> found;
    EnumerationStats stats;
    bool finished = false;
  };
  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t k = next++;
      if (k >= tasks.size() || k > best.load())
        return;
      std::atomic<bool> stop{false};
      Search s(ar, o);
      s.shared_checks = &checks;
      s.stop = &stop;
      std::function<bool(const PositionalChoice&, const StrategyCheck&)> visit =
          [&](const PositionalChoice& c, const StrategyCheck&) {
            outcomes[k].found = c;
            return false;
          };
      s.visit = &visit;
      try {
        PositionalChoice c = tasks[k];
        s.dfs(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error)
          error = std::current_exception();
        best = 0;
        return;
      }
      outcomes[k].stats = s.stats;
      outcomes[k].finished = true;
      if (outcomes[k].found) {
        std::size_t cur = best.load();
        while (k < cur && !best.compare_exchange_weak(cur, k)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < o.jobs; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);

  EnumerationStats total = root.stats;
  std::optional<PositionalChoice> found;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    total.checks += outcomes[k].stats.checks;
    total.complete += outcomes[k].stats.complete;
    if (outcomes[k].found) {
      found = outcomes[k].found;
      break;
    }
  }
  if (stats)
    *stats = total;
  return found;
}

ContinuousResult decide_continuous(const ParityAutomaton& spec, Semantics s,
                                   const EnumerationOptions& opt, std::size_t signature_cap) {
  ParityAutomaton view = arena_view(spec, s);
  ClassTable table = arena_class_table(view, signature_cap);
  auto up = build_UP(table);
  ContinuousResult r;
  r.arena = s == Semantics::rc ? build_rc_arena(view, table, up) : build_fv_arena(view, table, up);
  r.classes = table.size();
  r.witness = find_winning_choice(r.arena, opt, &r.stats);
  r.realizable = r.witness.has_value();
  return r;
}

ChoicePlayer::ChoicePlayer(const Arena& arena, PositionalChoice choice)
    : arena_(&arena), choice_(std::move(choice)) {}

int ChoicePlayer::edge_at(int node) const {
  auto v = static_cast<std::size_t>(node);
  int e = v < choice_.edge.size() ? choice_.edge[v] : -1;
  if (e < 0)
    throw DomainError("the strategy makes no choice at " + arena_->node_name(node));
  return e;
}

ChoicePlayer witness_to_player(const Arena& arena, const PositionalChoice& choice) {
  return ChoicePlayer(arena, choice);
}

nlohmann::json choice_to_json(const Arena& ar, const PositionalChoice& choice) {
  nlohmann::json moves = nlohmann::json::array();
  for (std::size_t v = 0; v < choice.edge.size(); ++v) {
    int e = choice.edge[v];
    if (e < 0)
      continue;
    const auto& x = ar.edges[static_cast<std::size_t>(e)];
    const auto& to = ar.nodes[static_cast<std::size_t>(x.to)];
    nlohmann::json m{{"node", ar.node_name(static_cast<int>(v))},
                     {"target", ar.node_name(x.to)}};
    if (to.kind == NodeKind::i_up) {
      m["block"] = ar.up_name(to.u);
      m["scale"] = "2^-i";
    }
    if (x.letter >= 0)
      m["output"] = ar.automaton.sigma_out()[static_cast<std::size_t>(x.letter)];
    moves.push_back(m);
  }
  return moves;
}

} // namespace chronosynth
