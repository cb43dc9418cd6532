#include "discrete_game.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace chronosynth;
using namespace testsupport;

namespace {

ParityAutomaton copy_spec() {
  // ok stays while out == in; any mismatch falls into bad forever
  std::vector<int> tr{0, 1, 1, 0, 1, 1, 1, 1};
  return ParityAutomaton({"ok", "bad"}, {"0", "1"}, {"0", "1"}, tr, 0, {0, 1},
                         Convention::max_even);
}

// Output at step i must equal input at step i+1.
ParityAutomaton predict_spec() {
  // states: init, p0, p1, bad
  std::vector<int> tr;
  for (int q = 0; q < 4; ++q)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        if (q == 3)
          tr.push_back(3);
        else if (q == 0 || x == q - 1)
          tr.push_back(1 + y);
        else
          tr.push_back(3);
      }
  return ParityAutomaton({"init", "p0", "p1", "bad"}, {"0", "1"}, {"0", "1"}, tr, 0,
                         {0, 0, 0, 1}, Convention::max_even);
}

ParityGame random_game(std::mt19937& rng, std::size_t n) {
  ParityGame g;
  std::uniform_int_distribution<int> own(0, 1), pr(0, 4), deg(1, 3),
      node(0, static_cast<int>(n) - 1);
  for (std::size_t v = 0; v < n; ++v)
    g.add_node(own(rng), pr(rng));
  for (auto& s : g.succ) {
    int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      int w = node(rng);
      if (std::find(s.begin(), s.end(), w) == s.end())
        s.push_back(w);
    }
  }
  return g;
}

LassoWord<int> combined(const ParityAutomaton& a, const LassoWord<int>& in,
                        const LassoWord<int>& out) {
  return map_letters(zip(in, out), [&](const std::pair<int, int>& p) {
    return a.letter(p.first, p.second);
  });
}

void check_machine(const ParityAutomaton& a, const DiscreteResult& r, std::mt19937& rng,
                   int plays) {
  for (int i = 0; i < plays; ++i) {
    if (r.output_wins) {
      auto in = random_lasso(rng, static_cast<int>(a.num_inputs()), 4, 4);
      auto out = run_machine(*r.mealy, in);
      CHECK(accepts(a, combined(a, in, out)));
    } else {
      auto out = random_lasso(rng, static_cast<int>(a.num_outputs()), 4, 4);
      auto in = run_counter(*r.counter, out);
      CHECK_FALSE(accepts(a, combined(a, in, out)));
    }
  }
}

} // namespace

TEST_CASE("single-node games") {
  ParityGame even;
  even.add_node(1, 2);
  even.succ[0] = {0};
  CHECK(zielonka(even).winner[0] == 0);
  CHECK(brute_force_solve(even)[0] == 0);
  ParityGame odd;
  odd.add_node(0, 1);
  odd.succ[0] = {0};
  CHECK(zielonka(odd).winner[0] == 1);
  CHECK(brute_force_solve(odd)[0] == 1);
  ParityGame dead;
  dead.add_node(0, 0);
  CHECK_THROWS_AS(zielonka(dead), DomainError);
}

TEST_CASE("copy spec is won by the identity") {
  auto a = copy_spec();
  auto r = solve(a);
  REQUIRE(r.output_wins);
  REQUIRE(r.mealy);
  CHECK_FALSE(r.counter);
  LassoWord<int> in({}, {0, 1});
  CHECK(run_machine(*r.mealy, in) == in);
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto w = random_lasso(rng, 2, 4, 4);
    CHECK(omega_equal(run_machine(*r.mealy, w), w));
  }
}

TEST_CASE("prediction is lost by the output player") {
  auto a = predict_spec();
  auto r = solve(a);
  REQUIRE_FALSE(r.output_wins);
  REQUIRE(r.counter);
  // the counter machine contradicts each prediction
  LassoWord<int> out({}, {0});
  auto in = run_counter(*r.counter, out);
  CHECK(in.at(1) == 1);
  std::mt19937 rng(2);
  check_machine(a, r, rng, 200);
}

TEST_CASE("constant machines") {
  MealyMachine m;
  m.num_states = 1;
  m.num_inputs = 2;
  m.num_outputs = 2;
  m.next = {0, 0};
  m.output = {1, 1};
  CHECK(run_machine(m, LassoWord<int>({0, 1}, {1, 0, 0})) == LassoWord<int>({}, {1}));
}

TEST_CASE("zielonka agrees with brute force on random games") {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto g = random_game(rng, 1 + static_cast<std::size_t>(i % 8));
    auto z = zielonka(g);
    CHECK(z.winner == brute_force_solve(g));
    for (std::size_t v = 0; v < g.size(); ++v) {
      int w = z.winner[v];
      CHECK(plays_are_won(g, z.strategy, w, static_cast<int>(v)));
      if (g.owner[v] == w)
        CHECK(z.strategy[v] >= 0);
    }
  }
}

TEST_CASE("automaton games agree with brute force and machines win") {
  std::mt19937 rng(4);
  int o_wins = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = random_automaton(rng, 6, 2, 2, 3);
    auto r = solve(a);
    auto bf = brute_force_solve(r.arena.game);
    CHECK(bf == r.solution.winner);
    o_wins += r.output_wins;
    check_machine(a, r, rng, 20);
  }
  CHECK(o_wins > 0);
  CHECK(o_wins < 100);
}

TEST_CASE("brute force cap") {
  ParityGame g;
  for (int v = 0; v < 30; ++v)
    g.add_node(0, 0);
  for (auto& s : g.succ)
    s = {0, 1};
  CHECK_THROWS_AS(brute_force_solve(g, 1000), ResourceError);
}

TEST_CASE("machine export") {
  auto a = copy_spec();
  auto r = solve(a);
  auto j = to_json(*r.mealy, a);
  CHECK(j["type"] == "mealy");
  CHECK(j["transitions"].size() == 2);
  CHECK(to_dot(*r.mealy, a) == to_dot(*r.mealy, a));
  auto p = predict_spec();
  auto c = solve(p);
  CHECK(to_json(*c.counter, p)["type"] == "moore_counter");
}
