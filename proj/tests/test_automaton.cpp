#include "support.hpp"

#include <doctest.h>

using namespace chronosynth;
using namespace testsupport;
using nlohmann::json;

namespace {

ParityAutomaton one_state(int priority, Convention c) {
  return ParityAutomaton({"q"}, {"0", "1"}, {"0", "1"}, {0, 0, 0, 0}, 0, {priority}, c);
}

// Toggles between s0 and s1 on (1,0), stays otherwise.
ParityAutomaton toggler() {
  std::vector<int> tr;
  for (int q = 0; q < 2; ++q)
    for (int l = 0; l < 4; ++l)
      tr.push_back(l == 2 ? 1 - q : q);
  return ParityAutomaton({"s0", "s1"}, {"0", "1"}, {"0", "1"}, tr, 0, {1, 2},
                         Convention::max_even);
}

} // namespace

TEST_CASE("runs") {
  auto a = one_state(0, Convention::min_even);
  auto r = run_over(a, LassoWord<int>({1, 2}, {3, 0}));
  CHECK(r.prefix().empty());
  CHECK(r.period() == std::vector<int>{0});

  auto t = toggler();
  int l10 = t.letter(1, 0);
  CHECK(l10 == 2);
  auto rt = run_over(t, LassoWord<int>({}, {l10}));
  CHECK(rt.prefix().empty());
  CHECK(rt.period() == std::vector<int>{0, 1});
  CHECK(accepts(t, LassoWord<int>({}, {l10})));
  CHECK_FALSE(accepts(t, LassoWord<int>({}, {0})));

  CHECK_THROWS_AS(run_over(t, LassoWord<int>({}, {4})), DomainError);
}

TEST_CASE("runs agree with unrolled simulation") {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto a = random_automaton(rng, 3, 2, 2, 3);
    auto w = random_lasso(rng, 4, 4, i % 2 ? 1 : 4);
    auto r = run_over(a, w);
    CHECK(r == run_over(a, w));
    int q = a.initial();
    for (std::size_t k = 0; k < 200; ++k) {
      CHECK(r.at(k) == q);
      q = a.next(q, w.at(k));
    }
    // Inf from the normalized period vs. a long unrolling
    std::size_t n = 10 * (w.prefix().size() + w.period().size()) * a.num_states();
    std::set<int> late;
    q = a.initial();
    for (std::size_t k = 0; k < n + 12; ++k) {
      if (k >= n)
        late.insert(q);
      q = a.next(q, w.at(k));
    }
    std::set<int> inf = inf_set(r);
    CHECK(std::includes(inf.begin(), inf.end(), late.begin(), late.end()));
    CHECK(accepts(a, w) == accepts_by_unrolling(a, w));
  }
}

TEST_CASE("acceptance conventions") {
  CHECK(accepts(one_state(0, Convention::min_even), LassoWord<int>({}, {0})));
  CHECK_FALSE(accepts(one_state(1, Convention::min_even), LassoWord<int>({}, {3})));
  CHECK_FALSE(accepts(one_state(1, Convention::max_even), LassoWord<int>({}, {3})));
  CHECK_FALSE(parity_accepting({1, 2}, Convention::min_even));
  CHECK(parity_accepting({1, 2}, Convention::max_even));
}

TEST_CASE("convention conversion") {
  std::mt19937 rng(9);
  auto r = random_automaton(rng, 3, 2, 1, 1);
  ParityAutomaton a(r.state_names(), r.sigma_in(), r.sigma_out(), r.transitions(), 0, {0, 1, 0},
                    Convention::min_even);
  auto b = convert_convention(a, Convention::max_even);
  for (std::size_t q = 0; q < 3; ++q)
    CHECK(b.priority(static_cast<int>(q)) == (a.priority(static_cast<int>(q)) == 0 ? 2 : 1));
  for (int i = 0; i < 50; ++i) {
    auto w = random_lasso(rng, 2, 4, 4);
    CHECK(accepts(a, w) == accepts(b, w));
  }
  CHECK(convert_convention(b, Convention::max_even).priorities() == b.priorities());

  ParityAutomaton c({"a", "b", "c"}, {"x"}, {"y"}, {1, 2, 0}, 0, {1, 2, 3}, Convention::min_even);
  auto d = convert_convention(c, Convention::max_even);
  CHECK(d.priorities() == std::vector<int>{3, 2, 1});
}

TEST_CASE("conversion preserves languages exhaustively") {
  std::mt19937 rng(21);
  auto words = all_lassos(2, 3, 3);
  for (int i = 0; i < 20; ++i) {
    auto conv = i % 2 ? Convention::min_even : Convention::max_even;
    auto a = random_automaton(rng, 4, 2, 1, 4, conv);
    for (auto target : {Convention::min_even, Convention::max_even}) {
      auto b = convert_convention(a, target);
      for (const auto& w : words)
        CHECK(accepts(a, w) == accepts(b, w));
    }
  }
}

TEST_CASE("products with safety monitors") {
  std::mt19937 rng(4);
  auto a = random_automaton(rng, 3, 2, 2, 3, Convention::min_even);
  auto all = product_with_monitor(a, SafetyMonitor::accept_all(4));
  for (int i = 0; i < 50; ++i) {
    auto w = random_lasso(rng, 4, 3, 3);
    CHECK(accepts(all, w) == accepts(a, w));
  }
  auto yes = one_state(0, Convention::max_even);
  auto forbid = product_with_monitor(yes, SafetyMonitor::forbid_letter(4, 3));
  CHECK_FALSE(accepts(forbid, LassoWord<int>({0, 3}, {0})));
  CHECK(accepts(forbid, LassoWord<int>({0, 1}, {2})));
  auto escape = union_with_violation(one_state(1, Convention::max_even),
                                     SafetyMonitor::forbid_letter(4, 3));
  CHECK(accepts(escape, LassoWord<int>({0, 3}, {0})));
  CHECK_FALSE(accepts(escape, LassoWord<int>({0, 1}, {2})));
  CHECK_THROWS_AS(product_with_monitor(a, SafetyMonitor::accept_all(3)), DomainError);
}

TEST_CASE("json ingestion completes with a sink and converts to max_even") {
  json j = R"({
    "states": ["a", "b"], "sigma_in": ["0", "1"], "sigma_out": ["0"],
    "initial": "a", "priority": {"a": 0, "b": 1}, "convention": "min_even",
    "transitions": [{"from": "a", "in": "0", "out": "0", "to": "a"},
                    {"from": "a", "in": "1", "out": "0", "to": "b"}]
  })"_json;
  auto a = automaton_from_json(j);
  CHECK(a.num_states() == 3);
  CHECK(a.state_names()[2] == "__sink__");
  CHECK(a.convention() == Convention::max_even);
  CHECK(a.next(1, 0) == 2);
  CHECK(accepts(a, LassoWord<int>({}, {0})));
  CHECK_FALSE(accepts(a, LassoWord<int>({1}, {0})));
  auto back = automaton_from_json(to_json(a));
  CHECK(back.transitions() == a.transitions());
  CHECK(back.priorities() == a.priorities());

  json bad = j;
  bad["transitions"].push_back({{"from", "a"}, {"in", "0"}, {"out", "0"}, {"to", "b"}});
  CHECK_THROWS_AS(automaton_from_json(bad), DomainError);
  json unknown = j;
  unknown["transitions"].push_back({{"from", "a"}, {"in", "7"}, {"out", "0"}, {"to", "b"}});
  CHECK_THROWS_AS(automaton_from_json(unknown), ParseError);
  CHECK_THROWS_AS(automaton_from_json(json::parse("{}")), ParseError);
}

namespace {

// A random D-encoded automaton over base alphabets {0,1} x {0,1}.
ParityAutomaton random_d(std::mt19937& rng, std::size_t states) {
  auto base = random_automaton(rng, states, 4, 4, 3);
  std::vector<std::string> sig{"0|0", "0|1", "1|0", "1|1"};
  return ParityAutomaton(base.state_names(), sig, sig, base.transitions(), 0, base.priorities(),
                         Convention::max_even, Encoding::d);
}

} // namespace

TEST_CASE("semantic views of D-encoded automata") {
  std::mt19937 rng(12);
  for (int i = 0; i < 30; ++i) {
    auto d = random_d(rng, 3);
    auto rc = rc_view(d);
    auto fv = fv_view(d);
    CHECK(rc.num_inputs() == 2);
    CHECK(fv.num_inputs() == 2);
    for (int k = 0; k < 40; ++k) {
      // base word over (x, y) letters
      auto w = random_lasso(rng, 4, 3, 3);
      auto diag = map_letters(w, [&](int l) {
        int x = l / 2, y = l % 2;
        return d.letter(d.d_input(x, x), d.d_output(y, y));
      });
      CHECK(accepts(rc, w) == accepts(d, diag));
      // D word over pairs of base letters, read interleaved by the FV view
      auto dw = random_lasso(rng, 16, 3, 3);
      auto split = [&](const std::vector<int>& v) {
        std::vector<int> out;
        for (int l : v) {
          auto [x, x2] = d.split_input(d.letter_input(l));
          auto [y, y2] = d.split_output(d.letter_output(l));
          out.push_back(fv.letter(x, y));
          out.push_back(fv.letter(x2, y2));
        }
        return out;
      };
      LassoWord<int> flat(split(dw.prefix()), split(dw.period()));
      CHECK(accepts(fv, flat) == accepts(d, dw));
    }
  }
  auto plain = toggler();
  CHECK(rc_view(plain).transitions() == plain.transitions());
  CHECK(fv_view(plain).transitions() == plain.transitions());
}

TEST_CASE("trim keeps reachable states") {
  ParityAutomaton a({"a", "b", "c"}, {"x"}, {"y"}, {1, 1, 0}, 0, {0, 1, 2},
                    Convention::max_even);
  auto t = trim(a);
  CHECK(t.num_states() == 2);
  CHECK(t.state_names() == std::vector<std::string>{"a", "b"});
  CHECK(accepts(t, LassoWord<int>({}, {0})) == accepts(a, LassoWord<int>({}, {0})));
}
