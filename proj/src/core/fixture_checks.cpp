#include "fixture_checks.hpp"

#include "continuous_synth.hpp"
#include "definable_synth.hpp"
#include "discrete_game.hpp"
#include "fixtures.hpp"
#include "game_sim.hpp"

#include <algorithm>

namespace chronosynth {

bool agree_until(const FVSignal& a, const FVSignal& b, const Rational& t, bool closed) {
  std::vector<Rational> points{Rational(0), t};
  for (const auto* s : {&a, &b})
    for (const auto& p : s->pieces_until(t))
      points.push_back(p.at);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& x = points[i];
    if ((x < t || (closed && x == t)) && value_at(a, x) != value_at(b, x))
      return false;
    if (i + 1 < points.size()) {
      Rational mid = (x + points[i + 1]) / 2;
      if (mid < t && value_at(a, mid) != value_at(b, mid))
        return false;
    }
  }
  return true;
}

FVSignal splice(const FVSignal& base, const Rational& t, const FVSignal& rest) {
  std::vector<Piece> head;
  for (const auto& p : base.pieces_until(t))
    if (p.at < t)
      head.push_back(p);
  for (const auto& p : rest.head())
    head.push_back(Piece{p.at + t, p.point, p.after});
  std::optional<PeriodicTail> tail;
  if (rest.tail())
    tail = PeriodicTail{rest.tail()->start + t, rest.tail()->delta, rest.tail()->block};
  return FVSignal(std::move(head), std::move(tail));
}

FVSignal random_grid_signal(std::mt19937_64& rng, bool allow_tail) {
  std::uniform_int_distribution<int> bit(0, 1), gap(1, 6), count(1, 4);
  std::vector<Piece> head;
  Rational t = 0;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    head.push_back(Piece{t, bit(rng), bit(rng)});
    t += Rational(gap(rng), 4);
  }
  if (!allow_tail || bit(rng))
    return FVSignal(std::move(head));
  PeriodicTail tail{t, Rational(gap(rng) + 1, 4), {}};
  Rational off = 0;
  while (off < tail.delta) {
    tail.block.push_back(Piece{off, bit(rng), bit(rng)});
    off += Rational(gap(rng), 4);
  }
  return FVSignal(std::move(head), std::move(tail));
}

FixtureCheck check_G_strongly_causal(std::uint64_t seed, std::size_t pairs) {
  FixtureCheck r{"G strongly causal", true, 0, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cut(1, 16);
  for (std::size_t k = 0; k < pairs; ++k) {
    auto y1 = random_grid_signal(rng, true);
    Rational t(cut(rng), 4);
    auto y2 = splice(y1, t, random_grid_signal(rng, false));
    ++r.cases;
    if (!agree_until(fixture_G(y1), fixture_G(y2), t, true)) {
      r.passed = false;
      r.detail = "outputs differ on [0," + to_string(t) + "] for " + to_json(y1).dump() +
                 " and " + to_json(y2).dump();
      return r;
    }
  }
  return r;
}

FixtureCheck check_G_no_fixpoint(std::uint64_t seed, std::size_t signals) {
  FixtureCheck r{"G has no fixed point", true, 0, ""};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < signals; ++k) {
    auto y = random_grid_signal(rng, true);
    ++r.cases;
    if (signals_equal(fixture_G(y), y)) {
      r.passed = false;
      r.detail = "G(Y) = Y for " + to_json(y).dump();
      return r;
    }
  }
  return r;
}

FixtureCheck check_impulse_prefix(std::uint64_t seed, std::size_t machines) {
  FixtureCheck r{"causal operators and impulses", true, 0, ""};
  std::mt19937_64 rng(seed);
  auto samples = SampleSequence::uniform(Rational(1, 8));
  for (std::size_t k = 0; k < machines; ++k) {
    MealyMachine m;
    m.num_states = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    m.num_inputs = m.num_outputs = 4;
    std::uniform_int_distribution<int> st(0, static_cast<int>(m.num_states) - 1), out(0, 3);
    for (std::size_t i = 0; i < m.num_states * 4; ++i) {
      m.next.push_back(st(rng));
      m.output.push_back(out(rng));
    }
    auto F = [&](const Rational& x) {
      auto in = map_letters(encode_D(delta_signal(x), samples),
                            [](const DLetter& l) { return 2 * l.first + l.second; });
      auto y = map_letters(run_machine(m, in), [](int l) { return DLetter{l / 2, l % 2}; });
      return decode_FV(y, samples);
    };
    auto y1 = F(Rational(1));
    for (int j = 1; j < 8; ++j) {
      Rational t(j, 8);
      ++r.cases;
      if (!agree_until(F(t), y1, t, false)) {
        r.passed = false;
        r.detail = "machine " + std::to_string(k) + " sees the impulse at " + to_string(t);
        return r;
      }
    }
  }
  return r;
}

FixtureCheck check_fixture_verdicts() {
  FixtureCheck r{"fixture verdicts", true, 0, ""};
  auto expect = [&](bool ok, const std::string& what) {
    ++r.cases;
    if (!ok && r.passed) {
      r.passed = false;
      r.detail = what;
    }
  };
  expect(solve_definable(fixtures::psi_copy()).definable, "copy should be definable");
  expect(!solve_definable(fixtures::psi_jump()).definable, "jump should not be definable");
  expect(!solve_definable(fixtures::psi_indet()).definable, "indet should not be definable");
  for (auto s : {Semantics::rc, Semantics::fv}) {
    std::string sem = to_string(s);
    expect(decide_continuous(fixtures::psi_copy(), s).realizable, "copy unrealizable over " + sem);
    expect(decide_continuous(fixtures::psi_jump(), s).realizable, "jump unrealizable over " + sem);
    expect(!decide_continuous(fixtures::psi_indet(), s).realizable,
           "indet realizable over " + sem);
  }
  return r;
}

FixtureCheck check_jump_example(std::size_t rounds) {
  FixtureCheck r{"jump example duration", true, 1, ""};
  auto e = play_example_5_3(rounds);
  if (!(e.duration < 2) || e.output_jump_found) {
    r.passed = false;
    r.detail = "duration " + to_string(e.duration);
  }
  return r;
}

std::vector<FixtureCheck> run_fixture_checks(std::uint64_t seed) {
  return {check_G_strongly_causal(seed, 200), check_G_no_fixpoint(seed + 1, 200),
          check_impulse_prefix(seed + 2, 50), check_fixture_verdicts(), check_jump_example(64)};
}

} // namespace chronosynth
