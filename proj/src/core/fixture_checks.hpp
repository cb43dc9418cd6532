#pragma once

#include "signal.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace chronosynth {

struct FixtureCheck {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail; // first counterexample, if any
};

// a and b take the same values on [0, t) (or [0, t] when `closed`).
bool agree_until(const FVSignal& a, const FVSignal& b, const Rational& t, bool closed);

// `base` on [0, t), then `rest` shifted to start at t.
FVSignal splice(const FVSignal& base, const Rational& t, const FVSignal& rest);

// Binary signal on the 1/4 grid with a few head pieces and, optionally, a
// periodic tail.
FVSignal random_grid_signal(std::mt19937_64& rng, bool allow_tail);

FixtureCheck check_G_strongly_causal(std::uint64_t seed, std::size_t pairs);
FixtureCheck check_G_no_fixpoint(std::uint64_t seed, std::size_t signals);
// Causal operators given as Mealy machines on D-words: the image of the
// impulse at t agrees with the image of the impulse at 1 on [0, t).
FixtureCheck check_impulse_prefix(std::uint64_t seed, std::size_t machines);
FixtureCheck check_fixture_verdicts();
FixtureCheck check_jump_example(std::size_t rounds);

std::vector<FixtureCheck> run_fixture_checks(std::uint64_t seed);

} // namespace chronosynth
