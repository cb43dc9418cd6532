#pragma once

#include "automaton.hpp"
#include "signal.hpp"

#include <random>

namespace testsupport {

using chronosynth::Convention;
using chronosynth::LassoWord;
using chronosynth::ParityAutomaton;

inline LassoWord<int> random_lasso(std::mt19937& rng, int letters, int max_u, int max_v,
                                   int min_v = 1) {
  std::uniform_int_distribution<int> lu(0, max_u), lv(min_v, max_v), l(0, letters - 1);
  std::vector<int> u(static_cast<std::size_t>(lu(rng))), v(static_cast<std::size_t>(lv(rng)));
  for (auto& x : u)
    x = l(rng);
  for (auto& x : v)
    x = l(rng);
  return LassoWord<int>(u, v);
}

// Every lasso with |u| <= max_u and 1 <= |v| <= max_v over `letters` letters.
inline std::vector<LassoWord<int>> all_lassos(int letters, int max_u, int max_v) {
  std::vector<LassoWord<int>> out;
  auto words = [&](int len) {
    std::vector<std::vector<int>> ws;
    std::vector<int> w(static_cast<std::size_t>(len), 0);
    while (true) {
      ws.push_back(w);
      int i = len - 1;
      while (i >= 0 && w[static_cast<std::size_t>(i)] == letters - 1)
        w[static_cast<std::size_t>(i--)] = 0;
      if (i < 0)
        break;
      ++w[static_cast<std::size_t>(i)];
    }
    return ws;
  };
  for (int nu = 0; nu <= max_u; ++nu)
    for (int nv = 1; nv <= max_v; ++nv)
      for (const auto& u : words(nu))
        for (const auto& v : words(nv))
          out.emplace_back(u, v);
  return out;
}

inline std::vector<std::string> names(const char* stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(stem + std::to_string(i));
  return out;
}

inline ParityAutomaton random_automaton(std::mt19937& rng, std::size_t states, std::size_t nin,
                                        std::size_t nout, int max_priority,
                                        Convention c = Convention::max_even) {
  std::uniform_int_distribution<int> st(0, static_cast<int>(states) - 1), pr(0, max_priority);
  std::vector<int> tr(states * nin * nout), prio(states);
  for (auto& t : tr)
    t = st(rng);
  for (auto& p : prio)
    p = pr(rng);
  return ParityAutomaton(names("q", states), names("i", nin), names("o", nout), tr, 0, prio, c);
}

// Reference acceptance: simulate far beyond the lasso and collect the
// priorities seen in the last stretch.
inline bool accepts_by_unrolling(const ParityAutomaton& a, const LassoWord<int>& w) {
  std::size_t n = 10 * (w.prefix().size() + w.period().size()) * a.num_states() + 10;
  std::size_t window = w.period().size() * a.num_states();
  int q = a.initial();
  std::set<int> late;
  for (std::size_t i = 0; i < n + window; ++i) {
    if (i >= n)
      late.insert(a.priority(q));
    q = a.next(q, w.at(i));
  }
  int p = a.convention() == Convention::min_even ? *late.begin() : *late.rbegin();
  return p % 2 == 0;
}

// Binary signal on the 1/4 grid: a few head pieces, then a constant or a
// periodic tail whose period is a multiple of 1/4.
inline chronosynth::FVSignal random_signal(std::mt19937& rng, bool allow_tail = true) {
  using chronosynth::Piece;
  using chronosynth::Rational;
  std::uniform_int_distribution<int> bit(0, 1), gap(1, 6), count(1, 4);
  std::vector<Piece> head;
  Rational t = 0;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    head.push_back(Piece{t, bit(rng), bit(rng)});
    t += Rational(gap(rng), 4);
  }
  if (!allow_tail || bit(rng))
    return chronosynth::FVSignal(std::move(head));
  chronosynth::PeriodicTail tail{t, Rational(gap(rng) + 1, 4), {}};
  Rational off = 0;
  while (off < tail.delta) {
    tail.block.push_back(Piece{off, bit(rng), bit(rng)});
    off += Rational(gap(rng), 4);
  }
  return chronosynth::FVSignal(std::move(head), std::move(tail));
}

// Sample sequences containing the whole 1/4 grid.
inline chronosynth::SampleSequence random_grid_samples(std::mt19937& rng) {
  using chronosynth::Rational;
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
  case 0:
    return chronosynth::SampleSequence::uniform(Rational(1, 4));
  case 1:
    return chronosynth::SampleSequence::uniform(Rational(1, 8));
  default: {
    std::vector<Rational> head;
    for (int i = 0; i < 12; ++i) {
      head.push_back(Rational(i, 4));
      if (i % 3 == 1)
        head.push_back(Rational(4 * i + 1, 16));
    }
    return chronosynth::SampleSequence(head, Rational(1, 4));
  }
  }
}

} // namespace testsupport
