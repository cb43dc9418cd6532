#pragma once

#include "omega_word.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace chronosynth {

// Value at `at` and on the open interval up to the next piece.
struct Piece {
  Rational at;
  int point = 0;
  int after = 0;
};

// From `start` on, the signal repeats `block` with period `delta`. Block
// offsets are relative to the start of each repetition.
struct PeriodicTail {
  Rational start;
  Rational delta;
  std::vector<Piece> block;
};

// Finitely presented finite-variability signal over integer letters. Without
// a periodic tail the last piece's interval value persists forever.
class FVSignal {
public:
  FVSignal(std::vector<Piece> head, std::optional<PeriodicTail> tail = std::nullopt);

  static FVSignal constant(int v);

  const std::vector<Piece>& head() const noexcept { return head_; }
  const std::optional<PeriodicTail>& tail() const noexcept { return tail_; }

  // The piece governing time t (largest piece time <= t), with absolute time.
  Piece piece_at(const Rational& t) const;
  // Every piece with time <= horizon, tail unrolled.
  std::vector<Piece> pieces_until(const Rational& horizon) const;
  // Time after which the presentation is purely periodic (or constant), and
  // the period (nullopt for a constant tail).
  Rational settle_time() const;
  std::optional<Rational> period() const;

private:
  std::vector<Piece> head_;
  std::optional<PeriodicTail> tail_;
};

int value_at(const FVSignal& s, const Rational& t);
// Limits from the left (t > 0) and from the right.
int left_limit(const FVSignal& s, const Rational& t);
int right_limit(const FVSignal& s, const Rational& t);
bool jumps_at(const FVSignal& s, const Rational& t);
bool is_left_continuous_at(const FVSignal& s, const Rational& t);
bool is_right_continuous_at(const FVSignal& s, const Rational& t);
// Points in [0, horizon] where s jumps (0 always included).
std::vector<Rational> jump_points(const FVSignal& s, const Rational& horizon);
// Pointwise equality of the denoted signals.
bool signals_equal(const FVSignal& a, const FVSignal& b);
// Merges redundant pieces; the denoted signal is unchanged.
FVSignal simplify(const FVSignal& s);

// 0 = t_0 < t_1 < ...: the listed head times, then steps of `step` after the
// last one.
class SampleSequence {
public:
  SampleSequence(std::vector<Rational> head, Rational step);
  static SampleSequence uniform(const Rational& step) { return SampleSequence({Rational(0)}, step); }

  Rational at(std::size_t i) const;
  const std::vector<Rational>& head() const noexcept { return head_; }
  const Rational& step() const noexcept { return step_; }
  // Index of t in the sequence, if it is a sample point.
  std::optional<std::size_t> index_of(const Rational& t) const;
  // Least index whose time is > t.
  std::size_t first_after(const Rational& t) const;

private:
  std::vector<Rational> head_;
  Rational step_;
};

using DLetter = std::pair<int, int>;
using DWord = LassoWord<DLetter>;

// Letter i = (s(t_i), value of s on (t_i, t_{i+1})). Throws DomainError when
// the samples miss a discontinuity or when the sample step does not divide
// the signal's tail period.
DWord encode_D(const FVSignal& s, const SampleSequence& samples);
FVSignal decode_FV(const DWord& w, const SampleSequence& samples);

bool is_stuttering_free(const DWord& w);
DWord stutter_normalize(const DWord& w);
bool stuttering_equivalent(const DWord& a, const DWord& b);

// Increasing piecewise-linear bijection through the knots (x_k, y_k), starting
// at (0, 0) and continued with the last slope.
class Reparam {
public:
  explicit Reparam(std::vector<std::pair<Rational, Rational>> knots);
  Rational operator()(const Rational& x) const;
  Rational last_x() const { return knots_.back().first; }
  Rational last_slope() const;

private:
  std::vector<std::pair<Rational, Rational>> knots_;
};

// s o rho^-1: the value of the result at rho(t) is s(t).
FVSignal reparameterize(const FVSignal& s, const Reparam& rho);
SampleSequence reparameterize(const SampleSequence& samples, const Reparam& rho);

// Fixture signals.
FVSignal delta_signal(const Rational& x); // 1 at x, 0 elsewhere
// G(y)(0) = 0; for t > 0, 1 - a while y is constantly a on (0, t), else 1.
FVSignal fixture_G(const FVSignal& y);

FVSignal signal_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FVSignal& s);

} // namespace chronosynth
