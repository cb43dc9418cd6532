#include "support.hpp"

#include <doctest.h>

using namespace chronosynth;
using namespace testsupport;

namespace {

Rational R(const char* s) { return parse_rational(s); }

DWord D(std::vector<DLetter> u, std::vector<DLetter> v) { return DWord(std::move(u), std::move(v)); }

// Values on the union of a 1/16 grid and its midpoints up to `horizon`.
bool agree_on_grid(const FVSignal& a, const FVSignal& b, const Rational& horizon) {
  for (Rational t = 0; t <= horizon; t += Rational(1, 32))
    if (value_at(a, t) != value_at(b, t))
      return false;
  return true;
}

} // namespace

TEST_CASE("values and jumps of delta signals") {
  auto d1 = delta_signal(1);
  CHECK(value_at(d1, 1) == 1);
  CHECK(value_at(d1, R("1/2")) == 0);
  CHECK(value_at(d1, 5) == 0);
  CHECK(jumps_at(d1, 1));
  CHECK(jumps_at(d1, 0));
  CHECK_FALSE(jumps_at(d1, R("1/2")));
  CHECK_FALSE(is_left_continuous_at(d1, 1));
  CHECK_FALSE(is_right_continuous_at(d1, 1));
  CHECK_THROWS_AS(value_at(d1, -1), DomainError);
  CHECK_THROWS_AS(jumps_at(d1, R("-1/2")), DomainError);

  auto c = FVSignal::constant(1);
  CHECK(value_at(c, R("7/3")) == 1);
  CHECK(jump_points(c, 100) == std::vector<Rational>{0});

  // a value that appears only on the interval before a point
  FVSignal step({Piece{0, 0, 1}, Piece{2, 0, 0}});
  CHECK_FALSE(is_left_continuous_at(step, 2));
  CHECK(is_right_continuous_at(step, 2));
}

TEST_CASE("periodic tails repeat") {
  FVSignal s({Piece{0, 0, 0}}, PeriodicTail{1, R("3/2"), {Piece{0, 1, 0}, Piece{R("1/2"), 0, 1}}});
  for (Rational t = 1; t < 2 + R("3/2"); t += Rational(1, 8))
    CHECK(value_at(s, t + 3) == value_at(s, t)); // two periods later
  CHECK(value_at(s, 1) == 1);
  CHECK(value_at(s, R("5/4")) == 0);
  CHECK(value_at(s, R("7/4")) == 1);
  CHECK(left_limit(s, R("5/2")) == 1);
  CHECK(jumps_at(s, R("5/2")));
  CHECK_THROWS_AS(FVSignal({Piece{1, 0, 0}}), DomainError);
  CHECK_THROWS_AS(FVSignal({Piece{0, 0, 0}}, PeriodicTail{1, 0, {Piece{0, 1, 1}}}), DomainError);
}

TEST_CASE("encode_D examples") {
  auto one = SampleSequence::uniform(1);
  CHECK(encode_D(FVSignal::constant(0), one) == D({}, {{0, 0}}));
  auto d1 = delta_signal(1);
  auto e1 = encode_D(d1, one);
  CHECK(e1 == D({{0, 0}, {1, 0}}, {{0, 0}}));
  SampleSequence half({0, R("1/2"), 1}, 1);
  auto e2 = encode_D(d1, half);
  CHECK(e2 == D({{0, 0}, {0, 0}, {1, 0}}, {{0, 0}}));
  CHECK(stuttering_equivalent(e1, e2));
  CHECK_THROWS_AS(encode_D(delta_signal(R("1/2")), one), DomainError);
  FVSignal per({}, PeriodicTail{0, 1, {Piece{0, 1, 0}}});
  CHECK_THROWS_AS(encode_D(per, SampleSequence::uniform(R("2/3"))), DomainError);
}

TEST_CASE("decode_FV examples") {
  auto iso = decode_FV(D({}, {{0, 1}}), SampleSequence::uniform(1));
  for (Rational t = 0; t < 10; t += Rational(1, 4))
    CHECK(value_at(iso, t) == (is_integer(t) ? 0 : 1));
  auto d3 = decode_FV(D({{0, 0}, {1, 0}}, {{0, 0}}), SampleSequence::uniform(3));
  CHECK(signals_equal(d3, delta_signal(3)));
  CHECK(agree_on_grid(d3, delta_signal(3), 12));
}

TEST_CASE("codec roundtrip") {
  std::mt19937 rng(1);
  for (int i = 0; i < 300; ++i) {
    auto s = random_signal(rng);
    auto samples = random_grid_samples(rng);
    auto w = encode_D(s, samples);
    auto back = decode_FV(w, samples);
    CHECK(signals_equal(back, s));
    CHECK(agree_on_grid(back, s, s.settle_time() + 6));
  }
}

TEST_CASE("signals_equal against grid evaluation") {
  std::mt19937 rng(2);
  int equal = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = random_signal(rng);
    auto b = i % 3 ? random_signal(rng) : simplify(a);
    bool eq = signals_equal(a, b);
    equal += eq;
    // all breakpoints lie on the 1/4 grid and periods divide 12
    CHECK(eq == agree_on_grid(a, b, std::max(a.settle_time(), b.settle_time()) + 26));
  }
  CHECK(equal > 100);
}

TEST_CASE("stuttering") {
  CHECK(is_stuttering_free(D({}, {{0, 0}})));
  CHECK_FALSE(is_stuttering_free(D({{0, 1}, {1, 1}, {0, 0}}, {{0, 0}})));
  CHECK(is_stuttering_free(D({{0, 0}, {1, 0}}, {{0, 0}})));
  CHECK(stutter_normalize(D({{0, 0}, {1, 0}}, {{0, 0}})) == D({{0, 0}, {1, 0}}, {{0, 0}}));
  CHECK(stutter_normalize(D({{0, 0}, {0, 0}, {1, 0}}, {{0, 0}})) == D({{0, 0}, {1, 0}}, {{0, 0}}));
  CHECK(stutter_normalize(D({}, {{0, 1}, {1, 1}})) == D({}, {{0, 1}}));

  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto raw = random_lasso(rng, 4, 4, 4);
    auto w = map_letters(raw, [](int l) { return DLetter{l / 2, l % 2}; });
    auto n = stutter_normalize(w);
    CHECK(is_stuttering_free(n));
    CHECK(stutter_normalize(n) == n);
    // same signal under a common sample sequence
    auto samples = SampleSequence::uniform(1);
    CHECK(signals_equal(decode_FV(w, samples), decode_FV(w, samples)));
  }
}

TEST_CASE("different samplings normalize to the same word") {
  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto s = random_signal(rng);
    auto a = encode_D(s, SampleSequence::uniform(Rational(1, 4)));
    auto b = encode_D(s, random_grid_samples(rng));
    CHECK(stutter_normalize(a) == stutter_normalize(b));
  }
}

TEST_CASE("reparameterization") {
  Reparam id({{0, 0}, {1, 1}});
  auto d1 = delta_signal(1);
  CHECK(signals_equal(reparameterize(d1, id), d1));
  Reparam twice({{0, 0}, {1, 2}});
  CHECK(signals_equal(reparameterize(d1, twice), delta_signal(2)));
  auto one = SampleSequence::uniform(1);
  CHECK(encode_D(reparameterize(d1, twice), reparameterize(one, twice)) == encode_D(d1, one));
  CHECK_THROWS_AS(Reparam({{0, 0}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Reparam({{1, 0}, {2, 1}}), DomainError);

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> k(1, 8);
  for (int i = 0; i < 100; ++i) {
    auto s = random_signal(rng);
    std::vector<std::pair<Rational, Rational>> knots{{0, 0}};
    for (int j = 0; j < 3; ++j)
      knots.emplace_back(knots.back().first + Rational(k(rng), 4),
                         knots.back().second + Rational(k(rng), 3));
    Reparam rho(knots);
    auto r = reparameterize(s, rho);
    for (Rational t = 0; t < 10; t += Rational(1, 8))
      CHECK(value_at(r, rho(t)) == value_at(s, t));
    CHECK(jump_points(r, rho(10)).size() == jump_points(s, 10).size());
    auto samples = random_grid_samples(rng);
    CHECK(encode_D(r, reparameterize(samples, rho)) == encode_D(s, samples));
  }
}

TEST_CASE("fixture G") {
  auto g0 = fixture_G(FVSignal::constant(0));
  CHECK(value_at(g0, 0) == 0);
  CHECK(value_at(g0, R("1/1000")) == 1);
  CHECK(value_at(g0, 50) == 1);

  // y = 1 on (0, 2), then 0
  FVSignal y({Piece{0, 0, 1}, Piece{2, 0, 0}});
  auto g = fixture_G(y);
  CHECK(value_at(g, 0) == 0);
  CHECK(value_at(g, 1) == 0);
  CHECK(value_at(g, R("5/2")) == 1);
  // at t_0 itself y is still constant on (0, t_0)
  CHECK(value_at(g, 2) == 0);

  auto d1 = fixture_G(delta_signal(1));
  CHECK(value_at(d1, R("1/2")) == 1);
  CHECK(value_at(d1, 1) == 1);
  CHECK(value_at(d1, 2) == 1);
}
