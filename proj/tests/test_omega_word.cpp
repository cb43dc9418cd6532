#include "omega_word.hpp"

#include <doctest.h>

#include <random>

using namespace chronosynth;

namespace {

LassoWord<std::string> L(const char* s) { return parse_lasso(s); }

std::string unfold_text(const LassoWord<std::string>& w, std::size_t n) {
  std::string out;
  for (const auto& x : w.unfold(n))
    out += x;
  return out;
}

LassoWord<int> random_lasso(std::mt19937& rng, int letters, int max_u, int max_v) {
  std::uniform_int_distribution<int> lu(0, max_u), lv(1, max_v), l(0, letters - 1);
  std::vector<int> u(static_cast<std::size_t>(lu(rng))), v(static_cast<std::size_t>(lv(rng)));
  for (auto& x : u)
    x = l(rng);
  for (auto& x : v)
    x = l(rng);
  return LassoWord<int>(u, v);
}

// Signature of the pair-set condition computed by a plain double loop over a
// long unfolding, without the u.v.v shortcut.
std::set<std::pair<int, std::uint64_t>> pairs_by_unrolling(const LassoWord<int>& w) {
  std::set<std::pair<int, std::uint64_t>> out;
  std::size_t n = 4 * (w.prefix().size() + w.period().size()) + 8;
  auto s = w.unfold(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::uint64_t before = 0;
    for (std::size_t k = 0; k < m; ++k)
      before |= std::uint64_t{1} << s[k];
    out.emplace(s[m], before);
  }
  return out;
}

} // namespace

TEST_CASE("parse and format") {
  auto w = L("ab(ba)^w");
  CHECK(w.prefix() == std::vector<std::string>{"a", "b"});
  CHECK(w.period() == std::vector<std::string>{"b", "a"});
  CHECK(format_lasso(w) == "ab(ba)^w");
  auto s = L("q0 q1 (q2 q3)^w");
  CHECK(s.prefix() == std::vector<std::string>{"q0", "q1"});
  CHECK(format_lasso(s) == "q0 q1 (q2 q3)^w");
  CHECK(format_lasso(L("(a)^omega")) == "(a)^w");
  CHECK_THROWS_AS(L("ab"), ParseError);
  CHECK_THROWS_AS(L("a()^w"), ParseError);
  CHECK_THROWS_AS(L("a(b)"), ParseError);
}

TEST_CASE("normalize") {
  CHECK(format_lasso(normalize(L("ab(abab)^w"))) == "(ab)^w");
  auto n = normalize(L("a(bb)^w"));
  CHECK(format_lasso(n) == "a(b)^w");
  CHECK(unfold_text(n, 20) == unfold_text(L("a(bb)^w"), 20));
  CHECK(normalize(L("a(b)^w")) == L("a(b)^w"));
}

TEST_CASE("normal forms decide equality of omega-words") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto a = random_lasso(rng, 2, 3, 3);
    auto b = random_lasso(rng, 2, 3, 3);
    auto na = normalize(a);
    CHECK(normalize(na) == na);
    CHECK(na.unfold(30) == a.unfold(30));
    // words of these sizes agree iff they agree on a 30-letter window
    bool same = a.unfold(30) == b.unfold(30);
    CHECK(omega_equal(a, b) == same);
  }
}

TEST_CASE("inf sets") {
  CHECK(inf_set(L("a(b)^w")) == std::set<std::string>{"b"});
  CHECK(inf_set(L("(abc)^w")) == std::set<std::string>{"a", "b", "c"});
  auto w = L("ab(ca)^w");
  CHECK(inf_set(w) == std::set<std::string>{"c", "a"});
  auto u = w.unfold(30);
  CHECK(std::set<std::string>(u.begin() + 10, u.end()) == inf_set(w));
}

TEST_CASE("zip aligns prefixes and periods") {
  LassoWord<int> a({1}, {0, 1});
  LassoWord<int> b({}, {2, 3, 4});
  auto z = zip(a, b);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(z.at(i).first == a.at(i));
    CHECK(z.at(i).second == b.at(i));
  }
}

TEST_CASE("prefix pairs stabilize within u.v.v") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto w = random_lasso(rng, 3, 3, 3);
    CHECK(prefix_pairs(w) == pairs_by_unrolling(w));
  }
}

TEST_CASE("omega equivalence examples") {
  auto ctx = PathContext::complete(2, 1);
  // states p=0, q=1
  LassoWord<int> qp({1}, {0});
  LassoWord<int> qqp({1, 1}, {0});
  CHECK(omega_equivalent(qp, qp, ctx));
  CHECK_FALSE(omega_equivalent(qp, qqp, ctx));
  CHECK(prefix_pairs(qp) == std::set<std::pair<int, std::uint64_t>>{{1, 0}, {0, 2}, {0, 3}});
  LassoWord<int> pq({}, {0, 1});
  LassoWord<int> p_qp({0}, {1, 0});
  CHECK(omega_equivalent(pq, p_qp, ctx));
}

TEST_CASE("omega equivalence is an equivalence relation") {
  std::mt19937 rng(5);
  PathContext ctx;
  ctx.num_states = 3;
  ctx.num_letters = 2;
  ctx.edges = {{0b011, 0b110, 0b100}, {0b111, 0b001, 0b101}};
  std::vector<LassoWord<int>> sample;
  for (int i = 0; i < 120; ++i)
    sample.push_back(random_lasso(rng, 3, 2, 2));
  std::size_t n = sample.size();
  std::vector<std::vector<char>> eq(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      eq[i][j] = omega_equivalent(sample[i], sample[j], ctx);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(eq[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(eq[i][j] == eq[j][i]);
      if (eq[i][j])
        for (std::size_t k = 0; k < n; ++k)
          if (eq[j][k])
            CHECK(eq[i][k]);
    }
  }
}

TEST_CASE("path flags") {
  PathContext ctx;
  ctx.num_states = 2;
  ctx.num_letters = 2;
  // letter 0 allows only self loops, letter 1 only swaps
  ctx.edges = {{0b01, 0b10}, {0b10, 0b01}};
  CHECK(path_flags({0}, ctx) == 0b11);
  CHECK(path_flags({0, 0, 0}, ctx) == 0b01);
  CHECK(path_flags({0, 1, 0}, ctx) == 0b10);
  CHECK(path_flags({0, 1, 1}, ctx) == 0);
  CHECK(lasso_path_flags(LassoWord<int>({}, {0}), ctx) == 0b01);
  CHECK(lasso_path_flags(LassoWord<int>({}, {0, 1}), ctx) == 0b10);
}
