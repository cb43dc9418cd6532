#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace chronosynth {

// Ultimately periodic omega-word prefix . period^omega.
template <class T>
class LassoWord {
public:
  LassoWord() = default;
  LassoWord(std::vector<T> prefix, std::vector<T> period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty())
      throw DomainError("lasso word needs a nonempty period");
  }

  const std::vector<T>& prefix() const noexcept { return prefix_; }
  const std::vector<T>& period() const noexcept { return period_; }

  const T& at(std::size_t i) const {
    if (i < prefix_.size())
      return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  std::vector<T> unfold(std::size_t n) const {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(at(i));
    return out;
  }

  // Structural equality of the presentations; use omega_equal for equality
  // of the denoted words.
  friend bool operator==(const LassoWord& a, const LassoWord& b) {
    return a.prefix_ == b.prefix_ && a.period_ == b.period_;
  }
  friend bool operator<(const LassoWord& a, const LassoWord& b) {
    return std::tie(a.prefix_, a.period_) < std::tie(b.prefix_, b.period_);
  }

private:
  std::vector<T> prefix_;
  std::vector<T> period_{T{}};
};

// Minimal period, then minimal prefix. Two presentations denote the same
// omega-word iff their normal forms are identical.
template <class T>
LassoWord<T> normalize(const LassoWord<T>& w) {
  const auto& v = w.period();
  std::size_t n = v.size();
  std::size_t root = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      ok = v[i] == v[i - d];
    if (ok) {
      root = d;
      break;
    }
  }
  std::vector<T> period(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(root));
  std::vector<T> prefix = w.prefix();
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return LassoWord<T>(std::move(prefix), std::move(period));
}

template <class T>
bool omega_equal(const LassoWord<T>& a, const LassoWord<T>& b) {
  return normalize(a) == normalize(b);
}

template <class T>
std::set<T> inf_set(const LassoWord<T>& w) {
  return std::set<T>(w.period().begin(), w.period().end());
}

// Lasso of pairs built letterwise from two lassos.
template <class A, class B>
LassoWord<std::pair<A, B>> zip(const LassoWord<A>& a, const LassoWord<B>& b) {
  std::size_t pre = std::max(a.prefix().size(), b.prefix().size());
  std::size_t pa = a.period().size();
  std::size_t pb = b.period().size();
  std::size_t per = pa / std::gcd(pa, pb) * pb;
  std::vector<std::pair<A, B>> u, v;
  for (std::size_t i = 0; i < pre; ++i)
    u.emplace_back(a.at(i), b.at(i));
  for (std::size_t i = pre; i < pre + per; ++i)
    v.emplace_back(a.at(i), b.at(i));
  return LassoWord<std::pair<A, B>>(std::move(u), std::move(v));
}

template <class T, class F>
auto map_letters(const LassoWord<T>& w, F&& f) {
  using R = decltype(f(std::declval<const T&>()));
  std::vector<R> u, v;
  for (const auto& x : w.prefix())
    u.push_back(f(x));
  for (const auto& x : w.period())
    v.push_back(f(x));
  return LassoWord<R>(std::move(u), std::move(v));
}

// Textual syntax u(v)^w. Letters are single characters unless the text
// contains whitespace or commas, in which case those separate letter names:
// "ab(ba)^w" or "q0 q1 (q2 q3)^w".
LassoWord<std::string> parse_lasso(std::string_view text);
std::string format_lasso(const LassoWord<std::string>& w);

// Maps names to indices of `alphabet`; throws DomainError on unknown names.
LassoWord<int> index_lasso(const LassoWord<std::string>& w,
                           const std::vector<std::string>& alphabet);
LassoWord<std::string> name_lasso(const LassoWord<int>& w,
                                  const std::vector<std::string>& alphabet);

// E_a(q, q') for each input letter a: some output letter b moves q to q'
// while the input is held at a.
struct PathContext {
  std::size_t num_states = 0;
  std::size_t num_letters = 0;
  // edges[a][q] is the bitmask of E_a-successors of q.
  std::vector<std::vector<std::uint64_t>> edges;

  bool enabled(std::size_t a, int q, int next) const {
    return (edges[a][static_cast<std::size_t>(q)] >> next) & 1U;
  }
  std::uint64_t all_letters() const {
    return num_letters >= 64 ? ~std::uint64_t{0}
                             : (std::uint64_t{1} << num_letters) - 1;
  }
  static PathContext complete(std::size_t states, std::size_t letters);
};

// Per-letter flags: bit a is set iff the whole sequence is an E_a-path.
std::uint64_t path_flags(const std::vector<int>& states, const PathContext& ctx);

// (letter at m, set of letters in [0, m)) over every position m of an
// omega-word; exact from the finite unfolding prefix.period.period, since the
// prefix sets form a monotone chain that reaches occ(w) within prefix.period.
std::set<std::pair<int, std::uint64_t>> prefix_pairs(const LassoWord<int>& w);

// Equivalence on omega-strings of states: equal Inf sets, equal prefix-pair
// sets, equal per-letter run flags.
bool omega_equivalent(const LassoWord<int>& a, const LassoWord<int>& b,
                      const PathContext& ctx);

std::uint64_t lasso_path_flags(const LassoWord<int>& w, const PathContext& ctx);

} // namespace chronosynth
