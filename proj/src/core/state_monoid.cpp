#include "state_monoid.hpp"

#include <algorithm>

namespace chronosynth {

namespace {

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

// Restricts per-letter flags to the letters a with E_a(from, to).
std::uint64_t junction(const PathContext& ctx, std::uint64_t flags, int from, int to) {
  for (std::size_t a = 0; a < ctx.num_letters; ++a)
    if (((flags >> a) & 1U) && !ctx.enabled(a, from, to))
      flags &= ~(std::uint64_t{1} << a);
  return flags;
}

} // namespace

bool StateSignature::has_pair(int q, std::uint64_t before) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(q, before));
}

std::size_t SignatureHash::operator()(const StateSignature& s) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(s.occ * 0x9e3779b97f4a7c15ULL ^ s.flags);
  auto mix = [&h](std::uint64_t x) { h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b9 + (h << 6) + (h >> 2); };
  mix(static_cast<std::uint64_t>(s.first) << 32 | static_cast<std::uint32_t>(s.last));
  for (const auto& [q, m] : s.pairs) {
    mix(static_cast<std::uint64_t>(q));
    mix(m);
  }
  return h;
}

StateSignature signature_of(const std::vector<int>& u, const PathContext& ctx) {
  if (u.empty())
    throw DomainError("signature of the empty string");
  StateSignature s;
  s.first = u.front();
  s.last = u.back();
  s.flags = path_flags(u, ctx);
  for (int q : u) {
    if (q < 0 || static_cast<std::size_t>(q) >= ctx.num_states)
      throw DomainError("state out of range");
    s.pairs.emplace_back(q, s.occ);
    s.occ |= bit(q);
  }
  std::sort(s.pairs.begin(), s.pairs.end());
  s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());
  return s;
}

StateSignature product(const StateSignature& s1, const StateSignature& s2,
                       const PathContext& ctx) {
  StateSignature s;
  s.first = s1.first;
  s.last = s2.last;
  s.occ = s1.occ | s2.occ;
  s.flags = junction(ctx, s1.flags & s2.flags, s1.last, s2.first);
  s.pairs.reserve(s1.pairs.size() + s2.pairs.size());
  std::vector<std::pair<int, std::uint64_t>> shifted;
  shifted.reserve(s2.pairs.size());
  for (const auto& [q, m] : s2.pairs)
    shifted.emplace_back(q, m | s1.occ);
  std::sort(shifted.begin(), shifted.end());
  std::set_union(s1.pairs.begin(), s1.pairs.end(), shifted.begin(), shifted.end(),
                 std::back_inserter(s.pairs));
  s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());
  return s;
}

bool absorbs(const StateSignature& s1, const StateSignature& s2, const PathContext& ctx) {
  if (s1.last != s2.last || (s2.occ & ~s1.occ) != 0)
    return false;
  if (junction(ctx, s1.flags & s2.flags, s1.last, s2.first) != s1.flags)
    return false;
  for (const auto& [q, m] : s2.pairs)
    if (!s1.has_pair(q, m | s1.occ))
      return false;
  return true;
}

bool is_idempotent(const StateSignature& s, const PathContext& ctx) { return absorbs(s, s, ctx); }

bool naive_equiv(const std::vector<int>& u, const std::vector<int>& v, const PathContext& ctx) {
  if (u.empty() || v.empty())
    throw DomainError("naive_equiv needs nonempty strings");
  if (u.front() != v.front() || u.back() != v.back())
    return false;
  auto before = [](const std::vector<int>& w, std::size_t m) {
    std::set<int> s(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
    return s;
  };
  auto covered = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (std::size_t m = 0; m < x.size(); ++m) {
      bool found = false;
      for (std::size_t n = 0; n < y.size() && !found; ++n)
        found = x[m] == y[n] && before(x, m) == before(y, n);
      if (!found)
        return false;
    }
    return true;
  };
  if (!covered(u, v) || !covered(v, u))
    return false;
  for (std::size_t a = 0; a < ctx.num_letters; ++a) {
    auto is_path = [&](const std::vector<int>& w) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!ctx.enabled(a, w[i], w[i + 1]))
          return false;
      return true;
    };
    if (is_path(u) != is_path(v))
      return false;
  }
  return true;
}

std::optional<int> ClassTable::find(const StateSignature& s) const {
  auto it = index.find(s);
  if (it == index.end())
    return std::nullopt;
  return it->second;
}

ClassTable build_class_table(const PathContext& ctx, std::size_t cap, bool paths_only) {
  if (ctx.num_states == 0)
    throw DomainError("empty state space");
  ClassTable t;
  t.ctx = ctx;
  t.paths_only = paths_only;
  std::vector<StateSignature> gens;
  for (std::size_t q = 0; q < ctx.num_states; ++q)
    gens.push_back(signature_of({static_cast<int>(q)}, ctx));
  auto add = [&](StateSignature s, std::vector<int> w) {
    if (paths_only && s.flags == 0)
      return;
    if (t.index.count(s))
      return;
    if (t.signatures.size() >= cap)
      throw ResourceError("signature cap of " + std::to_string(cap) + " exceeded",
                          t.signatures.size());
    t.index.emplace(s, static_cast<int>(t.signatures.size()));
    t.signatures.push_back(std::move(s));
    t.witnesses.push_back(std::move(w));
  };
  for (std::size_t q = 0; q < ctx.num_states; ++q)
    add(gens[q], {static_cast<int>(q)});
  for (std::size_t i = 0; i < t.signatures.size(); ++i)
    for (std::size_t q = 0; q < ctx.num_states; ++q) {
      StateSignature s = product(t.signatures[i], gens[q], ctx);
      if (t.index.count(s) || (paths_only && s.flags == 0))
        continue;
      std::vector<int> w = t.witnesses[i];
      w.push_back(static_cast<int>(q));
      add(std::move(s), std::move(w));
    }
  for (std::size_t i = 0; i < t.signatures.size(); ++i) {
    t.d_Q = std::max(t.d_Q, t.witnesses[i].size());
    if (is_idempotent(t.signatures[i], ctx))
      t.idempotents.push_back(static_cast<int>(i));
  }
  return t;
}

ClassTable build_class_table(const ParityAutomaton& a, std::size_t cap) {
  return build_class_table(a.path_context(), cap);
}

std::vector<UPMember> build_UP(const ClassTable& table) {
  std::vector<UPMember> out;
  for (std::size_t i = 0; i < table.size(); ++i)
    for (int j : table.idempotents)
      if (absorbs(table.signatures[i], table.signatures[static_cast<std::size_t>(j)], table.ctx))
        out.push_back(UPMember{static_cast<int>(i), j, table.witnesses[i],
                               table.witnesses[static_cast<std::size_t>(j)]});
  return out;
}

RamseyFactorization ramsey_factorize(const LassoWord<int>& w, const PathContext& ctx) {
  StateSignature v = signature_of(w.period(), ctx);
  StateSignature power = v;
  RamseyFactorization f;
  for (f.power = 1; !is_idempotent(power, ctx); ++f.power) {
    if (f.power > 1000000)
      throw ResourceError("no idempotent power found", f.power);
    power = product(power, v, ctx);
  }
  f.u0 = w.prefix();
  for (std::size_t k = 0; k < f.power; ++k) {
    f.u0.insert(f.u0.end(), w.period().begin(), w.period().end());
    f.e.insert(f.e.end(), w.period().begin(), w.period().end());
  }
  for (std::size_t b = 0; b < 3; ++b)
    f.block_starts.push_back(f.u0.size() + b * f.e.size());
  return f;
}

} // namespace chronosynth
