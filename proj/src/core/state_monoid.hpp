#pragma once

#include "automaton.hpp"
#include "omega_word.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace chronosynth {

// Canonical invariant of a class of the state-string congruence: first and
// last state, the set of (u[m], states of u[0,m)) pairs, the occurring states,
// and one bit per input letter a telling whether u is an E_a-path.
struct StateSignature {
  int first = 0;
  int last = 0;
  std::vector<std::pair<int, std::uint64_t>> pairs; // sorted, unique
  std::uint64_t occ = 0;
  std::uint64_t flags = 0;

  bool has_pair(int q, std::uint64_t before) const;

  friend bool operator==(const StateSignature& a, const StateSignature& b) {
    return a.first == b.first && a.last == b.last && a.occ == b.occ && a.flags == b.flags &&
           a.pairs == b.pairs;
  }
  friend bool operator!=(const StateSignature& a, const StateSignature& b) { return !(a == b); }
};

struct SignatureHash {
  std::size_t operator()(const StateSignature& s) const noexcept;
};

StateSignature signature_of(const std::vector<int>& u, const PathContext& ctx);
StateSignature product(const StateSignature& s1, const StateSignature& s2,
                       const PathContext& ctx);
bool is_idempotent(const StateSignature& s, const PathContext& ctx);
// s1 . s2 == s1, without building the product.
bool absorbs(const StateSignature& s1, const StateSignature& s2, const PathContext& ctx);

// Literal check of the four defining conditions, by double loops over
// positions. Test oracle for signature equality.
bool naive_equiv(const std::vector<int>& u, const std::vector<int>& v, const PathContext& ctx);

constexpr std::size_t kDefaultSignatureCap = 200000;

struct ClassTable {
  PathContext ctx;
  // Breadth-first order; witnesses are shortest, lexicographically least.
  std::vector<StateSignature> signatures;
  std::vector<std::vector<int>> witnesses;
  std::vector<int> idempotents;
  std::size_t d_Q = 0;
  bool paths_only = false;

  std::optional<int> find(const StateSignature& s) const;
  std::size_t size() const noexcept { return signatures.size(); }

  std::unordered_map<StateSignature, int, SignatureHash> index;
};

// Closure of the length-1 signatures under right multiplication by single
// states. With paths_only, strings that are E_a-paths for no input letter a
// are discarded (their extensions never are paths either).
ClassTable build_class_table(const PathContext& ctx, std::size_t cap = kDefaultSignatureCap,
                             bool paths_only = false);
ClassTable build_class_table(const ParityAutomaton& a, std::size_t cap = kDefaultSignatureCap);

// lag . period^omega with sig(period) idempotent and sig(lag).sig(period) = sig(lag).
struct UPMember {
  int lag_class = 0;
  int period_class = 0;
  std::vector<int> lag;
  std::vector<int> period;

  LassoWord<int> word() const { return LassoWord<int>(lag, period); }
};

std::vector<UPMember> build_UP(const ClassTable& table);

struct RamseyFactorization {
  std::vector<int> u0;
  std::vector<int> e;
  std::size_t power = 0; // e = period^power
  // Positions where the first blocks of e start.
  std::vector<std::size_t> block_starts;
};

RamseyFactorization ramsey_factorize(const LassoWord<int>& w, const PathContext& ctx);

} // namespace chronosynth
