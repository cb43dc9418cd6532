#pragma once

#include "automaton.hpp"
#include "state_monoid.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace chronosynth {

enum class Semantics { rc, fv };

// fresh: the start node, I picks the first letter.
// o_pair (q, a): O moves; RC picks a block u, FV picks the point output.
// o_dag (q, dag): I picks the letter holding after the current instant.
// i_dag (q, dag, a): O picks a block u (FV only).
// i_up (q, a, u): I accepts or interrupts.
enum class NodeKind { fresh, o_pair, o_dag, i_dag, i_up };
enum class EdgeSize { plain, small, big };
enum class Interrupt { none, left, right };

constexpr int kPlayerO = 0;
constexpr int kPlayerI = 1;

struct ArenaNode {
  NodeKind kind = NodeKind::fresh;
  int q = -1;
  int a = -1;
  int u = -1; // index into Arena::up
  int owner = kPlayerI;
  int priority = -1; // inherited from q in FV arenas, -1 otherwise
};

struct ArenaEdge {
  int from = 0;
  int to = 0;
  EdgeSize size = EdgeSize::plain;
  int label = -1; // interrupt edges: max priority over u(1..n)
  Interrupt interrupt = Interrupt::none;
  int position = 0; // least n realising an interrupt edge
  int letter = -1;  // the output letter of an FV point move
  // Priority used for cycle analysis: the label, folded with the source
  // node priority in FV arenas; -1 when neither applies.
  int priority = -1;
};

struct UPInfo {
  UPMember member;
  LassoWord<int> word;   // u(1) u(2) ... as a 0-based lasso
  int max_priority = 0;  // over occ(u)
  int period_priority = 0;
  std::uint64_t flags = 0; // letters a for which u is an E_a-path

  int state_at(std::size_t n) const { return word.at(n - 1); } // n >= 1
  std::size_t lag() const { return word.prefix().size(); }
  std::size_t period() const { return word.period().size(); }
};

struct Arena {
  Semantics semantics = Semantics::rc;
  ParityAutomaton automaton; // the view the arena is built over
  std::vector<UPInfo> up;
  std::size_t d_Q = 0;
  std::vector<ArenaNode> nodes;
  std::vector<ArenaEdge> edges;
  std::vector<std::vector<int>> out; // edge indices per node
  std::vector<bool> final;           // i_up nodes in F
  int root = 0;

  int find(NodeKind kind, int q, int a = -1, int u = -1) const; // -1 if absent
  std::string node_name(int v) const;
  std::string up_name(int u) const;
  std::size_t num_nodes() const { return nodes.size(); }
  bool is_o_node(int v) const { return nodes[static_cast<std::size_t>(v)].owner == kPlayerO; }

  std::map<std::tuple<int, int, int, int>, int> index;
};

// The automaton view for a semantics: rc_view or fv_view of the spec.
ParityAutomaton arena_view(const ParityAutomaton& spec, Semantics s);

// Class table restricted to strings that are paths for some input letter.
ClassTable arena_class_table(const ParityAutomaton& view, std::size_t cap = kDefaultSignatureCap);

Arena build_rc_arena(const ParityAutomaton& a, const ClassTable& table,
                     const std::vector<UPMember>& up);
Arena build_fv_arena(const ParityAutomaton& a, const ClassTable& table,
                     const std::vector<UPMember>& up);

// Spec to arena in one go: view, class table, UP, arena.
Arena build_arena(const ParityAutomaton& spec, Semantics s,
                  std::size_t cap = kDefaultSignatureCap);

std::string export_dot(const Arena& arena);
nlohmann::json arena_to_json(const Arena& arena);

const char* to_string(NodeKind k);
const char* to_string(EdgeSize s);
const char* to_string(Interrupt k);
const char* to_string(Semantics s);

} // namespace chronosynth
