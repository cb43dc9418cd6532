#include "arena.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chronosynth {

const char* to_string(NodeKind k) {
  switch (k) {
  case NodeKind::fresh: return "fresh";
  case NodeKind::o_pair: return "o_pair";
  case NodeKind::o_dag: return "o_dag";
  case NodeKind::i_dag: return "i_dag";
  case NodeKind::i_up: return "i_up";
  }
  return "?";
}

const char* to_string(EdgeSize s) {
  switch (s) {
  case EdgeSize::plain: return "plain";
  case EdgeSize::small: return "small";
  case EdgeSize::big: return "big";
  }
  return "?";
}

const char* to_string(Interrupt k) {
  switch (k) {
  case Interrupt::none: return "none";
  case Interrupt::left: return "left";
  case Interrupt::right: return "right";
  }
  return "?";
}

const char* to_string(Semantics s) { return s == Semantics::rc ? "rc" : "fv"; }

int Arena::find(NodeKind kind, int q, int a, int u) const {
  auto it = index.find({static_cast<int>(kind), q, a, u});
  return it == index.end() ? -1 : it->second;
}

std::string Arena::up_name(int u) const {
  const auto& w = up[static_cast<std::size_t>(u)].word;
  return format_lasso(name_lasso(w, automaton.state_names()));
}

std::string Arena::node_name(int v) const {
  const auto& n = nodes[static_cast<std::size_t>(v)];
  auto q = [&] { return automaton.state_names()[static_cast<std::size_t>(n.q)]; };
  auto a = [&] { return automaton.sigma_in()[static_cast<std::size_t>(n.a)]; };
  switch (n.kind) {
  case NodeKind::fresh: return "new";
  case NodeKind::o_pair: return "(" + q() + "," + a() + ")";
  case NodeKind::o_dag: return "(" + q() + ",dag)";
  case NodeKind::i_dag: return "(" + q() + ",dag," + a() + ")";
  case NodeKind::i_up: return "(" + q() + "," + a() + ",u" + std::to_string(n.u) + ")";
  }
  return "?";
}

ParityAutomaton arena_view(const ParityAutomaton& spec, Semantics s) {
  return s == Semantics::rc ? rc_view(spec) : fv_view(spec);
}

ClassTable arena_class_table(const ParityAutomaton& view, std::size_t cap) {
  return build_class_table(view.path_context(), cap, true);
}

namespace {

bool same_context(const PathContext& x, const PathContext& y) {
  return x.num_states == y.num_states && x.num_letters == y.num_letters && x.edges == y.edges;
}

std::vector<UPInfo> up_info(const ParityAutomaton& a, const std::vector<UPMember>& up) {
  PathContext ctx = a.path_context();
  std::vector<UPInfo> out;
  for (const auto& m : up) {
    UPInfo info{m, m.word(), 0, 0, 0};
    for (int q : m.lag)
      info.max_priority = std::max(info.max_priority, a.priority(q));
    for (int q : m.period) {
      info.max_priority = std::max(info.max_priority, a.priority(q));
      info.period_priority = std::max(info.period_priority, a.priority(q));
    }
    info.flags = lasso_path_flags(info.word, ctx);
    out.push_back(std::move(info));
  }
  return out;
}

class Builder {
public:
  Builder(const ParityAutomaton& a, const ClassTable& table, const std::vector<UPMember>& up,
          Semantics s) {
    if (a.convention() != Convention::max_even)
      throw DomainError("arena construction expects a max_even automaton");
    if (!same_context(a.path_context(), table.ctx))
      throw DomainError("class table was built for a different automaton");
    ar_.semantics = s;
    ar_.automaton = a;
    ar_.up = up_info(a, up);
    ar_.d_Q = table.d_Q;
    ctx_ = a.path_context();
  }

  Arena run() {
    ar_.root = node(NodeKind::fresh, -1);
    for (std::size_t v = 0; v < ar_.nodes.size(); ++v)
      expand(static_cast<int>(v));
    ar_.final.assign(ar_.nodes.size(), false);
    for (std::size_t v = 0; v < ar_.nodes.size(); ++v) {
      const auto& n = ar_.nodes[v];
      if (n.kind == NodeKind::i_up)
        ar_.final[v] = ar_.up[static_cast<std::size_t>(n.u)].period_priority % 2 == 0;
    }
    return std::move(ar_);
  }

private:
  bool fv() const { return ar_.semantics == Semantics::fv; }

  int node(NodeKind kind, int q, int a = -1, int u = -1) {
    auto key = std::make_tuple(static_cast<int>(kind), q, a, u);
    auto it = ar_.index.find(key);
    if (it != ar_.index.end())
      return it->second;
    ArenaNode n{kind, q, a, u, kPlayerI, -1};
    if (kind == NodeKind::o_pair || kind == NodeKind::i_dag)
      n.owner = kPlayerO;
    if (fv() && q >= 0)
      n.priority = ar_.automaton.priority(q);
    int id = static_cast<int>(ar_.nodes.size());
    ar_.nodes.push_back(n);
    ar_.out.emplace_back();
    ar_.index.emplace(key, id);
    return id;
  }

  void edge(ArenaEdge e) {
    int src = ar_.nodes[static_cast<std::size_t>(e.from)].priority;
    e.priority = fv() ? std::max(e.label, src) : e.label;
    for (int k : ar_.out[static_cast<std::size_t>(e.from)]) {
      const auto& o = ar_.edges[static_cast<std::size_t>(k)];
      if (o.to == e.to && o.size == e.size && o.label == e.label && o.interrupt == e.interrupt)
        return;
    }
    ar_.out[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(ar_.edges.size()));
    ar_.edges.push_back(e);
  }

  // UP members that are E_a-paths leaving q.
  std::vector<int> blocks(int q, int a) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < ar_.up.size(); ++k) {
      const auto& u = ar_.up[k];
      if (((u.flags >> a) & 1U) && ctx_.enabled(static_cast<std::size_t>(a), q, u.state_at(1)))
        out.push_back(static_cast<int>(k));
    }
    return out;
  }

  void expand(int v) {
    ArenaNode n = ar_.nodes[static_cast<std::size_t>(v)];
    const auto& A = ar_.automaton;
    int ni = static_cast<int>(A.num_inputs());
    switch (n.kind) {
    case NodeKind::fresh:
      for (int a = 0; a < ni; ++a)
        edge({v, node(NodeKind::o_pair, A.initial(), a)});
      break;
    case NodeKind::o_pair:
      if (!fv()) {
        for (int u : blocks(n.q, n.a))
          edge({v, node(NodeKind::i_up, n.q, n.a, u)});
      } else {
        for (int b = 0; b < static_cast<int>(A.num_outputs()); ++b) {
          ArenaEdge e{v, node(NodeKind::o_dag, A.next(n.q, n.a, b))};
          e.letter = b;
          edge(e);
        }
      }
      break;
    case NodeKind::o_dag:
      for (int a = 0; a < ni; ++a)
        edge({v, node(NodeKind::i_dag, n.q, a)});
      break;
    case NodeKind::i_dag:
      for (int u : blocks(n.q, n.a))
        edge({v, node(NodeKind::i_up, n.q, n.a, u)});
      break;
    case NodeKind::i_up:
      interrupts(v, n);
      break;
    }
  }

  void interrupts(int v, const ArenaNode& n) {
    const auto& u = ar_.up[static_cast<std::size_t>(n.u)];
    const auto& A = ar_.automaton;
    std::size_t periods = fv() ? 2 : 1;
    std::size_t last = u.lag() + periods * u.period();
    int running = -1;
    for (std::size_t pos = 1; pos <= last; ++pos) {
      int q = u.state_at(pos);
      running = std::max(running, A.priority(q));
      bool small = pos <= u.lag();
      Interrupt kind = !fv() || pos % 2 == 1 ? Interrupt::left : Interrupt::right;
      for (int b = 0; b < static_cast<int>(A.num_inputs()); ++b) {
        if (b == n.a)
          continue;
        ArenaEdge e;
        e.from = v;
        e.to = node(kind == Interrupt::left ? NodeKind::o_pair : NodeKind::i_dag, q, b);
        e.size = small ? EdgeSize::small : EdgeSize::big;
        e.label = small ? running : u.max_priority;
        e.interrupt = kind;
        e.position = static_cast<int>(pos);
        edge(e);
      }
    }
  }

  Arena ar_;
  PathContext ctx_;
};

} // namespace

Arena build_rc_arena(const ParityAutomaton& a, const ClassTable& table,
                     const std::vector<UPMember>& up) {
  return Builder(a, table, up, Semantics::rc).run();
}

Arena build_fv_arena(const ParityAutomaton& a, const ClassTable& table,
                     const std::vector<UPMember>& up) {
  return Builder(a, table, up, Semantics::fv).run();
}

Arena build_arena(const ParityAutomaton& spec, Semantics s, std::size_t cap) {
  ParityAutomaton view = arena_view(spec, s);
  ClassTable table = arena_class_table(view, cap);
  auto up = build_UP(table);
  return s == Semantics::rc ? build_rc_arena(view, table, up) : build_fv_arena(view, table, up);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string export_dot(const Arena& ar) {
  std::ostringstream os;
  os << "digraph arena {\n";
  if (ar.nodes.empty()) {
    os << "}\n";
    return os.str();
  }
  os << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < ar.nodes.size(); ++v) {
    const auto& n = ar.nodes[v];
    os << "  n" << v << " [label=\"" << dot_escape(ar.node_name(static_cast<int>(v)));
    if (n.priority >= 0)
      os << " pr=" << n.priority;
    os << "\", shape=" << (n.owner == kPlayerO ? "box" : "ellipse");
    if (ar.final[v])
      os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& e : ar.edges) {
    os << "  n" << e.from << " -> n" << e.to;
    if (e.size == EdgeSize::plain) {
      os << ";\n";
      continue;
    }
    os << " [label=\"" << e.label << (e.size == EdgeSize::big ? " big" : " small");
    if (ar.semantics == Semantics::fv)
      os << " " << to_string(e.interrupt);
    os << "\"";
    if (e.size == EdgeSize::big)
      os << ", style=bold, color=red";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json arena_to_json(const Arena& ar) {
  nlohmann::json j;
  j["semantics"] = to_string(ar.semantics);
  j["d_Q"] = ar.d_Q;
  j["root"] = ar.root;
  auto& up = j["up"] = nlohmann::json::array();
  for (std::size_t k = 0; k < ar.up.size(); ++k)
    up.push_back({{"id", k},
                  {"word", ar.up_name(static_cast<int>(k))},
                  {"max_priority", ar.up[k].max_priority},
                  {"period_priority", ar.up[k].period_priority}});
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (std::size_t v = 0; v < ar.nodes.size(); ++v) {
    const auto& n = ar.nodes[v];
    nlohmann::json jn{{"id", v},
                      {"kind", to_string(n.kind)},
                      {"name", ar.node_name(static_cast<int>(v))},
                      {"owner", n.owner == kPlayerO ? "O" : "I"}};
    if (n.priority >= 0)
      jn["priority"] = n.priority;
    if (n.kind == NodeKind::i_up)
      jn["final"] = static_cast<bool>(ar.final[v]);
    nodes.push_back(jn);
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : ar.edges) {
    nlohmann::json je{{"from", e.from}, {"to", e.to}, {"size", to_string(e.size)}};
    if (e.size != EdgeSize::plain) {
      je["label"] = e.label;
      je["position"] = e.position;
      if (ar.semantics == Semantics::fv)
        je["interrupt"] = to_string(e.interrupt);
    }
    if (e.priority >= 0)
      je["priority"] = e.priority;
    if (e.letter >= 0)
      je["output"] = ar.automaton.sigma_out()[static_cast<std::size_t>(e.letter)];
    edges.push_back(je);
  }
  return j;
}

} // namespace chronosynth
