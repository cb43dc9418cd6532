#include "game_sim.hpp"

#include <map>
#include <sstream>

namespace chronosynth {

namespace {

Integer ceil_rational(const Rational& r) { return -floor_div(-r, Rational(1)); }

std::size_t to_size(const Integer& n) { return n.convert_to<std::size_t>(); }

std::string compact_word(const Arena& ar, int u) {
  const auto& w = ar.up[static_cast<std::size_t>(u)].word;
  const auto& names = ar.automaton.state_names();
  std::string out;
  for (std::size_t k = 0; k < w.prefix().size(); ++k)
    out += (k ? "," : "") + names[static_cast<std::size_t>(w.prefix()[k])];
  out += "(";
  for (std::size_t k = 0; k < w.period().size(); ++k)
    out += (k ? "," : "") + names[static_cast<std::size_t>(w.period()[k])];
  return out + ")^w";
}

const ArenaNode& node_of(const Arena& ar, int v) { return ar.nodes[static_cast<std::size_t>(v)]; }
const ArenaEdge& edge_of(const Arena& ar, int e) { return ar.edges[static_cast<std::size_t>(e)]; }

} // namespace

int state_at(const UPInfo& u, const Integer& n) {
  if (n < 1)
    throw DomainError("block positions start at 1");
  if (n <= u.lag())
    return u.word.prefix()[to_size(n) - 1];
  Integer k = (n - u.lag() - 1) % u.period();
  return u.word.period()[to_size(k)];
}

const char* to_string(Reason r) {
  switch (r) {
  case Reason::accepted_final: return "accepted_final";
  case Reason::rejected_final: return "rejected_final";
  case Reason::zeno_O_win: return "zeno_O_win";
  case Reason::parity_even: return "parity_even";
  case Reason::parity_odd: return "parity_odd";
  }
  return "?";
}

Play::Play(const Arena& arena) : arena_(&arena), node_(arena.root) {
  if (arena.nodes.empty())
    throw DomainError("cannot play on an empty arena");
}

int Play::to_move() const { return node_of(*arena_, node_).owner; }

const UPInfo& Play::block() const {
  const auto& n = node_of(*arena_, node_);
  if (n.kind != NodeKind::i_up)
    throw IllegalMoveError("no block is in force at " + arena_->node_name(node_));
  return arena_->up[static_cast<std::size_t>(n.u)];
}

std::vector<std::string> Play::transcript() const {
  std::vector<std::string> out;
  for (const auto& s : trace_)
    out.push_back(s.line);
  return out;
}

void Play::traverse(int edge, TraceStep s) {
  s.edge = edge;
  trace_.push_back(std::move(s));
  if (edge >= 0)
    node_ = edge_of(*arena_, edge).to;
}

Rational Play::interrupt_time(const Integer& n, Interrupt side) const {
  if (arena_->semantics == Semantics::rc)
    return block_start_ + block_scale_ * Rational(n);
  Integer m = side == Interrupt::right ? Integer(n / 2) : Integer((n + 1) / 2);
  return block_start_ + block_scale_ * Rational(m);
}

std::pair<Integer, int> Play::resolve_interrupt(const IMove& m) const {
  const Arena& ar = *arena_;
  const auto& here = node_of(ar, node_);
  if (here.kind != NodeKind::i_up)
    throw IllegalMoveError("interrupts are only possible while a block runs");
  if (m.letter < 0 || m.letter >= static_cast<int>(ar.automaton.num_inputs()))
    throw IllegalMoveError("unknown input letter");
  if (m.letter == here.a)
    throw IllegalMoveError("an interrupt must change the input letter");
  if (m.time <= block_start_)
    throw IllegalMoveError("interrupt time " + to_string(m.time) +
                           " must exceed the current time " + to_string(block_start_));
  bool fv = ar.semantics == Semantics::fv;
  Interrupt side = m.side == Interrupt::none ? Interrupt::left : m.side;
  if (!fv && side != Interrupt::left)
    throw IllegalMoveError("right-continuous plays only have left discontinuities");
  Rational d = (m.time - block_start_) / block_scale_;
  Integer n;
  if (!fv) {
    n = ceil_rational(d);
  } else if (side == Interrupt::left) {
    n = 2 * ceil_rational(d) - 1;
  } else {
    if (!is_integer(d))
      throw IllegalMoveError("right discontinuities happen at block grid points t_i + k*scale");
    n = 2 * boost::multiprecision::numerator(d);
  }
  const auto& u = ar.up[static_cast<std::size_t>(here.u)];
  int q = state_at(u, n);
  bool small = n <= u.lag();
  int label = u.max_priority;
  if (small) {
    label = -1;
    for (std::size_t k = 1; k <= to_size(n); ++k)
      label = std::max(label, ar.automaton.priority(u.state_at(k)));
  }
  int target = ar.find(side == Interrupt::left ? NodeKind::o_pair : NodeKind::i_dag, q, m.letter);
  for (int e : ar.out[static_cast<std::size_t>(node_)]) {
    const auto& x = edge_of(ar, e);
    if (x.to == target && x.label == label && x.interrupt == side &&
        (x.size == EdgeSize::small) == small)
      return {n, e};
  }
  throw Error("internal: interrupt at position " + n.str() + " has no arena edge");
}

Integer Play::late_position(int edge, const Rational& min_duration) const {
  const auto& x = edge_of(*arena_, edge);
  Integer n0 = x.position;
  if (x.size != EdgeSize::big)
    return n0;
  const auto& u = block();
  bool fv = arena_->semantics == Semantics::fv;
  std::size_t step = u.period();
  if (fv && step % 2 == 1)
    step *= 2;
  Rational need = min_duration / block_scale_;
  if (fv)
    need = x.interrupt == Interrupt::right ? Rational(2 * need) : Rational(2 * need - 1);
  Integer target = ceil_rational(need);
  if (target <= n0)
    return n0;
  Integer k = ceil_rational(Rational(target - n0, Integer(step)));
  return n0 + k * step;
}

void Play::step(const IMove& m) {
  if (accepted_)
    throw IllegalMoveError("the play is over");
  if (to_move() != kPlayerI)
    throw IllegalMoveError("it is O's turn");
  const Arena& ar = *arena_;
  const auto& here = node_of(ar, node_);
  TraceStep s;
  s.player = kPlayerI;
  s.time = now_;
  switch (m.kind) {
  case IMove::Kind::letter: {
    if (here.kind != NodeKind::fresh && here.kind != NodeKind::o_dag)
      throw IllegalMoveError("no letter choice at " + ar.node_name(node_));
    for (int e : ar.out[static_cast<std::size_t>(node_)])
      if (node_of(ar, edge_of(ar, e).to).a == m.letter) {
        s.line = format_i_move(m, ar);
        traverse(e, std::move(s));
        return;
      }
    throw IllegalMoveError("unknown input letter");
  }
  case IMove::Kind::accept:
    if (here.kind != NodeKind::i_up)
      throw IllegalMoveError("only a running block can be accepted");
    accepted_ = true;
    s.line = "I accept";
    traverse(-1, std::move(s));
    return;
  case IMove::Kind::interrupt: {
    auto [n, e] = resolve_interrupt(m);
    s.time = m.time;
    s.position = n;
    s.duration = m.time - block_start_;
    s.block = block_index_;
    s.line = format_i_move(m, ar);
    now_ = m.time;
    ++interrupts_;
    traverse(e, std::move(s));
    return;
  }
  }
}

void Play::step(const OMove& m) {
  if (accepted_)
    throw IllegalMoveError("the play is over");
  if (to_move() != kPlayerO)
    throw IllegalMoveError("it is I's turn");
  const Arena& ar = *arena_;
  const auto& outs = ar.out[static_cast<std::size_t>(node_)];
  if (std::find(outs.begin(), outs.end(), m.edge) == outs.end())
    throw IllegalMoveError("not an edge out of " + ar.node_name(node_));
  const auto& x = edge_of(ar, m.edge);
  const auto& to = node_of(ar, x.to);
  TraceStep s;
  s.player = kPlayerO;
  s.time = now_;
  if (to.kind == NodeKind::i_up) {
    if (m.scale <= 0)
      throw IllegalMoveError("the time scale must be positive");
    block_start_ = now_;
    block_scale_ = m.scale;
    block_index_ = timed_++;
    well_scaled_ = well_scaled_ && m.scale == pow2_neg(static_cast<unsigned>(block_index_));
    s.block = block_index_;
    s.line = "O block u=" + compact_word(ar, to.u) + " scale=" + to_string(m.scale);
  } else {
    s.line = "O point b=" + ar.automaton.sigma_out()[static_cast<std::size_t>(x.letter)];
  }
  traverse(m.edge, std::move(s));
}

namespace {

// 0 plain, 1 small, 2 big within the scanned positions, 3 big lasting at
// least one time unit, 4 other big.
int step_class(const Arena& ar, const TraceStep& s) {
  const auto& x = edge_of(ar, s.edge);
  if (x.size == EdgeSize::plain)
    return 0;
  if (x.size == EdgeSize::small)
    return 1;
  if (s.duration >= 1)
    return 3;
  const auto& from = node_of(ar, x.from);
  const auto& u = ar.up[static_cast<std::size_t>(from.u)];
  if (s.position <= u.lag() + 2 * u.period())
    return 2;
  return 4;
}

} // namespace

PlayOutcome adjudicate(const Play& play) {
  const Arena& ar = play.arena();
  if (play.finished()) {
    if (ar.final[static_cast<std::size_t>(play.node())])
      return {kPlayerO, Reason::accepted_final};
    return {kPlayerI, Reason::rejected_final};
  }
  const auto& tr = play.trace();
  std::size_t n = tr.size();
  auto key = [&](std::size_t k) { return std::make_pair(tr[k].edge, step_class(ar, tr[k])); };
  std::size_t period = 0;
  if (auto p = play.declared_period()) {
    period = *p;
  } else {
    for (std::size_t p = 1; 2 * p <= n && period == 0; ++p) {
      bool ok = true;
      for (std::size_t k = n - p; k < n && ok; ++k)
        ok = key(k) == key(k - p);
      if (ok)
        period = p;
    }
  }
  if (period == 0 || period > n)
    throw UndecidedError("no repeating block at the end of the play; raise the round cap");

  bool any_interrupt = false, late = false, bounded = true;
  int top = -1;
  for (std::size_t k = n - period; k < n; ++k) {
    int c = step_class(ar, tr[k]);
    any_interrupt = any_interrupt || c != 0;
    late = late || c == 3;
    bounded = bounded && c != 3 && c != 4;
    top = std::max(top, edge_of(ar, tr[k].edge).priority);
  }
  if (!any_interrupt)
    throw UndecidedError("the repeating block contains no interrupt");
  if (late) {
    if (top % 2 == 0)
      return {kPlayerO, Reason::parity_even};
    return {kPlayerI, Reason::parity_odd};
  }
  if (bounded && play.well_scaled())
    return {kPlayerO, Reason::zeno_O_win};
  throw UndecidedError("cannot tell whether the play's duration converges");
}

IMove move_along(const Play& play, int edge, bool late) {
  const Arena& ar = play.arena();
  const auto& x = edge_of(ar, edge);
  if (x.from != play.node())
    throw IllegalMoveError("edge does not leave the current node");
  const auto& to = node_of(ar, x.to);
  if (x.size == EdgeSize::plain)
    return IMove::choose(to.a);
  Integer n = late ? play.late_position(edge, Rational(1)) : Integer(x.position);
  return IMove::interrupt(to.a, play.interrupt_time(n, x.interrupt), x.interrupt);
}

OMove o_move(const ChoicePlayer& o, const Play& play) {
  OMove m;
  m.edge = o.edge_at(play.node());
  m.scale = o.scale(play.timed_moves());
  return m;
}

GuidedAdversary::GuidedAdversary(const ChoicePlayer& o, std::uint64_t seed, std::size_t detour)
    : o_(&o), rng_(seed), detour_(detour) {}

int GuidedAdversary::planned_edge(std::size_t k) const {
  const auto& p = *plan_;
  if (k < p.prefix.size())
    return p.prefix[k];
  if (p.cycle.empty())
    return -1;
  return p.cycle[(k - p.prefix.size()) % p.cycle.size()];
}

IMove GuidedAdversary::move(const Play& play) {
  const Arena& ar = o_->arena();
  int v = play.node();
  if (!plan_ && detoured_ < detour_) {
    ++detoured_;
    const auto& here = node_of(ar, v);
    if (here.kind == NodeKind::i_up && !ar.final[static_cast<std::size_t>(v)])
      return IMove::accept();
    std::vector<int> keep;
    for (int e : ar.out[static_cast<std::size_t>(v)]) {
      auto g = restrict_to_choice(ar, o_->choice(), edge_of(ar, e).to);
      if (!check_strategy(g).winning)
        keep.push_back(e);
    }
    if (!keep.empty()) {
      int e = keep[std::uniform_int_distribution<std::size_t>(0, keep.size() - 1)(rng_)];
      return move_along(play, e, std::bernoulli_distribution(0.5)(rng_));
    }
  }
  if (!plan_) {
    auto chk = check_strategy(restrict_to_choice(ar, o_->choice(), v));
    if (chk.winning)
      throw DomainError("the strategy wins from " + ar.node_name(v) + "; nothing to follow");
    plan_ = std::move(chk);
    plan_start_ = play.trace().size();
  }
  std::size_t k = play.trace().size() - plan_start_;
  int e = planned_edge(k);
  if (e < 0)
    return IMove::accept();
  return move_along(play, e, true);
}

std::optional<std::size_t> GuidedAdversary::memory(const Play& play) const {
  if (!plan_ || plan_->cycle.empty())
    return std::nullopt;
  std::size_t k = play.trace().size() - plan_start_;
  if (k < plan_->prefix.size())
    return std::nullopt;
  return (k - plan_->prefix.size()) % plan_->cycle.size();
}

RandomAdversary::RandomAdversary(std::uint64_t seed, std::size_t opening, double accept)
    : rng_(seed), opening_(opening), accept_(accept) {}

IMove RandomAdversary::move(const Play& play) {
  const Arena& ar = play.arena();
  if (fixed_.empty()) {
    fixed_.assign(ar.nodes.size(), -1);
    late_.assign(ar.edges.size(), -1);
  }
  int v = play.node();
  const auto& outs = ar.out[static_cast<std::size_t>(v)];
  bool can_accept = node_of(ar, v).kind == NodeKind::i_up;
  auto draw = [&]() -> int {
    if (can_accept && (outs.empty() || std::bernoulli_distribution(accept_)(rng_)))
      return -2;
    return outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng_)];
  };
  int e;
  bool late;
  if (moves_++ < opening_) {
    e = draw();
    late = std::bernoulli_distribution(0.5)(rng_);
  } else {
    auto& f = fixed_[static_cast<std::size_t>(v)];
    if (f == -1)
      f = draw();
    e = f;
    if (e >= 0) {
      auto& l = late_[static_cast<std::size_t>(e)];
      if (l == -1)
        l = std::bernoulli_distribution(0.5)(rng_) ? 1 : 0;
      late = l == 1;
    } else {
      late = false;
    }
  }
  if (e == -2)
    return IMove::accept();
  return move_along(play, e, late);
}

std::optional<std::size_t> RandomAdversary::memory(const Play&) const {
  if (moves_ < opening_)
    return std::nullopt;
  return 0;
}

void continue_play(Play& p, const ChoicePlayer& o, IPlayer& adversary, const PlayConfig& cfg) {
  std::map<std::pair<int, std::size_t>, std::size_t> seen;
  while (!p.finished() && p.trace().size() < cfg.max_steps) {
    if (p.to_move() == kPlayerO)
      p.step(o_move(o, p));
    else
      p.step(adversary.move(p));
    if (p.finished())
      break;
    // Only states where I is about to move: O is positional, so the next
    // I decision point determines the rest.
    if (p.to_move() != kPlayerI)
      continue;
    if (auto m = adversary.memory(p)) {
      auto [it, fresh] = seen.emplace(std::make_pair(p.node(), *m), p.trace().size());
      if (!fresh) {
        p.declare_period(p.trace().size() - it->second);
        break;
      }
    }
  }
}

Play run_play(const ChoicePlayer& o, IPlayer& adversary, const PlayConfig& cfg) {
  Play p(o.arena());
  continue_play(p, o, adversary, cfg);
  return p;
}

std::optional<IMove> parse_i_line(const std::string& line, const Arena& arena) {
  std::istringstream is(line);
  std::string who, what;
  if (!(is >> who) || who != "I")
    return std::nullopt;
  if (!(is >> what))
    throw ParseError("empty move: '" + line + "'");
  std::map<std::string, std::string> kv;
  for (std::string tok; is >> tok;) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value in '" + line + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto letter = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError("missing " + key + "= in '" + line + "'");
    const auto& names = arena.automaton.sigma_in();
    auto pos = std::find(names.begin(), names.end(), it->second);
    if (pos == names.end())
      throw ParseError("unknown input letter '" + it->second + "'");
    return static_cast<int>(pos - names.begin());
  };
  if (what == "accept")
    return IMove::accept();
  if (what == "letter")
    return IMove::choose(letter("a"));
  if (what == "interrupt") {
    auto t = kv.find("t");
    if (t == kv.end())
      throw ParseError("missing t= in '" + line + "'");
    Interrupt side = Interrupt::left;
    if (auto k = kv.find("kind"); k != kv.end()) {
      if (k->second == "right")
        side = Interrupt::right;
      else if (k->second != "left")
        throw ParseError("kind must be left or right");
    }
    return IMove::interrupt(letter("letter"), parse_rational(t->second), side);
  }
  throw ParseError("unknown move '" + what + "'");
}

std::string format_i_move(const IMove& m, const Arena& arena) {
  const auto& names = arena.automaton.sigma_in();
  switch (m.kind) {
  case IMove::Kind::accept:
    return "I accept";
  case IMove::Kind::letter:
    return "I letter a=" + names.at(static_cast<std::size_t>(m.letter));
  case IMove::Kind::interrupt:
    return "I interrupt t=" + to_string(m.time) +
           " letter=" + names.at(static_cast<std::size_t>(m.letter)) +
           " kind=" + to_string(m.side == Interrupt::right ? Interrupt::right : Interrupt::left);
  }
  return "";
}

JumpExample play_example_5_3(std::size_t rounds, const JumpInterrupt& interrupt) {
  JumpExample r;
  std::vector<Piece> xs, ys;
  Rational t = 0;
  int a = 0;
  r.times.push_back(t);
  Rational horizon = 0;
  for (std::size_t i = 0; i < rounds; ++i) {
    Rational scale = pow2_neg(static_cast<unsigned>(i));
    Rational deadline = t + scale;
    r.transcript.push_back("O block u=" + std::to_string(a) + "(" + std::to_string(1 - a) +
                           ")^w scale=" + to_string(scale));
    xs.push_back({t, a, a});
    ys.push_back({t, a, a});
    auto next = interrupt(i, t, deadline);
    if (!next) {
      ys.push_back({deadline, 1 - a, 1 - a});
      r.transcript.push_back("I accept");
      r.accepted = true;
      horizon = deadline + 1;
      break;
    }
    if (*next <= t)
      throw IllegalMoveError("interrupt time " + to_string(*next) + " must exceed " +
                             to_string(t));
    if (*next > deadline)
      ys.push_back({deadline, 1 - a, 1 - a});
    r.transcript.push_back("I interrupt t=" + to_string(*next) + " letter=" +
                           std::to_string(1 - a) + " kind=left");
    a = 1 - a;
    t = *next;
    r.times.push_back(t);
    horizon = t;
  }
  if (!r.accepted) {
    // The next round would start with both signals at the new input value.
    xs.push_back({t, a, a});
    ys.push_back({t, a, a});
  }
  r.duration = t;
  r.x = FVSignal(xs);
  r.y = FVSignal(ys);
  for (const auto& s : jump_points(r.y, horizon))
    if (s > 0 && jumps_at(r.y, s) && !jumps_at(r.x, s))
      r.output_jump_found = true;
  return r;
}

JumpExample play_example_5_3(std::size_t rounds) {
  return play_example_5_3(rounds, [](std::size_t, const Rational&, const Rational& deadline) {
    return std::optional<Rational>(deadline);
  });
}

} // namespace chronosynth
