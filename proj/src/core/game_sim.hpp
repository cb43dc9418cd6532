#pragma once

#include "arena.hpp"
#include "continuous_synth.hpp"
#include "rational.hpp"
#include "signal.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace chronosynth {

struct IMove {
  enum class Kind { letter, accept, interrupt } kind = Kind::accept;
  int letter = -1;
  Rational time;
  Interrupt side = Interrupt::left;

  static IMove choose(int a) { return {Kind::letter, a, Rational(0), Interrupt::none}; }
  static IMove accept() { return {}; }
  static IMove interrupt(int b, Rational t, Interrupt side = Interrupt::left) {
    return {Kind::interrupt, b, std::move(t), side};
  }
};

struct OMove {
  int edge = -1;
  Rational scale{1}; // timed moves only
};

struct TraceStep {
  int edge = -1;
  int player = kPlayerI;
  Rational time;
  Integer position{0};   // interrupt position n
  Rational duration{0};  // interrupts: time since the interrupted block started
  std::size_t block = 0; // timed moves: global index i; interrupts: index of the block
  std::string line;      // transcript line
};

// A play of the timed game on an arena.
class Play {
public:
  explicit Play(const Arena& arena);

  const Arena& arena() const { return *arena_; }
  int node() const { return node_; }
  int to_move() const;
  bool finished() const { return accepted_; }
  const Rational& now() const { return now_; }
  std::size_t timed_moves() const { return timed_; }
  std::size_t interrupts() const { return interrupts_; }
  // Every timed move so far used the scale 2^-i.
  bool well_scaled() const { return well_scaled_; }
  const std::vector<TraceStep>& trace() const { return trace_; }
  std::vector<std::string> transcript() const;

  // The block in force at an i_up node.
  const UPInfo& block() const;
  const Rational& block_start() const { return block_start_; }
  const Rational& block_scale() const { return block_scale_; }
  std::size_t block_index() const { return block_index_; }

  void step(const IMove& m);
  void step(const OMove& m);

  // Declares that the play continues by repeating its last `period` steps
  // forever (set by run_play when the players' states repeat).
  void declare_period(std::size_t period) { period_ = period; }
  std::optional<std::size_t> declared_period() const { return period_; }

  // Position hit by an interrupt at time t (t > block start), with the edge
  // it traverses; throws IllegalMoveError.
  std::pair<Integer, int> resolve_interrupt(const IMove& m) const;
  // Interrupt time realising `edge` at position n: the last instant of the
  // position's window (RC and FV left), the grid point (FV right).
  Rational interrupt_time(const Integer& n, Interrupt side) const;
  // Least position >= the edge's recorded one, realising the same edge, whose
  // interrupt time is at least `min_duration` after the block start.
  Integer late_position(int edge, const Rational& min_duration) const;

private:
  const Arena* arena_;
  int node_;
  Rational now_{0};
  std::size_t timed_ = 0, interrupts_ = 0;
  bool accepted_ = false;
  bool well_scaled_ = true;
  Rational block_start_{0}, block_scale_{1};
  std::size_t block_index_ = 0;
  std::vector<TraceStep> trace_;
  std::optional<std::size_t> period_;

  void traverse(int edge, TraceStep s);
};

int state_at(const UPInfo& u, const Integer& n);

enum class Reason { accepted_final, rejected_final, zeno_O_win, parity_even, parity_odd };
const char* to_string(Reason r);

struct PlayOutcome {
  int winner = kPlayerO;
  Reason reason = Reason::accepted_final;
};

// Finished plays are judged by the final node. Unfinished ones are read as
// the periodic continuation of their trace: the last block of moves must
// occur twice in a row. Throws UndecidedError when no such block exists or
// when the block does not settle convergence.
PlayOutcome adjudicate(const Play& play);

class IPlayer {
public:
  virtual ~IPlayer() = default;
  virtual IMove move(const Play& play) = 0;
  // Memory state once the player has become deterministic in (node, memory);
  // nullopt before that.
  virtual std::optional<std::size_t> memory(const Play&) const { return std::nullopt; }
};

// Follows a losing certificate of the strategy: walks to the offending node
// and accepts, or runs the bad cycle forever taking at least one time unit on
// each big edge. The first `detour` I moves are random ones that keep the
// certificate valid.
class GuidedAdversary : public IPlayer {
public:
  GuidedAdversary(const ChoicePlayer& o, std::uint64_t seed, std::size_t detour = 0);
  IMove move(const Play& play) override;
  std::optional<std::size_t> memory(const Play& play) const override;
  const std::optional<StrategyCheck>& plan() const { return plan_; }

private:
  const ChoicePlayer* o_;
  std::mt19937_64 rng_;
  std::size_t detour_;
  std::optional<StrategyCheck> plan_;
  std::size_t plan_start_ = 0; // trace length when the plan was made
  std::size_t detoured_ = 0;

  int planned_edge(std::size_t k) const;
};

// Random opening, then a random positional strategy: a fixed edge, interrupt
// timing and accept decision per node, drawn on first visit.
class RandomAdversary : public IPlayer {
public:
  explicit RandomAdversary(std::uint64_t seed, std::size_t opening = 3, double accept = 0.2);
  IMove move(const Play& play) override;
  std::optional<std::size_t> memory(const Play&) const override;

private:
  std::mt19937_64 rng_;
  std::size_t opening_;
  double accept_;
  std::size_t moves_ = 0;
  std::vector<int> fixed_; // per node: -1 undecided, -2 accept, else edge
  std::vector<int> late_;  // per edge: -1 undecided, 0 early, 1 late
};

// Converts an arena edge out of the current node into an I move; big edges
// are taken late (at least one time unit into the block) when `late`.
IMove move_along(const Play& play, int edge, bool late);

struct PlayConfig {
  std::size_t max_steps = 400;
};

// Runs O's choice against `adversary` until I accepts, the trace becomes
// periodic, or max_steps edges were traversed.
Play run_play(const ChoicePlayer& o, IPlayer& adversary, const PlayConfig& cfg = {});
// Continues `play` the same way until it has max_steps steps in all.
void continue_play(Play& play, const ChoicePlayer& o, IPlayer& adversary,
                   const PlayConfig& cfg = {});

// The step-1 rule applied to O's timed moves: scale 2^-i at the i-th.
OMove o_move(const ChoicePlayer& o, const Play& play);

// Parses one transcript line of player I ("I letter a=0", "I accept",
// "I interrupt t=3/2 letter=1 kind=left"); other lines give nullopt.
std::optional<IMove> parse_i_line(const std::string& line, const Arena& arena);
std::string format_i_move(const IMove& m, const Arena& arena);

// The scripted play of the jump example. Round i starts at t_i with input
// a_i; O outputs a_i on [t_i, t_i + 2^-i) and its negation after. `interrupt`
// returns I's next interrupt time given (i, t_i, t_i + 2^-i), or nullopt to
// accept.
struct JumpExample {
  std::vector<std::string> transcript;
  std::vector<Rational> times; // t_0 = 0, t_1, ...
  Rational duration;           // t at the last interrupt
  bool accepted = false;
  FVSignal x = FVSignal::constant(0);
  FVSignal y = FVSignal::constant(0);
  // Some t > 0 where Y jumps and X is continuous (up to the last interrupt
  // for unfinished plays, anywhere for accepted ones).
  bool output_jump_found = false;
};

using JumpInterrupt =
    std::function<std::optional<Rational>(std::size_t, const Rational&, const Rational&)>;

JumpExample play_example_5_3(std::size_t rounds, const JumpInterrupt& interrupt);
// I interrupts at the deadline t_i + 2^-i of every round.
JumpExample play_example_5_3(std::size_t rounds);

} // namespace chronosynth
