#include "chronosynth/chronosynth.h"

#include "arena.hpp"
#include "continuous_synth.hpp"
#include "definable_synth.hpp"
#include "discrete_game.hpp"
#include "fixture_checks.hpp"
#include "game_sim.hpp"
#include "state_monoid.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

using namespace chronosynth;
using nlohmann::json;

struct cs_automaton {
  ParityAutomaton a;
};

struct cs_session {
  std::unique_ptr<ContinuousResult> result;
  std::unique_ptr<ChoicePlayer> o;
  std::unique_ptr<Play> play;
  cs_options opt;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_progress = 0;

cs_status fail(cs_status s, const std::string& msg, std::size_t progress = 0) {
  last_error = msg;
  last_progress = progress;
  return s;
}

template <class F>
cs_status guarded(F&& f) {
  last_error.clear();
  last_progress = 0;
  try {
    return f();
  } catch (const ResourceError& e) {
    return fail(CS_ERR_RESOURCE, e.what(), e.progress());
  } catch (const ParseError& e) {
    return fail(CS_ERR_PARSE, e.what());
  } catch (const IllegalMoveError& e) {
    return fail(CS_ERR_ILLEGAL_MOVE, e.what());
  } catch (const UndecidedError& e) {
    return fail(CS_ERR_UNDECIDED, e.what());
  } catch (const DomainError& e) {
    return fail(CS_ERR_DOMAIN, e.what());
  } catch (const json::exception& e) {
    return fail(CS_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CS_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CS_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(CS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CS_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p)
    throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cs_status emit(char** out, const std::string& s) {
  *out = dup(s);
  return CS_OK;
}

cs_status emit(char** out, const json& j) { return emit(out, j.dump(2) + "\n"); }

Semantics semantics(cs_semantics s) {
  if (s != CS_RC && s != CS_FV)
    throw std::invalid_argument("semantics must be rc or fv");
  return s == CS_RC ? Semantics::rc : Semantics::fv;
}

cs_options options_or_default(const cs_options* opt) {
  cs_options o;
  if (opt)
    return *opt;
  cs_options_default(&o);
  return o;
}

EnumerationOptions enumeration(const cs_options& o) {
  EnumerationOptions e;
  e.cap = o.strategy_cap;
  e.jobs = o.jobs == 0 ? 1 : o.jobs;
  return e;
}

std::optional<std::size_t> env_cap(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v)
    return std::nullopt;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0 || v[0] == '-')
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

json outcome_json(const Play& p) {
  auto out = adjudicate(p);
  return json{{"winner", out.winner == kPlayerO ? "O" : "I"},
              {"reason", to_string(out.reason)},
              {"time", to_string(p.now())},
              {"steps", p.trace().size()}};
}

// O plays until it is I's turn.
void advance(cs_session& s) {
  while (!s.play->finished() && s.play->to_move() == kPlayerO)
    s.play->step(o_move(*s.o, *s.play));
}

std::string lines_since(const Play& p, std::size_t from) {
  std::string out;
  const auto& tr = p.trace();
  for (std::size_t k = from; k < tr.size(); ++k)
    out += tr[k].line + "\n";
  return out;
}

} // namespace

extern "C" {

const char* cs_version(void) { return "0.1.0"; }

const char* cs_last_error(void) { return last_error.c_str(); }

size_t cs_last_error_progress(void) { return last_progress; }

void cs_string_free(char* s) { std::free(s); }

cs_status cs_options_default(cs_options* opt) {
  if (!opt)
    return fail(CS_ERR_ARGUMENT, "null options");
  opt->signature_cap = kDefaultSignatureCap;
  opt->strategy_cap = EnumerationOptions{}.cap;
  opt->round_cap = PlayConfig{}.max_steps;
  opt->jobs = 1;
  opt->seed = 1;
  try {
    if (auto v = env_cap("CHRONOSYNTH_CAP_SIGNATURES"))
      opt->signature_cap = *v;
    if (auto v = env_cap("CHRONOSYNTH_CAP_STRATEGIES"))
      opt->strategy_cap = *v;
    if (auto v = env_cap("CHRONOSYNTH_CAP_ROUNDS"))
      opt->round_cap = *v;
  } catch (const std::exception& e) {
    return fail(CS_ERR_ARGUMENT, e.what());
  }
  return CS_OK;
}

cs_status cs_automaton_from_json(const char* text, cs_automaton** out) {
  if (!text || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cs_automaton{automaton_from_json(json::parse(text))};
    return CS_OK;
  });
}

cs_status cs_automaton_load(const char* path, cs_automaton** out) {
  if (!path || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in)
      return fail(CS_ERR_IO, std::string("cannot read ") + path);
    *out = new cs_automaton{automaton_from_json(json::parse(in))};
    return CS_OK;
  });
}

void cs_automaton_free(cs_automaton* a) { delete a; }

cs_status cs_automaton_to_json(const cs_automaton* a, char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(out, to_json(a->a)); });
}

cs_status cs_solve_discrete(const cs_automaton* a, char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = solve(a->a);
    json j{{"realizable", r.output_wins}};
    if (r.mealy)
      j["mealy"] = to_json(*r.mealy, a->a);
    if (r.counter)
      j["counter"] = to_json(*r.counter, a->a);
    return emit(out, j);
  });
}

cs_status cs_definable(const cs_automaton* a, int strongly_causal, char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    json j;
    if (strongly_causal) {
      auto r = solve_definable_sc(a->a);
      j["counter_exists"] = r.counter_exists;
      if (r.counter)
        j["counter"] = to_json(*r.counter, r.product);
      if (r.refuter)
        j["refuter"] = to_json(*r.refuter, r.product);
    } else {
      auto r = solve_definable(a->a);
      j["definable"] = r.definable;
      if (r.witness)
        j["witness"] = to_json(*r.witness, r.product);
      if (r.refuter)
        j["refuter"] = to_json(*r.refuter, r.product);
    }
    return emit(out, j);
  });
}

cs_status cs_synth(const cs_automaton* a, cs_semantics s, const cs_options* opt, int with_stats,
                   char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto o = options_or_default(opt);
    auto r = decide_continuous(a->a, semantics(s), enumeration(o), o.signature_cap);
    json j{{"realizable", r.realizable}, {"semantics", to_string(semantics(s))}};
    j["witness"] = r.witness ? choice_to_json(r.arena, *r.witness) : json(nullptr);
    if (with_stats)
      j["stats"] = json{{"strategies_checked", r.stats.checks},
                        {"complete_choices", r.stats.complete},
                        {"classes", r.classes},
                        {"d_Q", r.arena.d_Q},
                        {"up", r.arena.up.size()},
                        {"arena_nodes", r.arena.nodes.size()},
                        {"arena_edges", r.arena.edges.size()}};
    return emit(out, j);
  });
}

cs_status cs_monoid(const cs_automaton* a, int table_semantics, const cs_options* opt,
                    int full_table, char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto o = options_or_default(opt);
    ClassTable t;
    ParityAutomaton shown = a->a;
    if (table_semantics < 0) {
      t = build_class_table(a->a, o.signature_cap);
    } else {
      shown = arena_view(a->a, semantics(static_cast<cs_semantics>(table_semantics)));
      t = arena_class_table(shown, o.signature_cap);
    }
    auto up = build_UP(t);
    json j{{"classes", t.size()},
           {"d_Q", t.d_Q},
           {"idempotents", t.idempotents.size()},
           {"up", up.size()}};
    if (full_table) {
      const auto& names = shown.state_names();
      auto word = [&](const std::vector<int>& w) {
        std::string s;
        for (std::size_t k = 0; k < w.size(); ++k)
          s += (k ? " " : "") + names[static_cast<std::size_t>(w[k])];
        return s;
      };
      json rows = json::array();
      for (std::size_t c = 0; c < t.size(); ++c) {
        bool idem = std::find(t.idempotents.begin(), t.idempotents.end(),
                              static_cast<int>(c)) != t.idempotents.end();
        rows.push_back({{"class", c}, {"witness", word(t.witnesses[c])}, {"idempotent", idem}});
      }
      j["table"] = rows;
      json members = json::array();
      for (const auto& m : up)
        members.push_back(word(m.lag) + " (" + word(m.period) + ")^w");
      j["up_members"] = members;
    }
    return emit(out, j);
  });
}

cs_status cs_arena(const cs_automaton* a, cs_semantics s, const cs_options* opt, int dot,
                   char** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto o = options_or_default(opt);
    auto ar = build_arena(a->a, semantics(s), o.signature_cap);
    if (dot)
      return emit(out, export_dot(ar));
    return emit(out, arena_to_json(ar));
  });
}

cs_status cs_jump_example(unsigned rounds, char** out) {
  if (!out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto e = play_example_5_3(rounds);
    json times = json::array();
    for (const auto& t : e.times)
      times.push_back(to_string(t));
    return emit(out, json{{"rounds", rounds},
                          {"duration", to_string(e.duration)},
                          {"below_2", e.duration < 2},
                          {"output_jump_found", e.output_jump_found},
                          {"times", times},
                          {"transcript", e.transcript}});
  });
}

cs_status cs_check_fixtures(const cs_options* opt, char** out) {
  if (!out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto o = options_or_default(opt);
    json checks = json::array();
    bool all = true;
    for (const auto& c : run_fixture_checks(o.seed)) {
      all = all && c.passed;
      json row{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
      if (!c.detail.empty())
        row["detail"] = c.detail;
      checks.push_back(row);
    }
    return emit(out, json{{"seed", o.seed}, {"passed", all}, {"checks", checks}});
  });
}

cs_status cs_session_new(const cs_automaton* a, cs_semantics s, const cs_options* opt,
                         cs_session** out) {
  if (!a || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto sess = std::make_unique<cs_session>();
    sess->opt = options_or_default(opt);
    sess->result = std::make_unique<ContinuousResult>(
        decide_continuous(a->a, semantics(s), enumeration(sess->opt), sess->opt.signature_cap));
    if (!sess->result->witness)
      return fail(CS_ERR_DOMAIN, "the spec is unrealizable: O has no strategy to play");
    sess->o = std::make_unique<ChoicePlayer>(
        witness_to_player(sess->result->arena, *sess->result->witness));
    sess->play = std::make_unique<Play>(sess->result->arena);
    advance(*sess);
    *out = sess.release();
    return CS_OK;
  });
}

void cs_session_free(cs_session* s) { delete s; }

int cs_session_finished(const cs_session* s) { return s && s->play->finished() ? 1 : 0; }

cs_status cs_session_declare_period(cs_session* s, size_t steps) {
  if (!s)
    return fail(CS_ERR_ARGUMENT, "null argument");
  if (steps == 0 || steps > s->play->trace().size())
    return fail(CS_ERR_ARGUMENT, "period must be between 1 and the number of steps played");
  s->play->declare_period(steps);
  return CS_OK;
}

size_t cs_session_period(const cs_session* s) {
  return s && s->play->declared_period() ? *s->play->declared_period() : 0;
}

cs_status cs_session_state(const cs_session* s, char** out) {
  if (!s || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const Play& p = *s->play;
    const Arena& ar = p.arena();
    json j{{"node", ar.node_name(p.node())},
           {"time", to_string(p.now())},
           {"finished", p.finished()},
           {"timed_moves", p.timed_moves()},
           {"steps", p.trace().size()}};
    // Duration left if I only ever interrupts inside lags from here on.
    Rational bound = p.now() + 2 * Rational(static_cast<long>(ar.d_Q)) *
                                   pow2_neg(static_cast<unsigned>(p.timed_moves()));
    j["zeno_bound"] = to_string(bound);
    json options = json::array();
    if (!p.finished()) {
      if (ar.nodes[static_cast<std::size_t>(p.node())].kind == NodeKind::i_up) {
        j["block"] = ar.up_name(ar.nodes[static_cast<std::size_t>(p.node())].u);
        j["block_start"] = to_string(p.block_start());
        j["block_scale"] = to_string(p.block_scale());
        options.push_back({{"line", "I accept"},
                           {"final", static_cast<bool>(ar.final[static_cast<std::size_t>(p.node())])}});
      }
      for (int e : ar.out[static_cast<std::size_t>(p.node())]) {
        const auto& x = ar.edges[static_cast<std::size_t>(e)];
        json row{{"line", format_i_move(move_along(p, e, false), ar)},
                 {"target", ar.node_name(x.to)},
                 {"size", to_string(x.size)}};
        if (x.size != EdgeSize::plain)
          row["priority"] = x.priority;
        options.push_back(row);
        auto late = format_i_move(move_along(p, e, true), ar);
        if (x.size == EdgeSize::big && late != row["line"])
          options.push_back({{"line", late},
                             {"target", ar.node_name(x.to)},
                             {"size", "big"},
                             {"priority", x.priority},
                             {"late", true}});
      }
    }
    j["options"] = options;
    return emit(out, j);
  });
}

cs_status cs_session_move(cs_session* s, const char* line, char** out) {
  if (!s || !line || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = parse_i_line(line, s->play->arena());
    std::size_t from = s->play->trace().size();
    if (m) {
      s->play->step(*m);
      advance(*s);
    }
    return emit(out, lines_since(*s->play, from));
  });
}

cs_status cs_session_autoplay(cs_session* s, unsigned long long seed, char** out) {
  if (!s || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::size_t from = s->play->trace().size();
    RandomAdversary adv(seed);
    continue_play(*s->play, *s->o, adv, PlayConfig{s->opt.round_cap});
    return emit(out, lines_since(*s->play, from));
  });
}

cs_status cs_session_transcript(const cs_session* s, char** out) {
  if (!s || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(out, lines_since(*s->play, 0)); });
}

cs_status cs_session_adjudicate(const cs_session* s, char** out) {
  if (!s || !out)
    return fail(CS_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(out, outcome_json(*s->play)); });
}

} // extern "C"
