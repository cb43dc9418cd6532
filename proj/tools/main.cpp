#include "chronosynth/chronosynth.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, failure = 1, usage = 2, resource = 3, undecided = 4 };

int exit_code(cs_status s) {
  switch (s) {
  case CS_OK:
    return ok;
  case CS_ERR_ARGUMENT:
  case CS_ERR_PARSE:
  case CS_ERR_IO:
    return usage;
  case CS_ERR_RESOURCE:
    return resource;
  case CS_ERR_UNDECIDED:
    return undecided;
  default:
    return failure;
  }
}

struct Failed {
  int code;
};

void check(cs_status s) {
  if (s == CS_OK)
    return;
  std::cerr << "error: " << cs_last_error();
  if (s == CS_ERR_RESOURCE)
    std::cerr << " (progress " << cs_last_error_progress() << ")";
  std::cerr << "\n";
  throw Failed{exit_code(s)};
}

struct Text {
  char* p = nullptr;
  ~Text() { cs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using Automaton = std::unique_ptr<cs_automaton, decltype(&cs_automaton_free)>;
using Session = std::unique_ptr<cs_session, decltype(&cs_session_free)>;

Automaton load(const std::string& path) {
  cs_automaton* a = nullptr;
  check(cs_automaton_load(path.c_str(), &a));
  return Automaton(a, cs_automaton_free);
}

cs_semantics parse_semantics(const std::string& s) { return s == "rc" ? CS_RC : CS_FV; }

struct Global {
  std::size_t signature_cap = 0, strategy_cap = 0, round_cap = 0;
  unsigned jobs = 1;
  unsigned long long seed = 1;
  bool verbose = false;
  std::string output;
};

cs_options options(const Global& g) {
  cs_options o;
  check(cs_options_default(&o));
  if (g.signature_cap)
    o.signature_cap = g.signature_cap;
  if (g.strategy_cap)
    o.strategy_cap = g.strategy_cap;
  if (g.round_cap)
    o.round_cap = g.round_cap;
  o.jobs = g.jobs;
  o.seed = g.seed;
  return o;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw CLI::ValidationError("--output", "cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::string outcome_line(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  return "# outcome winner=" + j["winner"].get<std::string>() +
         " reason=" + j["reason"].get<std::string>() + " time=" + j["time"].get<std::string>() +
         " steps=" + std::to_string(j["steps"].get<std::size_t>());
}

// Adjudicates, prints the outcome line and returns the exit code.
int finish(cs_session* s, std::ostream& out) {
  if (std::size_t p = cs_session_period(s))
    out << "# repeat " << p << "\n";
  Text t;
  cs_status st = cs_session_adjudicate(s, &t.p);
  if (st == CS_ERR_UNDECIDED) {
    out << "# outcome undecided\n";
    std::cerr << "undecided: " << cs_last_error() << "\n";
    return undecided;
  }
  check(st);
  out << outcome_line(t.str()) << "\n";
  return ok;
}

void print_state(cs_session* s) {
  Text t;
  check(cs_session_state(s, &t.p));
  std::cerr << t.str();
}

std::string normalise_move(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  if (line.rfind("I ", 0) != 0)
    line = "I " + line;
  return line;
}

std::vector<std::string> option_lines(cs_session* s) {
  Text t;
  check(cs_session_state(s, &t.p));
  std::vector<std::string> out;
  for (const auto& o : nlohmann::json::parse(t.str())["options"])
    out.push_back(o["line"].get<std::string>());
  return out;
}

int play_interactive(cs_session* s, std::ostream& out, std::size_t cap) {
  std::cerr << "You are player I. Enter an option number, a move such as\n"
               "  accept | letter a=1 | interrupt t=3/2 letter=1 kind=left\n"
               "or 'quit' to stop and adjudicate.\n";
  std::size_t steps = 0;
  while (!cs_session_finished(s) && steps < cap) {
    print_state(s);
    auto opts = option_lines(s);
    for (std::size_t k = 0; k < opts.size(); ++k)
      std::cerr << "  [" << k << "] " << opts[k] << "\n";
    std::cerr << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line) || line == "quit" || line == "q")
      break;
    if (line.empty())
      continue;
    std::string move;
    try {
      std::size_t used = 0;
      std::size_t k = std::stoul(line, &used);
      if (used == line.size() && k < opts.size())
        move = opts[k];
    } catch (const std::exception&) {
    }
    if (move.empty())
      move = normalise_move(line);
    Text t;
    cs_status st = cs_session_move(s, move.c_str(), &t.p);
    if (st == CS_ERR_ILLEGAL_MOVE || st == CS_ERR_PARSE) {
      std::cerr << "rejected: " << cs_last_error() << "\n";
      continue;
    }
    check(st);
    out << t.str() << std::flush;
    ++steps;
  }
  return finish(s, out);
}

int play_script(cs_session* s, std::istream& in, std::ostream& out) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.rfind("# repeat ", 0) == 0) {
      std::size_t p = 0;
      try {
        p = std::stoul(line.substr(9));
      } catch (const std::exception&) {
      }
      if (cs_session_declare_period(s, p) != CS_OK) {
        std::cerr << "script line " << n << ": " << cs_last_error() << "\n";
        return usage;
      }
      continue;
    }
    if (line.rfind("I ", 0) != 0)
      continue;
    if (cs_session_finished(s)) {
      std::cerr << "script line " << n << ": the play is already over\n";
      return failure;
    }
    Text t;
    cs_status st = cs_session_move(s, line.c_str(), &t.p);
    if (st != CS_OK)
      std::cerr << "script line " << n << ": ";
    check(st);
    out << t.str();
  }
  return finish(s, out);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time Church synthesis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--signature-cap", g.signature_cap, "Cap on monoid signatures");
  app.add_option("--strategy-cap", g.strategy_cap, "Cap on strategy checks");
  app.add_option("--round-cap", g.round_cap, "Cap on simulated play steps");
  app.add_option("--seed", g.seed, "Seed for randomised runs")->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the result to a file");
  app.add_flag("-v,--verbose", g.verbose, "Timing on standard error");

  std::string spec;
  std::string sem = "fv";
  auto add_spec = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("spec", spec, "Spec automaton (JSON)");
    if (required)
      opt->required()->check(CLI::ExistingFile);
    else
      opt->check(CLI::ExistingFile);
  };
  auto add_semantics = [&](CLI::App* c) {
    c->add_option("--semantics", sem, "Signal semantics")
        ->check(CLI::IsMember({"rc", "fv"}))
        ->capture_default_str();
  };

  auto* discrete = app.add_subcommand("solve-discrete", "Church synthesis over omega-words");
  add_spec(discrete);

  bool sc = false;
  auto* definable = app.add_subcommand("definable", "Definable causal operator for a D-spec");
  add_spec(definable);
  definable->add_flag("--sc", sc, "Ask for a strongly causal counter-operator instead");

  bool stats = false;
  auto* synth = app.add_subcommand("synth", "Continuous-time synthesis");
  add_spec(synth);
  add_semantics(synth);
  synth->add_option("--jobs", g.jobs, "Enumeration threads")->check(CLI::PositiveNumber);
  synth->add_flag("--stats", stats, "Report enumeration statistics");

  bool table = false;
  std::string table_sem;
  auto* monoid = app.add_subcommand("monoid", "State-string classes and UP(Q)");
  add_spec(monoid);
  monoid->add_flag("--table", table, "Print every class and UP member");
  monoid->add_option("--semantics", table_sem, "Use the arena table of this semantics")
      ->check(CLI::IsMember({"rc", "fv"}));

  bool dot = false;
  auto* arena = app.add_subcommand("arena", "Build the arena");
  add_spec(arena);
  add_semantics(arena);
  arena->add_flag("--dot", dot, "Graphviz output instead of JSON");

  bool interactive = false, example = false;
  std::string script;
  unsigned rounds = 32;
  auto* play = app.add_subcommand("play", "Play I against the synthesised strategy");
  add_spec(play, false);
  add_semantics(play);
  auto* i_flag = play->add_flag("--interactive", interactive, "Read I's moves from the terminal");
  auto* s_flag = play->add_option("--script", script, "Replay I's moves from a transcript")
                     ->check(CLI::ExistingFile);
  auto* e_flag = play->add_flag("--jump-example", example, "The scripted 2^-i jump play");
  i_flag->excludes(s_flag)->excludes(e_flag);
  s_flag->excludes(e_flag);
  play->add_option("--rounds", rounds, "Rounds of the scripted jump play")
      ->check(CLI::PositiveNumber);

  auto* fixtures = app.add_subcommand("check-fixtures", "Run the operator fixture suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = ok;
  try {
    Output sink(g.output);
    std::ostream& out = sink.out();
    cs_options o = options(g);
    Text t;
    if (discrete->parsed()) {
      check(cs_solve_discrete(load(spec).get(), &t.p));
      out << t.str();
    } else if (definable->parsed()) {
      check(cs_definable(load(spec).get(), sc ? 1 : 0, &t.p));
      out << t.str();
    } else if (synth->parsed()) {
      check(cs_synth(load(spec).get(), parse_semantics(sem), &o, stats ? 1 : 0, &t.p));
      out << t.str();
    } else if (monoid->parsed()) {
      int ts = table_sem.empty() ? -1 : parse_semantics(table_sem);
      check(cs_monoid(load(spec).get(), ts, &o, table ? 1 : 0, &t.p));
      out << t.str();
    } else if (arena->parsed()) {
      check(cs_arena(load(spec).get(), parse_semantics(sem), &o, dot ? 1 : 0, &t.p));
      out << t.str();
    } else if (play->parsed()) {
      if (example) {
        check(cs_jump_example(rounds, &t.p));
        out << t.str();
      } else {
        if (spec.empty())
          throw CLI::ValidationError("spec", "a spec file is required unless --jump-example");
        cs_session* raw = nullptr;
        check(cs_session_new(load(spec).get(), parse_semantics(sem), &o, &raw));
        Session s(raw, cs_session_free);
        if (interactive) {
          rc = play_interactive(s.get(), out, o.round_cap);
        } else if (!script.empty()) {
          std::ifstream in(script);
          rc = play_script(s.get(), in, out);
        } else {
          check(cs_session_autoplay(s.get(), g.seed, &t.p));
          out << t.str();
          rc = finish(s.get(), out);
        }
      }
    } else if (fixtures->parsed()) {
      check(cs_check_fixtures(&o, &t.p));
      out << t.str();
      if (t.str().find("\"passed\": false") != std::string::npos)
        rc = failure;
    }
  } catch (const Failed& f) {
    rc = f.code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = usage;
  }
  if (g.verbose)
    std::cerr << "elapsed "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << "s\n";
  return rc;
}
