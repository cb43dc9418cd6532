#include "chronosynth/chronosynth.h"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string spec_path(const char* name) { return std::string(CHRONOSYNTH_SPEC_DIR) + "/" + name; }

struct Loaded {
  cs_automaton* a = nullptr;
  explicit Loaded(const char* name) { REQUIRE(cs_automaton_load(spec_path(name).c_str(), &a) == CS_OK); }
  ~Loaded() { cs_automaton_free(a); }
};

json take(char* p) {
  REQUIRE(p != nullptr);
  std::string s(p);
  cs_string_free(p);
  return json::parse(s);
}

std::string take_text(char* p) {
  std::string s(p ? p : "");
  cs_string_free(p);
  return s;
}

} // namespace

TEST_CASE("loading and error reporting") {
  cs_automaton* a = nullptr;
  CHECK(cs_automaton_load("/nonexistent.json", &a) == CS_ERR_IO);
  CHECK(std::string(cs_last_error()).find("nonexistent") != std::string::npos);
  CHECK(cs_automaton_from_json("{not json", &a) == CS_ERR_PARSE);
  CHECK(cs_automaton_from_json(R"({"states": []})", &a) != CS_OK);
  CHECK(cs_automaton_from_json(nullptr, &a) == CS_ERR_ARGUMENT);
  Loaded one("one_state.json");
  char* out = nullptr;
  REQUIRE(cs_automaton_to_json(one.a, &out) == CS_OK);
  auto j = take(out);
  cs_automaton* back = nullptr;
  REQUIRE(cs_automaton_from_json(j.dump().c_str(), &back) == CS_OK);
  cs_automaton_free(back);
}

TEST_CASE("verdicts through the C interface") {
  Loaded copy("psi_copy.json"), jump("psi_jump.json"), indet("psi_indet.json");
  char* out = nullptr;
  REQUIRE(cs_definable(jump.a, 0, &out) == CS_OK);
  CHECK(take(out)["definable"] == false);
  REQUIRE(cs_definable(copy.a, 0, &out) == CS_OK);
  CHECK(take(out)["definable"] == true);
  REQUIRE(cs_synth(jump.a, CS_FV, nullptr, 1, &out) == CS_OK);
  auto j = take(out);
  CHECK(j["realizable"] == true);
  CHECK(j["stats"]["strategies_checked"].get<std::size_t>() > 0);
  REQUIRE(cs_synth(indet.a, CS_RC, nullptr, 0, &out) == CS_OK);
  j = take(out);
  CHECK(j["realizable"] == false);
  CHECK(j["witness"].is_null());
  CHECK(cs_synth(indet.a, static_cast<cs_semantics>(7), nullptr, 0, &out) == CS_ERR_ARGUMENT);
}

TEST_CASE("caps surface as resource errors") {
  Loaded indet("psi_indet.json");
  cs_options o;
  REQUIRE(cs_options_default(&o) == CS_OK);
  o.strategy_cap = 2;
  char* out = nullptr;
  CHECK(cs_synth(indet.a, CS_FV, &o, 0, &out) == CS_ERR_RESOURCE);
  CHECK(cs_last_error_progress() == 2);
  o = cs_options{};
  REQUIRE(cs_options_default(&o) == CS_OK);
  o.signature_cap = 1;
  CHECK(cs_monoid(indet.a, -1, &o, 0, &out) == CS_ERR_RESOURCE);
}

TEST_CASE("monoid of the one-state automaton") {
  Loaded one("one_state.json");
  char* out = nullptr;
  REQUIRE(cs_monoid(one.a, -1, nullptr, 1, &out) == CS_OK);
  auto j = take(out);
  CHECK(j["classes"] == 2);
  CHECK(j["d_Q"] == 2);
  CHECK(j["idempotents"] == 1);
  CHECK(j["table"].size() == 2);
}

TEST_CASE("arena output is deterministic") {
  Loaded one("one_state.json");
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(cs_arena(one.a, CS_RC, nullptr, 1, &a) == CS_OK);
  REQUIRE(cs_arena(one.a, CS_RC, nullptr, 1, &b) == CS_OK);
  auto sa = take_text(a), sb = take_text(b);
  CHECK(sa == sb);
  CHECK(sa.rfind("digraph arena {", 0) == 0);
}

TEST_CASE("sessions") {
  Loaded copy("psi_copy.json"), indet("psi_indet.json");
  cs_session* s = nullptr;
  CHECK(cs_session_new(indet.a, CS_RC, nullptr, &s) == CS_ERR_DOMAIN);
  REQUIRE(cs_session_new(copy.a, CS_RC, nullptr, &s) == CS_OK);
  char* out = nullptr;
  REQUIRE(cs_session_state(s, &out) == CS_OK);
  auto st = take(out);
  CHECK(st["node"] == "new");
  REQUIRE(st["options"].size() == 2);
  REQUIRE(cs_session_move(s, st["options"][0]["line"].get<std::string>().c_str(), &out) == CS_OK);
  auto lines = take_text(out);
  CHECK(lines.find("O block") != std::string::npos);
  CHECK(cs_session_move(s, "I interrupt t=0 letter=1", &out) == CS_ERR_ILLEGAL_MOVE);
  CHECK(cs_session_move(s, "I fly", &out) == CS_ERR_PARSE);
  CHECK(cs_session_adjudicate(s, &out) == CS_ERR_UNDECIDED);
  REQUIRE(cs_session_move(s, "I accept", &out) == CS_OK);
  take_text(out);
  CHECK(cs_session_finished(s) == 1);
  REQUIRE(cs_session_adjudicate(s, &out) == CS_OK);
  auto verdict = take(out);
  CHECK(verdict["winner"] == "O");
  CHECK(verdict["reason"] == "accepted_final");
  cs_session_free(s);
}

TEST_CASE("autoplay against the identity witness") {
  Loaded copy("psi_copy.json");
  for (unsigned long long seed = 0; seed < 20; ++seed) {
    cs_session* s = nullptr;
    REQUIRE(cs_session_new(copy.a, CS_FV, nullptr, &s) == CS_OK);
    char* out = nullptr;
    REQUIRE(cs_session_autoplay(s, seed, &out) == CS_OK);
    take_text(out);
    REQUIRE(cs_session_adjudicate(s, &out) == CS_OK);
    CHECK(take(out)["winner"] == "O");
    cs_session_free(s);
  }
}

TEST_CASE("fixture suite and the jump example") {
  char* out = nullptr;
  REQUIRE(cs_jump_example(10, &out) == CS_OK);
  auto j = take(out);
  CHECK(j["duration"] == "1023/512");
  CHECK(j["below_2"] == true);
  cs_options o;
  REQUIRE(cs_options_default(&o) == CS_OK);
  o.seed = 11;
  REQUIRE(cs_check_fixtures(&o, &out) == CS_OK);
  j = take(out);
  CHECK(j["passed"] == true);
  for (const auto& c : j["checks"])
    CHECK(c["passed"] == true);
}
