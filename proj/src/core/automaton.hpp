#pragma once

#include "omega_word.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chronosynth {

enum class Convention { min_even, max_even };

const char* to_string(Convention c);
Convention convention_from_string(const std::string& s);

// Plain automata read one (input, output) letter per step. D-encoded automata
// read (point, interval) pairs: their input letters are named "x|y" over a
// base input alphabet, likewise for outputs, and both alphabets are full
// squares of their base alphabets.
enum class Encoding { plain, d };

// Deterministic, complete parity automaton over sigma_in x sigma_out.
// Letters are addressed by index; letter(in, out) = in * |sigma_out| + out.
class ParityAutomaton {
public:
  ParityAutomaton() = default; // no states; placeholder only
  ParityAutomaton(std::vector<std::string> states, std::vector<std::string> sigma_in,
                  std::vector<std::string> sigma_out, std::vector<int> transitions,
                  int initial, std::vector<int> priority, Convention convention,
                  Encoding encoding = Encoding::plain);

  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_inputs() const noexcept { return sigma_in_.size(); }
  std::size_t num_outputs() const noexcept { return sigma_out_.size(); }
  std::size_t num_letters() const noexcept { return num_inputs() * num_outputs(); }

  int letter(int in, int out) const {
    return in * static_cast<int>(num_outputs()) + out;
  }
  int letter_input(int letter) const { return letter / static_cast<int>(num_outputs()); }
  int letter_output(int letter) const { return letter % static_cast<int>(num_outputs()); }

  int next(int state, int letter) const {
    return transitions_[static_cast<std::size_t>(state) * num_letters() +
                        static_cast<std::size_t>(letter)];
  }
  int next(int state, int in, int out) const { return next(state, letter(in, out)); }

  int initial() const noexcept { return initial_; }
  int priority(int state) const { return priority_[static_cast<std::size_t>(state)]; }
  int max_priority() const;
  Convention convention() const noexcept { return convention_; }
  Encoding encoding() const noexcept { return encoding_; }

  const std::vector<std::string>& state_names() const noexcept { return states_; }
  const std::vector<std::string>& sigma_in() const noexcept { return sigma_in_; }
  const std::vector<std::string>& sigma_out() const noexcept { return sigma_out_; }
  const std::vector<int>& priorities() const noexcept { return priority_; }
  const std::vector<int>& transitions() const noexcept { return transitions_; }

  // E_a relations, one per input letter.
  PathContext path_context() const;

  // D-encoded automata only: base alphabets and letter decomposition.
  const std::vector<std::string>& base_in() const { return base_in_; }
  const std::vector<std::string>& base_out() const { return base_out_; }
  std::pair<int, int> split_input(int in) const { return d_in_[static_cast<std::size_t>(in)]; }
  std::pair<int, int> split_output(int out) const { return d_out_[static_cast<std::size_t>(out)]; }
  int d_input(int point, int interval) const;
  int d_output(int point, int interval) const;

private:
  std::vector<std::string> states_, sigma_in_, sigma_out_;
  std::vector<int> transitions_;
  int initial_ = 0;
  std::vector<int> priority_;
  Convention convention_ = Convention::max_even;
  Encoding encoding_ = Encoding::plain;
  std::vector<std::string> base_in_, base_out_;
  std::vector<std::pair<int, int>> d_in_, d_out_;
};

// Splits "x|y" letter names; returns nullopt when the name is not a pair.
std::optional<std::pair<std::string, std::string>> split_d_letter(const std::string& name);
std::string d_letter(const std::string& point, const std::string& interval);

using Run = LassoWord<int>;

// Word letters are combined letter indices. The returned run is normalized.
Run run_over(const ParityAutomaton& a, const LassoWord<int>& word);
bool accepts(const ParityAutomaton& a, const LassoWord<int>& word);
bool parity_accepting(const std::set<int>& priorities, Convention c);

// p -> M - p with M the least even number >= every priority.
ParityAutomaton convert_convention(const ParityAutomaton& a, Convention target);

// Restriction to states reachable from the initial state.
ParityAutomaton trim(const ParityAutomaton& a);

// Deterministic safety automaton over the same letters as an automaton, with a
// distinguished absorbing rejecting sink.
struct SafetyMonitor {
  std::vector<std::string> states;
  std::size_t num_letters = 0;
  std::vector<int> transitions; // [state * num_letters + letter]
  int initial = 0;
  int sink = 0;

  int next(int state, int letter) const {
    return transitions[static_cast<std::size_t>(state) * num_letters +
                       static_cast<std::size_t>(letter)];
  }
  static SafetyMonitor accept_all(std::size_t letters);
  static SafetyMonitor forbid_letter(std::size_t letters, int forbidden);
};

// Conjunction: product states that entered the sink get the worst priority.
// The result is in max_even convention.
ParityAutomaton product_with_monitor(const ParityAutomaton& a, const SafetyMonitor& m);
// Disjunction with the monitor's violation: sink states get the best priority.
ParityAutomaton union_with_violation(const ParityAutomaton& a, const SafetyMonitor& m);

// Semantic views used by the continuous-time pipeline.
//  rc_view: right-continuous reading. D automata read the diagonal letters
//           ((a,a),(b,b)); plain automata are returned unchanged.
//  fv_view: point/interval interleaved reading. D automata are split into two
//           steps through pending states of lowest priority; plain automata
//           are taken to already read the interleaved word.
// Both return max_even automata.
ParityAutomaton rc_view(const ParityAutomaton& a);
ParityAutomaton fv_view(const ParityAutomaton& a);

// JSON file format. Missing transitions complete to "__sink__".
ParityAutomaton automaton_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParityAutomaton& a);
ParityAutomaton load_automaton(const std::string& path);

} // namespace chronosynth
