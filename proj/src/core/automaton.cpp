#include "automaton.hpp"

#include <fstream>
#include <map>
#include <queue>

namespace chronosynth {

using nlohmann::json;

const char* to_string(Convention c) {
  return c == Convention::min_even ? "min_even" : "max_even";
}

Convention convention_from_string(const std::string& s) {
  if (s == "min_even")
    return Convention::min_even;
  if (s == "max_even")
    return Convention::max_even;
  throw ParseError("unknown parity convention '" + s + "'");
}

std::optional<std::pair<std::string, std::string>> split_d_letter(const std::string& name) {
  auto bar = name.find('|');
  if (bar == std::string::npos || bar == 0 || bar + 1 == name.size() ||
      name.find('|', bar + 1) != std::string::npos)
    return std::nullopt;
  return std::make_pair(name.substr(0, bar), name.substr(bar + 1));
}

std::string d_letter(const std::string& point, const std::string& interval) {
  return point + "|" + interval;
}

namespace {

int index_of(const std::vector<std::string>& v, const std::string& x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

// Decomposes a D alphabet; the base alphabet is ordered by first appearance.
void split_alphabet(const std::vector<std::string>& sigma, std::vector<std::string>& base,
                    std::vector<std::pair<int, int>>& parts) {
  base.clear();
  parts.clear();
  std::vector<std::pair<std::string, std::string>> names;
  for (const auto& s : sigma) {
    auto p = split_d_letter(s);
    if (!p)
      throw DomainError("letter '" + s + "' of a D-encoded automaton is not of the form x|y");
    names.push_back(*p);
    for (const auto& c : {p->first, p->second})
      if (index_of(base, c) < 0)
        base.push_back(c);
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [x, y] : names) {
    std::pair<int, int> ij{index_of(base, x), index_of(base, y)};
    if (!seen.insert(ij).second)
      throw DomainError("duplicate D letter '" + d_letter(x, y) + "'");
    parts.push_back(ij);
  }
  if (sigma.size() != base.size() * base.size())
    throw DomainError("D-encoded alphabet is not a full square of its base alphabet");
}

} // namespace

ParityAutomaton::ParityAutomaton(std::vector<std::string> states,
                                 std::vector<std::string> sigma_in,
                                 std::vector<std::string> sigma_out,
                                 std::vector<int> transitions, int initial,
                                 std::vector<int> priority, Convention convention,
                                 Encoding encoding)
    : states_(std::move(states)), sigma_in_(std::move(sigma_in)),
      sigma_out_(std::move(sigma_out)), transitions_(std::move(transitions)),
      initial_(initial), priority_(std::move(priority)), convention_(convention),
      encoding_(encoding) {
  if (states_.empty())
    throw DomainError("automaton has no states");
  if (sigma_in_.empty() || sigma_out_.empty())
    throw DomainError("automaton alphabets must be nonempty");
  if (states_.size() > 64)
    throw DomainError("automata are limited to 64 states");
  if (sigma_in_.size() > 64)
    throw DomainError("input alphabets are limited to 64 letters");
  if (transitions_.size() != num_states() * num_letters())
    throw DomainError("transition table has the wrong size");
  if (priority_.size() != num_states())
    throw DomainError("priority table has the wrong size");
  if (initial_ < 0 || static_cast<std::size_t>(initial_) >= num_states())
    throw DomainError("initial state out of range");
  for (int t : transitions_)
    if (t < 0 || static_cast<std::size_t>(t) >= num_states())
      throw DomainError("transition target out of range");
  for (int p : priority_)
    if (p < 0)
      throw DomainError("priorities must be non-negative");
  if (encoding_ == Encoding::d) {
    split_alphabet(sigma_in_, base_in_, d_in_);
    split_alphabet(sigma_out_, base_out_, d_out_);
  }
}

int ParityAutomaton::max_priority() const {
  return *std::max_element(priority_.begin(), priority_.end());
}

PathContext ParityAutomaton::path_context() const {
  PathContext ctx;
  ctx.num_states = num_states();
  ctx.num_letters = num_inputs();
  ctx.edges.assign(num_inputs(), std::vector<std::uint64_t>(num_states(), 0));
  for (std::size_t q = 0; q < num_states(); ++q)
    for (std::size_t a = 0; a < num_inputs(); ++a)
      for (std::size_t b = 0; b < num_outputs(); ++b)
        ctx.edges[a][q] |= std::uint64_t{1}
                           << next(static_cast<int>(q), static_cast<int>(a), static_cast<int>(b));
  return ctx;
}

int ParityAutomaton::d_input(int point, int interval) const {
  for (std::size_t i = 0; i < d_in_.size(); ++i)
    if (d_in_[i] == std::make_pair(point, interval))
      return static_cast<int>(i);
  throw DomainError("automaton is not D-encoded");
}

int ParityAutomaton::d_output(int point, int interval) const {
  for (std::size_t i = 0; i < d_out_.size(); ++i)
    if (d_out_[i] == std::make_pair(point, interval))
      return static_cast<int>(i);
  throw DomainError("automaton is not D-encoded");
}

Run run_over(const ParityAutomaton& a, const LassoWord<int>& word) {
  for (const auto* part : {&word.prefix(), &word.period()})
    for (int l : *part)
      if (l < 0 || static_cast<std::size_t>(l) >= a.num_letters())
        throw DomainError("word letter outside the automaton alphabet");
  // Simulate the prefix, then whole periods until the state at a period
  // boundary repeats.
  std::vector<int> states{a.initial()};
  int q = a.initial();
  for (int l : word.prefix()) {
    q = a.next(q, l);
    states.push_back(q);
  }
  std::map<int, std::size_t> boundary; // state at period start -> index in states
  const auto& v = word.period();
  while (!boundary.count(q)) {
    boundary[q] = states.size() - 1;
    for (int l : v) {
      q = a.next(q, l);
      states.push_back(q);
    }
  }
  // states[boundary[q]] == states.back(): the run repeats from there.
  std::size_t start = boundary[q];
  std::vector<int> prefix(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(start));
  std::vector<int> period(states.begin() + static_cast<std::ptrdiff_t>(start), states.end() - 1);
  return normalize(Run(std::move(prefix), std::move(period)));
}

bool parity_accepting(const std::set<int>& priorities, Convention c) {
  if (priorities.empty())
    throw DomainError("empty priority set");
  int p = c == Convention::min_even ? *priorities.begin() : *priorities.rbegin();
  return p % 2 == 0;
}

bool accepts(const ParityAutomaton& a, const LassoWord<int>& word) {
  Run r = run_over(a, word);
  std::set<int> prios;
  for (int q : r.period())
    prios.insert(a.priority(q));
  return parity_accepting(prios, a.convention());
}

ParityAutomaton convert_convention(const ParityAutomaton& a, Convention target) {
  if (a.convention() == target)
    return a;
  int m = a.max_priority();
  if (m % 2)
    ++m;
  std::vector<int> pr;
  for (int p : a.priorities())
    pr.push_back(m - p);
  return ParityAutomaton(a.state_names(), a.sigma_in(), a.sigma_out(), a.transitions(),
                         a.initial(), std::move(pr), target, a.encoding());
}

ParityAutomaton trim(const ParityAutomaton& a) {
  std::vector<int> id(a.num_states(), -1);
  std::vector<int> order;
  std::queue<int> work;
  id[static_cast<std::size_t>(a.initial())] = 0;
  order.push_back(a.initial());
  work.push(a.initial());
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (std::size_t l = 0; l < a.num_letters(); ++l) {
      int r = a.next(q, static_cast<int>(l));
      if (id[static_cast<std::size_t>(r)] < 0) {
        id[static_cast<std::size_t>(r)] = static_cast<int>(order.size());
        order.push_back(r);
        work.push(r);
      }
    }
  }
  if (order.size() == a.num_states())
    return a;
  std::vector<std::string> names;
  std::vector<int> pr, tr;
  for (int q : order) {
    names.push_back(a.state_names()[static_cast<std::size_t>(q)]);
    pr.push_back(a.priority(q));
    for (std::size_t l = 0; l < a.num_letters(); ++l)
      tr.push_back(id[static_cast<std::size_t>(a.next(q, static_cast<int>(l)))]);
  }
  return ParityAutomaton(std::move(names), a.sigma_in(), a.sigma_out(), std::move(tr), 0,
                         std::move(pr), a.convention(), a.encoding());
}

SafetyMonitor SafetyMonitor::accept_all(std::size_t letters) {
  SafetyMonitor m;
  m.states = {"ok", "violated"};
  m.num_letters = letters;
  m.transitions.assign(2 * letters, 0);
  std::fill(m.transitions.begin() + static_cast<std::ptrdiff_t>(letters), m.transitions.end(), 1);
  m.initial = 0;
  m.sink = 1;
  return m;
}

SafetyMonitor SafetyMonitor::forbid_letter(std::size_t letters, int forbidden) {
  SafetyMonitor m = accept_all(letters);
  m.transitions[static_cast<std::size_t>(forbidden)] = 1;
  return m;
}

namespace {

ParityAutomaton combine(const ParityAutomaton& in, const SafetyMonitor& m, bool conjunction) {
  if (m.num_letters != in.num_letters())
    throw DomainError("monitor alphabet does not match the automaton");
  ParityAutomaton a = convert_convention(in, Convention::max_even);
  int top = a.max_priority();
  int sink_priority = conjunction ? (top % 2 ? top : top + 1) : (top % 2 ? top + 1 : top);

  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  auto lookup = [&](int q, int s) {
    if (s == m.sink)
      q = 0; // the automaton component is irrelevant once the monitor fails
    auto [it, fresh] = id.emplace(std::make_pair(q, s), static_cast<int>(order.size()));
    if (fresh)
      order.emplace_back(q, s);
    return it->second;
  };
  int init = lookup(a.initial(), m.initial);
  std::vector<int> tr;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto [q, s] = order[k];
    for (std::size_t l = 0; l < a.num_letters(); ++l) {
      int ns = m.next(s, static_cast<int>(l));
      tr.push_back(lookup(a.next(q, static_cast<int>(l)), ns));
    }
  }
  std::vector<std::string> names;
  std::vector<int> pr;
  for (auto [q, s] : order) {
    if (s == m.sink) {
      names.push_back("!" + m.states[static_cast<std::size_t>(s)]);
      pr.push_back(sink_priority);
    } else {
      names.push_back(a.state_names()[static_cast<std::size_t>(q)] + "&" +
                      m.states[static_cast<std::size_t>(s)]);
      pr.push_back(a.priority(q));
    }
  }
  return ParityAutomaton(std::move(names), a.sigma_in(), a.sigma_out(), std::move(tr), init,
                         std::move(pr), Convention::max_even, a.encoding());
}

} // namespace

ParityAutomaton product_with_monitor(const ParityAutomaton& a, const SafetyMonitor& m) {
  return combine(a, m, true);
}

ParityAutomaton union_with_violation(const ParityAutomaton& a, const SafetyMonitor& m) {
  return combine(a, m, false);
}

ParityAutomaton rc_view(const ParityAutomaton& in) {
  ParityAutomaton a = convert_convention(in, Convention::max_even);
  if (a.encoding() != Encoding::d)
    return a;
  std::size_t ni = a.base_in().size(), no = a.base_out().size();
  std::vector<int> tr;
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t x = 0; x < ni; ++x)
      for (std::size_t y = 0; y < no; ++y)
        tr.push_back(a.next(static_cast<int>(q),
                            a.d_input(static_cast<int>(x), static_cast<int>(x)),
                            a.d_output(static_cast<int>(y), static_cast<int>(y))));
  return ParityAutomaton(a.state_names(), a.base_in(), a.base_out(), std::move(tr), a.initial(),
                         a.priorities(), Convention::max_even);
}

ParityAutomaton fv_view(const ParityAutomaton& in) {
  ParityAutomaton a = convert_convention(in, Convention::max_even);
  if (a.encoding() != Encoding::d)
    return a;
  std::size_t ni = a.base_in().size(), no = a.base_out().size();
  std::size_t letters = ni * no;
  std::size_t n = a.num_states();

  // Pending states remember (q, point letter); identical continuation rows
  // share a state.
  std::map<std::vector<int>, int> mid_of_row;
  std::vector<std::vector<int>> mid_rows;
  std::vector<std::string> mid_names;
  std::vector<int> tr(n * letters);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t x = 0; x < ni; ++x)
      for (std::size_t y = 0; y < no; ++y) {
        std::vector<int> row;
        for (std::size_t x2 = 0; x2 < ni; ++x2)
          for (std::size_t y2 = 0; y2 < no; ++y2)
            row.push_back(a.next(static_cast<int>(q),
                                 a.d_input(static_cast<int>(x), static_cast<int>(x2)),
                                 a.d_output(static_cast<int>(y), static_cast<int>(y2))));
        auto [it, fresh] = mid_of_row.emplace(row, static_cast<int>(n + mid_rows.size()));
        if (fresh) {
          mid_rows.push_back(row);
          mid_names.push_back(a.state_names()[q] + "/" + a.base_in()[x] + ":" + a.base_out()[y]);
        }
        tr[q * letters + x * no + y] = it->second;
      }
  std::vector<std::string> names = a.state_names();
  names.insert(names.end(), mid_names.begin(), mid_names.end());
  std::vector<int> pr = a.priorities();
  pr.resize(names.size(), 0);
  for (const auto& row : mid_rows)
    tr.insert(tr.end(), row.begin(), row.end());
  return ParityAutomaton(std::move(names), a.base_in(), a.base_out(), std::move(tr), a.initial(),
                         std::move(pr), Convention::max_even);
}

ParityAutomaton automaton_from_json(const json& j) {
  try {
    auto states = j.at("states").get<std::vector<std::string>>();
    auto sigma_in = j.at("sigma_in").get<std::vector<std::string>>();
    auto sigma_out = j.at("sigma_out").get<std::vector<std::string>>();
    auto conv = convention_from_string(j.value("convention", std::string("min_even")));
    Encoding enc = Encoding::plain;
    if (j.contains("encoding")) {
      auto e = j.at("encoding").get<std::string>();
      if (e == "D")
        enc = Encoding::d;
      else if (e != "plain")
        throw ParseError("unknown encoding '" + e + "'");
    }
    const auto& pj = j.at("priority");
    std::vector<int> pr;
    for (const auto& s : states) {
      if (!pj.contains(s))
        throw ParseError("state '" + s + "' has no priority");
      pr.push_back(pj.at(s).get<int>());
    }
    std::size_t no = sigma_out.size();
    std::size_t letters = sigma_in.size() * no;
    std::vector<int> tr(states.size() * letters, -1);
    auto state_index = [&](const std::string& s) {
      int i = index_of(states, s);
      if (i < 0)
        throw ParseError("unknown state '" + s + "'");
      return i;
    };
    for (const auto& t : j.at("transitions")) {
      int from = state_index(t.at("from").get<std::string>());
      int to = state_index(t.at("to").get<std::string>());
      int in = index_of(sigma_in, t.at("in").get<std::string>());
      int out = index_of(sigma_out, t.at("out").get<std::string>());
      if (in < 0 || out < 0)
        throw ParseError("transition letter outside the alphabet");
      auto& slot = tr[static_cast<std::size_t>(from) * letters +
                      static_cast<std::size_t>(in) * no + static_cast<std::size_t>(out)];
      if (slot >= 0 && slot != to)
        throw DomainError("automaton is nondeterministic at state '" +
                          states[static_cast<std::size_t>(from)] + "'");
      slot = to;
    }
    if (std::find(tr.begin(), tr.end(), -1) != tr.end()) {
      int sink = index_of(states, "__sink__");
      if (sink < 0) {
        sink = static_cast<int>(states.size());
        states.push_back("__sink__");
        pr.push_back(1);
        tr.resize(states.size() * letters, sink);
      }
      for (auto& t : tr)
        if (t < 0)
          t = sink;
    }
    int init = state_index(j.at("initial").get<std::string>());
    return convert_convention(ParityAutomaton(std::move(states), std::move(sigma_in),
                                              std::move(sigma_out), std::move(tr), init,
                                              std::move(pr), conv, enc),
                              Convention::max_even);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed automaton: ") + e.what());
  }
}

json to_json(const ParityAutomaton& a) {
  json j;
  j["states"] = a.state_names();
  j["sigma_in"] = a.sigma_in();
  j["sigma_out"] = a.sigma_out();
  j["initial"] = a.state_names()[static_cast<std::size_t>(a.initial())];
  j["convention"] = to_string(a.convention());
  if (a.encoding() == Encoding::d)
    j["encoding"] = "D";
  json pr = json::object();
  for (std::size_t q = 0; q < a.num_states(); ++q)
    pr[a.state_names()[q]] = a.priority(static_cast<int>(q));
  j["priority"] = pr;
  json tr = json::array();
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t x = 0; x < a.num_inputs(); ++x)
      for (std::size_t y = 0; y < a.num_outputs(); ++y)
        tr.push_back({{"from", a.state_names()[q]},
                      {"in", a.sigma_in()[x]},
                      {"out", a.sigma_out()[y]},
                      {"to", a.state_names()[static_cast<std::size_t>(
                                 a.next(static_cast<int>(q), static_cast<int>(x),
                                        static_cast<int>(y)))]}});
  j["transitions"] = tr;
  return j;
}

ParityAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  return automaton_from_json(j);
}

} // namespace chronosynth
