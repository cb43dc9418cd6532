#include "fixtures.hpp"

#include <functional>

namespace chronosynth::fixtures {

namespace {

const std::vector<std::string> kD{"0|0", "0|1", "1|0", "1|1"};

struct DLetterView {
  int a, a2, b, b2;
};

// Builds a D automaton from named states and a transition rule over
// ((a, a'), (b, b')).
ParityAutomaton build_d(const std::vector<std::string>& states, const std::vector<int>& priority,
                        const std::function<int(int, const DLetterView&)>& rule) {
  std::vector<int> tr;
  for (std::size_t q = 0; q < states.size(); ++q)
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        tr.push_back(rule(static_cast<int>(q), DLetterView{x / 2, x % 2, y / 2, y % 2}));
  return ParityAutomaton(states, kD, kD, tr, 0, priority, Convention::max_even, Encoding::d);
}

} // namespace

ParityAutomaton psi_copy() {
  return build_d({"ok", "bad"}, {0, 1}, [](int q, const DLetterView& l) {
    return q == 0 && l.a == l.b && l.a2 == l.b2 ? 0 : 1;
  });
}

ParityAutomaton psi_jump() {
  // init, wait_0, wait_1 (last output interval value), done
  return build_d({"init", "wait_0", "wait_1", "done"}, {1, 1, 1, 2},
                 [](int q, const DLetterView& l) {
                   if (q == 3)
                     return 3;
                   if (q == 0)
                     return 1 + l.b2;
                   int z = q - 1;
                   if (z != l.b || l.b != l.b2)
                     return 3;
                   return 1 + l.b2;
                 });
}

ParityAutomaton psi_indet() {
  // init, track(v, z) for X's value v on (0, t] and the last output interval
  // value z, then absorbing accept / reject
  std::vector<std::string> names{"init"};
  for (int v = 0; v < 2; ++v)
    for (int z = 0; z < 2; ++z)
      names.push_back("track_" + std::to_string(v) + std::to_string(z));
  names.push_back("accept");
  names.push_back("reject");
  const int accept = 5, reject = 6;
  auto track = [](int v, int z) { return 1 + 2 * v + z; };
  return build_d(names, {1, 1, 1, 1, 1, 2, 1}, [&](int q, const DLetterView& l) {
    if (q == accept || q == reject)
      return q;
    if (q == 0)
      return track(l.a2, l.b2);
    int v = (q - 1) / 2, z = (q - 1) % 2;
    if (l.a != v)
      return reject;
    if (z != l.b || l.b != l.b2)
      return accept;
    if (l.a2 != v)
      return reject;
    return track(v, l.b2);
  });
}

ParityAutomaton one_state() {
  return ParityAutomaton({"q"}, {"0", "1"}, {"0", "1"}, {0, 0, 0, 0}, 0, {0},
                         Convention::max_even);
}

ParityAutomaton predict_next() {
  std::vector<int> tr;
  for (int q = 0; q < 4; ++q)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        if (q == 3)
          tr.push_back(3);
        else if (q == 0 || x == q - 1)
          tr.push_back(1 + y);
        else
          tr.push_back(3);
      }
  return ParityAutomaton({"init", "said_0", "said_1", "wrong"}, {"0", "1"}, {"0", "1"}, tr, 0,
                         {0, 0, 0, 1}, Convention::max_even);
}

ParityAutomaton copy_plain() {
  return ParityAutomaton({"ok", "bad"}, {"0", "1"}, {"0", "1"}, {0, 1, 1, 0, 1, 1, 1, 1}, 0,
                         {0, 1}, Convention::max_even);
}

} // namespace chronosynth::fixtures
