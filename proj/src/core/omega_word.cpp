#include "omega_word.hpp"

#include <cctype>

namespace chronosynth {

namespace {

std::vector<std::string> tokenize(std::string_view s, bool separated) {
  std::vector<std::string> out;
  if (!separated) {
    for (char c : s)
      out.emplace_back(1, c);
    return out;
  }
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty())
        out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty())
    out.push_back(std::move(cur));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

LassoWord<std::string> parse_lasso(std::string_view text) {
  std::string_view s = trim(text);
  auto open = s.find('(');
  auto close = s.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open)
    throw ParseError("lasso '" + std::string(text) + "' must have the form u(v)^w");
  auto tail = trim(s.substr(close + 1));
  if (tail != "^w" && tail != "^omega" && tail != "^ω")
    throw ParseError("lasso '" + std::string(text) + "' must end with ^w");
  auto u = s.substr(0, open);
  auto v = s.substr(open + 1, close - open - 1);
  bool separated = false;
  for (char c : s.substr(0, close))
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
      separated = true;
  auto pu = tokenize(separated ? u : trim(u), separated);
  auto pv = tokenize(separated ? v : trim(v), separated);
  if (pv.empty())
    throw ParseError("lasso '" + std::string(text) + "' has an empty period");
  return LassoWord<std::string>(std::move(pu), std::move(pv));
}

std::string format_lasso(const LassoWord<std::string>& w) {
  bool separated = false;
  for (const auto& x : w.prefix())
    separated |= x.size() != 1;
  for (const auto& x : w.period())
    separated |= x.size() != 1;
  std::string out;
  auto emit = [&](const std::vector<std::string>& part) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (separated && i > 0)
        out += ' ';
      out += part[i];
    }
  };
  emit(w.prefix());
  if (separated && !w.prefix().empty())
    out += ' ';
  out += '(';
  emit(w.period());
  out += ")^w";
  return out;
}

LassoWord<int> index_lasso(const LassoWord<std::string>& w,
                           const std::vector<std::string>& alphabet) {
  return map_letters(w, [&](const std::string& name) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end())
      throw DomainError("letter '" + name + "' is not in the alphabet");
    return static_cast<int>(it - alphabet.begin());
  });
}

LassoWord<std::string> name_lasso(const LassoWord<int>& w,
                                  const std::vector<std::string>& alphabet) {
  return map_letters(w, [&](int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= alphabet.size())
      throw DomainError("letter index out of range");
    return alphabet[static_cast<std::size_t>(i)];
  });
}

PathContext PathContext::complete(std::size_t states, std::size_t letters) {
  PathContext ctx;
  ctx.num_states = states;
  ctx.num_letters = letters;
  std::uint64_t all = states >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << states) - 1;
  ctx.edges.assign(letters, std::vector<std::uint64_t>(states, all));
  return ctx;
}

std::uint64_t path_flags(const std::vector<int>& states, const PathContext& ctx) {
  std::uint64_t flags = ctx.all_letters();
  for (std::size_t i = 0; i + 1 < states.size() && flags; ++i)
    for (std::size_t a = 0; a < ctx.num_letters; ++a)
      if (!ctx.enabled(a, states[i], states[i + 1]))
        flags &= ~(std::uint64_t{1} << a);
  return flags;
}

std::uint64_t lasso_path_flags(const LassoWord<int>& w, const PathContext& ctx) {
  // Every consecutive pair of the omega-word occurs in prefix.period.period.
  return path_flags(w.unfold(w.prefix().size() + 2 * w.period().size()), ctx);
}

std::set<std::pair<int, std::uint64_t>> prefix_pairs(const LassoWord<int>& w) {
  std::set<std::pair<int, std::uint64_t>> pairs;
  std::uint64_t seen = 0;
  for (int q : w.unfold(w.prefix().size() + 2 * w.period().size())) {
    pairs.emplace(q, seen);
    seen |= std::uint64_t{1} << q;
  }
  return pairs;
}

bool omega_equivalent(const LassoWord<int>& a, const LassoWord<int>& b,
                      const PathContext& ctx) {
  return inf_set(a) == inf_set(b) && prefix_pairs(a) == prefix_pairs(b) &&
         lasso_path_flags(a, ctx) == lasso_path_flags(b, ctx);
}

} // namespace chronosynth
