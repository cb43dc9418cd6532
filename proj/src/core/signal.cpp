#include "signal.hpp"

#include <algorithm>

namespace chronosynth {

using nlohmann::json;

namespace {

void check_pieces(const std::vector<Piece>& pieces, const char* what) {
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (!(pieces[i - 1].at < pieces[i].at))
      throw DomainError(std::string(what) + " times must be strictly increasing");
}

// Last piece with at <= t (or < t when strict); pieces are sorted.
const Piece* last_piece(const std::vector<Piece>& pieces, const Rational& t, bool strict) {
  const Piece* found = nullptr;
  for (const auto& p : pieces) {
    if (strict ? !(p.at < t) : (t < p.at))
      break;
    found = &p;
  }
  return found;
}

void check_time(const Rational& t) {
  if (t < 0)
    throw DomainError("negative time " + to_string(t));
}

} // namespace

FVSignal::FVSignal(std::vector<Piece> head, std::optional<PeriodicTail> tail)
    : head_(std::move(head)), tail_(std::move(tail)) {
  check_pieces(head_, "breakpoint");
  if (!head_.empty() && head_.front().at != 0)
    throw DomainError("the first breakpoint must be 0");
  if (tail_) {
    if (tail_->delta <= 0)
      throw DomainError("periodic tails need a positive period");
    if (tail_->block.empty() || tail_->block.front().at != 0)
      throw DomainError("a periodic block must start at offset 0");
    check_pieces(tail_->block, "block offset");
    if (!(tail_->block.back().at < tail_->delta))
      throw DomainError("block offsets must lie inside the period");
    if (head_.empty() ? tail_->start != 0 : !(head_.back().at < tail_->start))
      throw DomainError("the periodic tail must start after the last breakpoint");
  } else if (head_.empty()) {
    throw DomainError("a signal needs at least one breakpoint");
  }
}

FVSignal FVSignal::constant(int v) { return FVSignal({Piece{Rational(0), v, v}}); }

Piece FVSignal::piece_at(const Rational& t) const {
  check_time(t);
  if (tail_ && t >= tail_->start) {
    Rational k(floor_div(t - tail_->start, tail_->delta));
    Rational base = tail_->start + k * tail_->delta;
    const Piece* p = last_piece(tail_->block, t - base, false);
    return Piece{base + p->at, p->point, p->after};
  }
  return *last_piece(head_, t, false);
}

std::vector<Piece> FVSignal::pieces_until(const Rational& horizon) const {
  std::vector<Piece> out;
  for (const auto& p : head_)
    if (p.at <= horizon)
      out.push_back(p);
  if (tail_)
    for (Rational base = tail_->start; base <= horizon; base += tail_->delta)
      for (const auto& p : tail_->block)
        if (base + p.at <= horizon)
          out.push_back(Piece{base + p.at, p.point, p.after});
  return out;
}

Rational FVSignal::settle_time() const { return tail_ ? tail_->start : head_.back().at; }

std::optional<Rational> FVSignal::period() const {
  if (tail_)
    return tail_->delta;
  return std::nullopt;
}

int value_at(const FVSignal& s, const Rational& t) {
  Piece p = s.piece_at(t);
  return p.at == t ? p.point : p.after;
}

int right_limit(const FVSignal& s, const Rational& t) { return s.piece_at(t).after; }

int left_limit(const FVSignal& s, const Rational& t) {
  check_time(t);
  if (t == 0)
    throw DomainError("no left limit at 0");
  const auto& tail = s.tail();
  if (tail && t > tail->start) {
    Rational k(floor_div(t - tail->start, tail->delta));
    Rational off = t - tail->start - k * tail->delta;
    if (off > 0)
      return last_piece(tail->block, off, true)->after;
    if (k > 0)
      return tail->block.back().after;
  }
  return last_piece(s.head(), t, true)->after;
}

bool is_left_continuous_at(const FVSignal& s, const Rational& t) {
  check_time(t);
  return t == 0 || left_limit(s, t) == value_at(s, t);
}

bool is_right_continuous_at(const FVSignal& s, const Rational& t) {
  return value_at(s, t) == right_limit(s, t);
}

bool jumps_at(const FVSignal& s, const Rational& t) {
  check_time(t);
  return t == 0 || !is_left_continuous_at(s, t) || !is_right_continuous_at(s, t);
}

std::vector<Rational> jump_points(const FVSignal& s, const Rational& horizon) {
  std::vector<Rational> out{Rational(0)};
  for (const auto& p : s.pieces_until(horizon))
    if (p.at > 0 && jumps_at(s, p.at))
      out.push_back(p.at);
  return out;
}

bool signals_equal(const FVSignal& a, const FVSignal& b) {
  Rational settle = std::max(a.settle_time(), b.settle_time());
  Rational period = 1;
  if (a.period() && b.period())
    period = rlcm(*a.period(), *b.period());
  else if (a.period())
    period = *a.period();
  else if (b.period())
    period = *b.period();
  Rational horizon = settle + period;
  std::vector<Rational> points{horizon};
  for (const auto* s : {&a, &b})
    for (const auto& p : s->pieces_until(horizon))
      points.push_back(p.at);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (value_at(a, points[i]) != value_at(b, points[i]))
      return false;
    if (i + 1 < points.size()) {
      Rational mid = (points[i] + points[i + 1]) / 2;
      if (value_at(a, mid) != value_at(b, mid))
        return false;
    }
  }
  return right_limit(a, horizon) == right_limit(b, horizon);
}

FVSignal simplify(const FVSignal& s) {
  std::vector<Piece> head = s.head();
  std::optional<PeriodicTail> tail = s.tail();
  if (tail) {
    int v = tail->block.front().point;
    bool flat = std::all_of(tail->block.begin(), tail->block.end(),
                            [&](const Piece& p) { return p.point == v && p.after == v; });
    if (flat) {
      head.push_back(Piece{tail->start, v, v});
      tail.reset();
    }
  }
  std::vector<Piece> kept;
  for (const auto& p : head)
    if (kept.empty() || !(p.point == p.after && p.point == kept.back().after))
      kept.push_back(p);
  return FVSignal(std::move(kept), std::move(tail));
}

SampleSequence::SampleSequence(std::vector<Rational> head, Rational step)
    : head_(std::move(head)), step_(std::move(step)) {
  if (head_.empty() || head_.front() != 0)
    throw DomainError("sample sequences start at 0");
  for (std::size_t i = 1; i < head_.size(); ++i)
    if (!(head_[i - 1] < head_[i]))
      throw DomainError("sample times must be strictly increasing");
  if (step_ <= 0)
    throw DomainError("sample step must be positive");
}

Rational SampleSequence::at(std::size_t i) const {
  if (i < head_.size())
    return head_[i];
  return head_.back() + Rational(static_cast<unsigned long>(i - head_.size() + 1)) * step_;
}

std::optional<std::size_t> SampleSequence::index_of(const Rational& t) const {
  if (t <= head_.back()) {
    auto it = std::lower_bound(head_.begin(), head_.end(), t);
    if (it != head_.end() && *it == t)
      return static_cast<std::size_t>(it - head_.begin());
    return std::nullopt;
  }
  Rational k = (t - head_.back()) / step_;
  if (!is_integer(k))
    return std::nullopt;
  return head_.size() - 1 + boost::multiprecision::numerator(k).convert_to<std::size_t>();
}

std::size_t SampleSequence::first_after(const Rational& t) const {
  if (t < head_.back())
    return static_cast<std::size_t>(std::upper_bound(head_.begin(), head_.end(), t) -
                                    head_.begin());
  Integer k = floor_div(t - head_.back(), step_);
  return head_.size() + k.convert_to<std::size_t>();
}

DWord encode_D(const FVSignal& s, const SampleSequence& samples) {
  std::size_t per = 1;
  if (auto delta = s.period()) {
    Rational r = *delta / samples.step();
    if (!is_integer(r))
      throw DomainError("incommensurable: sample step " + to_string(samples.step()) +
                        " does not divide the signal period " + to_string(*delta));
    per = boost::multiprecision::numerator(r).convert_to<std::size_t>();
  }
  Rational settle = std::max(s.settle_time(), samples.head().back());
  std::size_t n = samples.first_after(settle);
  for (const auto& t : jump_points(s, samples.at(n + per)))
    if (!samples.index_of(t))
      throw DomainError("not a sample sequence for the signal: it misses the jump at " +
                        to_string(t));
  std::vector<DLetter> u, v;
  for (std::size_t i = 0; i < n + per; ++i) {
    Rational t = samples.at(i);
    DLetter l{value_at(s, t), right_limit(s, t)};
    (i < n ? u : v).push_back(l);
  }
  return normalize(DWord(std::move(u), std::move(v)));
}

FVSignal decode_FV(const DWord& w, const SampleSequence& samples) {
  std::size_t n = std::max(w.prefix().size(), samples.head().size() - 1);
  std::size_t per = w.period().size();
  std::vector<Piece> head;
  for (std::size_t i = 0; i < n; ++i)
    head.push_back(Piece{samples.at(i), w.at(i).first, w.at(i).second});
  PeriodicTail tail{samples.at(n), Rational(static_cast<unsigned long>(per)) * samples.step(), {}};
  for (std::size_t k = 0; k < per; ++k)
    tail.block.push_back(
        Piece{samples.at(n + k) - samples.at(n), w.at(n + k).first, w.at(n + k).second});
  return simplify(FVSignal(std::move(head), std::move(tail)));
}

namespace {

bool redundant(const DLetter& prev, const DLetter& cur) {
  return prev.second == cur.first && cur.first == cur.second;
}

} // namespace

bool is_stuttering_free(const DWord& w) {
  std::size_t reach = w.prefix().size() + w.period().size();
  for (std::size_t i = 0; i < reach + w.period().size(); ++i) {
    if (!redundant(w.at(i), w.at(i + 1)))
      continue;
    int b = w.at(i).second;
    for (std::size_t j = i + 1; j <= i + 1 + reach; ++j)
      if (w.at(j) != DLetter{b, b})
        return false;
  }
  return true;
}

DWord stutter_normalize(const DWord& in) {
  DWord w = normalize(in);
  const auto& u = w.prefix();
  const auto& v = w.period();
  std::vector<DLetter> prefix;
  std::size_t total = u.size() + v.size();
  for (std::size_t i = 0; i < total; ++i)
    if (i == 0 || !redundant(w.at(i - 1), w.at(i)))
      prefix.push_back(w.at(i));
  std::vector<DLetter> period;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!redundant(v[(k + v.size() - 1) % v.size()], v[k]))
      period.push_back(v[k]);
  if (period.empty()) {
    // eventually constant: every period letter is the same stutter (b,b)
    return normalize(DWord(std::move(prefix), {v.front()}));
  }
  return normalize(DWord(std::move(prefix), std::move(period)));
}

bool stuttering_equivalent(const DWord& a, const DWord& b) {
  return stutter_normalize(a) == stutter_normalize(b);
}

Reparam::Reparam(std::vector<std::pair<Rational, Rational>> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2 || knots_.front().first != 0 || knots_.front().second != 0)
    throw DomainError("a reparameterization needs knots starting at (0, 0)");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].first < knots_[i].first) || !(knots_[i - 1].second < knots_[i].second))
      throw DomainError("a reparameterization must be strictly increasing");
}

Rational Reparam::last_slope() const {
  const auto& a = knots_[knots_.size() - 2];
  const auto& b = knots_.back();
  return (b.second - a.second) / (b.first - a.first);
}

Rational Reparam::operator()(const Rational& x) const {
  check_time(x);
  std::size_t i = 1;
  while (i + 1 < knots_.size() && knots_[i].first < x)
    ++i;
  const auto& a = knots_[i - 1];
  const auto& b = knots_[i];
  return a.second + (x - a.first) * (b.second - a.second) / (b.first - a.first);
}

FVSignal reparameterize(const FVSignal& s, const Reparam& rho) {
  Rational m = rho.last_slope();
  if (!s.tail()) {
    std::vector<Piece> head;
    for (const auto& p : s.head())
      head.push_back(Piece{rho(p.at), p.point, p.after});
    return FVSignal(std::move(head));
  }
  const auto& tail = *s.tail();
  Rational cut = tail.start;
  while (cut < rho.last_x())
    cut += tail.delta;
  std::vector<Piece> head;
  for (const auto& p : s.pieces_until(cut))
    if (p.at < cut)
      head.push_back(Piece{rho(p.at), p.point, p.after});
  PeriodicTail nt{rho(cut), m * tail.delta, {}};
  for (const auto& p : tail.block)
    nt.block.push_back(Piece{m * p.at, p.point, p.after});
  return FVSignal(std::move(head), std::move(nt));
}

SampleSequence reparameterize(const SampleSequence& samples, const Reparam& rho) {
  std::vector<Rational> head;
  std::size_t i = 0;
  for (;; ++i) {
    Rational t = samples.at(i);
    head.push_back(rho(t));
    if (i + 1 >= samples.head().size() && t >= rho.last_x())
      break;
  }
  return SampleSequence(std::move(head), rho.last_slope() * samples.step());
}

FVSignal delta_signal(const Rational& x) {
  if (x <= 0)
    throw DomainError("delta signals need a positive position");
  return FVSignal({Piece{Rational(0), 0, 0}, Piece{x, 1, 0}});
}

FVSignal fixture_G(const FVSignal& y) {
  int a = right_limit(y, 0);
  if (a != 0 && a != 1)
    throw DomainError("fixture_G is defined on binary signals");
  Rational horizon = y.settle_time() + y.period().value_or(Rational(0));
  std::optional<Rational> first;
  for (const auto& t : jump_points(y, horizon))
    if (t > 0) {
      first = t;
      break;
    }
  std::vector<Piece> pieces{Piece{Rational(0), 0, 1 - a}};
  if (first)
    pieces.push_back(Piece{*first, 1 - a, 1});
  return simplify(FVSignal(std::move(pieces)));
}

namespace {

Rational rational_field(const json& j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(j.get<long long>());
  throw ParseError("expected a rational string such as \"3/2\"");
}

} // namespace

FVSignal signal_from_json(const json& j) {
  try {
    std::vector<Piece> head;
    const auto& bps = j.at("breakpoints");
    const auto& pts = j.at("point_values");
    const auto& ivs = j.at("interval_values");
    if (pts.size() != bps.size())
      throw ParseError("point_values must match breakpoints");
    const auto& tj = j.at("tail");
    bool constant = tj.contains("constant");
    if (!(ivs.size() == bps.size() || (constant && ivs.size() + 1 == bps.size())))
      throw ParseError("interval_values must have one entry per breakpoint");
    for (std::size_t i = 0; i < bps.size(); ++i) {
      int after = i < ivs.size() ? ivs[i].get<int>() : tj.at("constant").get<int>();
      head.push_back(Piece{rational_field(bps[i]), pts[i].get<int>(), after});
    }
    if (constant) {
      int c = tj.at("constant").get<int>();
      if (head.empty())
        head.push_back(Piece{Rational(0), c, c});
      if (head.back().after != c)
        throw ParseError("last interval value contradicts the constant tail");
      return FVSignal(std::move(head));
    }
    const auto& lj = tj.at("lasso");
    PeriodicTail tail{rational_field(lj.at("start")), rational_field(lj.at("delta")), {}};
    for (const auto& b : lj.at("block"))
      tail.block.push_back(
          Piece{rational_field(b.at("at")), b.at("point").get<int>(), b.at("interval").get<int>()});
    return FVSignal(std::move(head), std::move(tail));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed signal: ") + e.what());
  }
}

json to_json(const FVSignal& s) {
  json j;
  j["breakpoints"] = json::array();
  j["point_values"] = json::array();
  j["interval_values"] = json::array();
  for (const auto& p : s.head()) {
    j["breakpoints"].push_back(to_string(p.at));
    j["point_values"].push_back(p.point);
    j["interval_values"].push_back(p.after);
  }
  if (!s.tail()) {
    j["tail"] = {{"constant", s.head().back().after}};
    return j;
  }
  json block = json::array();
  for (const auto& p : s.tail()->block)
    block.push_back({{"at", to_string(p.at)}, {"point", p.point}, {"interval", p.after}});
  j["tail"] = {{"lasso",
                {{"start", to_string(s.tail()->start)},
                 {"delta", to_string(s.tail()->delta)},
                 {"block", block}}}};
  return j;
}

} // namespace chronosynth
