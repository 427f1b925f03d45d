#pragma once

// DEK: a shuffled deck is dealt one card at a time and
// each card goes to either end of a deque; whenever an end holds the next
// card wanted on the output pile it is moved there. The game is won when the
// whole deck reaches the output.
//
// The player only knows the set of cards still face down, never their order.
// A choice is substantive when each placement wins for some ordering that the
// other placement loses.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "deqsort/count.hpp"
#include "deqsort/permutation.hpp"
#include "deqsort/switchyard.hpp"

namespace deqsort {

// Hidden cards are a bitmask indexed by card value.
inline constexpr int kMaxDeckSize = 63;

class PreconditionViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class End { Left, Right };
enum class Strategy { S1, S2 };

inline std::string_view to_string(End e) { return e == End::Left ? "left" : "right"; }
inline std::string_view to_string(Strategy s) { return s == Strategy::S1 ? "S1" : "S2"; }

inline End parse_end(std::string_view text) {
  if (text == "left" || text == "Left" || text == "L") return End::Left;
  if (text == "right" || text == "Right" || text == "R") return End::Right;
  throw ParseError("end must be 'left' or 'right'");
}

struct DekInfoState {
  int deck_size = 0;
  int output_next = 1;
  std::vector<int> deque;  // left end first
  std::optional<int> revealed;
  std::uint64_t hidden = 0;  // bit v set iff card v is face down

  static DekInfoState initial(int n) {
    if (n < 0 || n > kMaxDeckSize)
      throw std::invalid_argument("deck size must be in 0.." + std::to_string(kMaxDeckSize));
    DekInfoState s;
    s.deck_size = n;
    for (int v = 1; v <= n; ++v) s.hidden |= std::uint64_t{1} << v;
    return s;
  }

  bool is_hidden(int v) const { return v >= 1 && v <= kMaxDeckSize && ((hidden >> v) & 1U); }
  int hidden_count() const { return std::popcount(hidden); }

  std::vector<int> hidden_values() const {
    std::vector<int> out;
    for (std::uint64_t h = hidden; h; h &= h - 1) out.push_back(std::countr_zero(h));
    return out;
  }

  bool won() const { return output_next == deck_size + 1; }
  // A sandwiched card can never reach an end.
  bool dead() const { return is_sandwich(deque); }
  bool finished() const { return won() || (!revealed && dead()); }

  friend bool operator==(const DekInfoState&, const DekInfoState&) = default;
};

// Throws std::invalid_argument unless output, deque, revealed and hidden
// partition {1..deck_size}.
inline void validate(const DekInfoState& s) {
  const int n = s.deck_size;
  if (n < 0 || n > kMaxDeckSize) throw std::invalid_argument("deck size out of range");
  if (s.output_next < 1 || s.output_next > n + 1)
    throw std::invalid_argument("output_next out of range");
  if (s.hidden & ~(((std::uint64_t{1} << n) - 1) << 1))
    throw std::invalid_argument("hidden set holds a card outside the deck");
  std::uint64_t seen = s.hidden;
  auto mark = [&](int v, const char* where) {
    if (v < s.output_next || v > n || ((seen >> v) & 1U))
      throw std::invalid_argument(std::string("card ") + std::to_string(v) + " in " + where +
                                  " is out of range or duplicated");
    seen |= std::uint64_t{1} << v;
  };
  for (int v : s.deque) mark(v, "deque");
  if (s.revealed) mark(*s.revealed, "revealed");
  for (int v = 1; v < s.output_next; ++v)
    if ((seen >> v) & 1U) throw std::invalid_argument("an output card is still in play");
  if (std::popcount(seen) != n - s.output_next + 1)
    throw std::invalid_argument("cards missing from every part of the state");
}

namespace detail {

// Pops both ends while they hold the next output card.
inline void settle(std::vector<int>& d, int& out) {
  while (!d.empty()) {
    if (d.front() == out) {
      d.erase(d.begin());
    } else if (d.back() == out) {
      d.pop_back();
    } else {
      break;
    }
    ++out;
  }
}

inline void put(std::vector<int>& d, int card, End e) {
  if (e == End::Left)
    d.insert(d.begin(), card);
  else
    d.push_back(card);
}

}  // namespace detail

inline DekInfoState forced_pops(DekInfoState s) {
  if (s.revealed) throw PreconditionViolated("forced_pops: a revealed card is still unplaced");
  detail::settle(s.deque, s.output_next);
  return s;
}

inline DekInfoState reveal(DekInfoState s, int card) {
  if (s.revealed) throw PreconditionViolated("reveal: the previous card is still unplaced");
  if (!s.is_hidden(card))
    throw std::invalid_argument("reveal: card " + std::to_string(card) + " is not face down");
  s.hidden &= ~(std::uint64_t{1} << card);
  s.revealed = card;
  return s;
}

// Places the revealed card and applies the forced pops.
inline DekInfoState place(DekInfoState s, End e) {
  if (!s.revealed) throw PreconditionViolated("place: no card has been revealed");
  detail::put(s.deque, *s.revealed, e);
  s.revealed.reset();
  detail::settle(s.deque, s.output_next);
  return s;
}

// Both placements lead to the same state.
inline bool placement_is_free(const DekInfoState& s) {
  if (!s.revealed) throw PreconditionViolated("placement_is_free: no card has been revealed");
  return s.deque.empty() || *s.revealed == s.output_next;
}

inline bool is_monotone(std::span<const int> d) {
  return std::is_sorted(d.begin(), d.end()) || std::is_sorted(d.rbegin(), d.rend());
}

// The six-condition test, O(n).
inline bool substantive_by_conditions(const DekInfoState& s) {
  if (!s.revealed) throw PreconditionViolated("substantive test needs a revealed card");
  const int x = *s.revealed;
  if (s.deque.size() < 2 || s.deque.front() == s.deque.back()) return false;
  const int i = std::min(s.deque.front(), s.deque.back());
  const int j = std::max(s.deque.front(), s.deque.back());
  if (!(x < i)) return false;
  if (i - x < 3) return false;
  if (x == s.output_next) return false;
  const auto hidden = s.hidden_values();
  if (std::none_of(hidden.begin(), hidden.end(), [i](int v) { return v > i; })) return false;
  if (!is_monotone(s.deque) &&
      std::none_of(hidden.begin(), hidden.end(), [i, j](int v) { return v > i && v < j; }))
    return false;
  return true;
}

struct Advice {
  bool substantive = false;  // six-condition flag
  Count winnable_left;
  Count winnable_right;
  End recommended = End::Left;
  Strategy strategy = Strategy::S1;
};

struct AdviceUnavailable {
  Count orderings;  // |hidden|!
  Count budget;
};

using AdviceOutcome = std::variant<Advice, AdviceUnavailable>;

inline End argmax_left_on_tie(const Count& left, const Count& right) {
  return right > left ? End::Right : End::Left;
}

// Exhaustive completion analysis with memo tables that persist across calls,
// so one analyzer can sweep many related states cheaply. Not thread-safe;
// give each thread its own.
//
// Positions are keyed by the deque alone: the output is always 1..o-1, and o
// is the smallest card still in play.
class DekAnalyzer {
 public:
  explicit DekAnalyzer(Count budget = factorial(10)) : budget_(budget) {}

  const Count& budget() const { return budget_; }
  bool within_budget(const DekInfoState& s) const {
    return !(budget_ < factorial(static_cast<unsigned>(s.hidden_count())));
  }

  // Orderings of the hidden cards that an omniscient player wins after
  // placing the revealed card at e.
  Count winnable_count(const DekInfoState& s, End e) {
    require_revealed(s, "winnable_count");
    return completions(start_set(s, e), s.hidden);
  }

  bool substantive_oracle(const DekInfoState& s) {
    require_revealed(s, "substantive_oracle");
    if (placement_is_free(s)) return false;
    const auto [only_left, only_right] = exclusive(start_set(s, End::Left), start_set(s, End::Right), s.hidden);
    return only_left && only_right;
  }

  // Orderings won by always choosing the placement with the larger value.
  Count strategy2_value(const DekInfoState& s) {
    if (s.revealed) throw PreconditionViolated("strategy2_value is defined before a reveal");
    DekInfoState t = forced_pops(s);
    return value(to_key(t.deque), t.hidden);
  }

  Advice strategy1_advise(const DekInfoState& s) {
    require_revealed(s, "strategy1_advise");
    Advice a;
    a.strategy = Strategy::S1;
    a.substantive = substantive_by_conditions(s);
    a.winnable_left = winnable_count(s, End::Left);
    a.winnable_right = placement_is_free(s) ? a.winnable_left : winnable_count(s, End::Right);
    a.recommended = argmax_left_on_tie(a.winnable_left, a.winnable_right);
    return a;
  }

  Advice strategy2_advise(const DekInfoState& s) {
    require_revealed(s, "strategy2_advise");
    Advice a;
    a.strategy = Strategy::S2;
    a.substantive = substantive_by_conditions(s);
    a.winnable_left = strategy2_value(place(s, End::Left));
    a.winnable_right = placement_is_free(s) ? a.winnable_left : strategy2_value(place(s, End::Right));
    a.recommended = argmax_left_on_tie(a.winnable_left, a.winnable_right);
    return a;
  }

  AdviceOutcome advise(const DekInfoState& s, Strategy strategy) {
    require_revealed(s, "advise");
    if (!within_budget(s))
      return AdviceUnavailable{factorial(static_cast<unsigned>(s.hidden_count())), budget_};
    return strategy == Strategy::S1 ? strategy1_advise(s) : strategy2_advise(s);
  }

  std::size_t memo_size() const {
    return completions_.size() + exclusive_.size() + values_.size();
  }

 private:
  using Key = std::string;         // deque cards as bytes
  using KeySet = std::vector<Key>;  // sorted, unique, sandwich-free

  static void require_revealed(const DekInfoState& s, const char* op) {
    if (!s.revealed) throw PreconditionViolated(std::string(op) + ": no card has been revealed");
  }

  static Key to_key(std::span<const int> d) {
    Key k;
    k.reserve(d.size());
    for (int v : d) k.push_back(static_cast<char>(v));
    return k;
  }

  static KeySet start_set(const DekInfoState& s, End e) {
    DekInfoState t = place(s, e);
    if (t.dead()) return {};
    return {to_key(t.deque)};
  }

  static int lowest(std::uint64_t mask) { return mask ? std::countr_zero(mask) : kMaxDeckSize + 1; }

  // Deque after card v goes to end e, with forced pops; nullopt if that
  // leaves a sandwich.
  static std::optional<Key> step(const Key& d, int v, std::uint64_t rest, End e) {
    int out = std::min(v, lowest(rest));
    for (char c : d) out = std::min(out, static_cast<int>(c));
    std::vector<int> cards(d.begin(), d.end());
    detail::put(cards, v, e);
    detail::settle(cards, out);
    if (is_sandwich(cards)) return std::nullopt;
    return to_key(cards);
  }

  static KeySet advance(const KeySet& set, int v, std::uint64_t rest) {
    KeySet out;
    out.reserve(set.size() * 2);
    for (const Key& d : set) {
      if (auto k = step(d, v, rest, End::Left)) out.push_back(std::move(*k));
      if (!d.empty())
        if (auto k = step(d, v, rest, End::Right)) out.push_back(std::move(*k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  static std::string set_key(const KeySet& set, std::uint64_t hidden) {
    std::string k(reinterpret_cast<const char*>(&hidden), sizeof hidden);
    for (const Key& d : set) {
      k.push_back(static_cast<char>(d.size()));
      k += d;
    }
    return k;
  }

  // Orderings of `hidden` won from at least one position in the set. Every
  // position in the set is sandwich-free, so an empty deck means a win.
  Count completions(const KeySet& set, std::uint64_t hidden) {
    if (set.empty()) return Count(0);
    if (!hidden) return Count(1);
    const std::string k = set_key(set, hidden);
    if (auto it = completions_.find(k); it != completions_.end()) return it->second;
    Count total;
    for (std::uint64_t h = hidden; h; h &= h - 1) {
      const int v = std::countr_zero(h);
      const std::uint64_t rest = hidden & ~(std::uint64_t{1} << v);
      total += completions(advance(set, v, rest), rest);
    }
    completions_.emplace(k, total);
    return total;
  }

  // (some ordering is won from L but not R, some ordering from R but not L)
  std::pair<bool, bool> exclusive(const KeySet& l, const KeySet& r, std::uint64_t hidden) {
    if (l == r) return {false, false};
    if (!hidden) return {!l.empty() && r.empty(), l.empty() && !r.empty()};
    if (l.empty()) return {false, !completions(r, hidden).is_zero()};
    if (r.empty()) return {!completions(l, hidden).is_zero(), false};
    std::string k = set_key(l, hidden);
    k.push_back('|');
    k += set_key(r, 0);
    if (auto it = exclusive_.find(k); it != exclusive_.end()) return it->second;
    std::pair<bool, bool> acc{false, false};
    for (std::uint64_t h = hidden; h && !(acc.first && acc.second); h &= h - 1) {
      const int v = std::countr_zero(h);
      const std::uint64_t rest = hidden & ~(std::uint64_t{1} << v);
      const auto [a, b] = exclusive(advance(l, v, rest), advance(r, v, rest), rest);
      acc.first |= a;
      acc.second |= b;
    }
    exclusive_.emplace(std::move(k), acc);
    return acc;
  }

  Count value(const Key& d, std::uint64_t hidden) {
    std::vector<int> cards(d.begin(), d.end());
    if (is_sandwich(cards)) return Count(0);
    if (!hidden) return Count(1);
    const std::string k = set_key({d}, hidden);
    if (auto it = values_.find(k); it != values_.end()) return it->second;
    Count total;
    for (std::uint64_t h = hidden; h; h &= h - 1) {
      const int v = std::countr_zero(h);
      const std::uint64_t rest = hidden & ~(std::uint64_t{1} << v);
      Count best;
      for (End e : {End::Left, End::Right}) {
        if (e == End::Right && d.empty()) break;
        if (auto next = step(d, v, rest, e)) best = std::max(best, value(*next, rest));
      }
      total += best;
    }
    values_.emplace(k, total);
    return total;
  }

  Count budget_;
  std::unordered_map<std::string, Count> completions_;
  std::unordered_map<std::string, std::pair<bool, bool>> exclusive_;
  std::unordered_map<std::string, Count> values_;
};

// ---------------------------------------------------------------------------
// Replaying deals and sweeping every reachable state.

struct DekMove {
  int card = 0;
  End end = End::Left;
  friend bool operator==(const DekMove&, const DekMove&) = default;
};

inline std::string to_string(std::span<const DekMove> trace) {
  std::string out;
  for (const DekMove& m : trace) {
    if (!out.empty()) out += ' ';
    out += std::to_string(m.card);
    out += m.end == End::Left ? 'L' : 'R';
  }
  return out;
}

inline std::string to_string(const DekInfoState& s) {
  std::string out = "out<" + std::to_string(s.output_next) + " deque(";
  for (std::size_t i = 0; i < s.deque.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s.deque[i]);
  }
  out += ") revealed=";
  out += s.revealed ? std::to_string(*s.revealed) : "-";
  out += " hidden{";
  bool first = true;
  for (int v : s.hidden_values()) {
    if (!first) out += ' ';
    first = false;
    out += std::to_string(v);
  }
  return out + "}";
}

// State after dealing the first ends.size() cards of the deal and placing
// them as given; with reveal_next the following card is also turned up.
inline DekInfoState replay_deal(const Permutation& deal, std::span<const End> ends, bool reveal_next) {
  if (ends.size() > static_cast<std::size_t>(deal.size()) ||
      (reveal_next && ends.size() == static_cast<std::size_t>(deal.size())))
    throw std::invalid_argument("replay_deal: more moves than cards");
  DekInfoState s = DekInfoState::initial(deal.size());
  for (std::size_t i = 0; i < ends.size(); ++i) s = place(reveal(s, deal[i]), ends[i]);
  if (reveal_next) s = reveal(s, deal[ends.size()]);
  return s;
}

// Calls fn(revealed_state, trace) for every information state with a card
// just revealed that some deal of size n reaches by some play, skipping
// positions that are already lost. Pre-reveal states are visited once each;
// the trace is the first play found that reaches them, ending in the reveal.
template <class Fn>
void for_each_reachable_reveal(int n, Fn&& fn) {
  if (n < 0 || n > kMaxDeckSize) throw std::invalid_argument("deck size out of range");
  std::unordered_map<std::string, bool> seen;
  std::vector<DekMove> trace;
  auto key = [](const DekInfoState& s) {
    std::string k(reinterpret_cast<const char*>(&s.hidden), sizeof s.hidden);
    for (int v : s.deque) k.push_back(static_cast<char>(v));
    return k;
  };
  auto visit = [&](auto&& self, const DekInfoState& s) -> void {
    for (int x : s.hidden_values()) {
      const DekInfoState t = reveal(s, x);
      trace.push_back({x, End::Left});
      fn(t, std::span<const DekMove>(trace));
      for (End e : {End::Left, End::Right}) {
        if (e == End::Right && placement_is_free(t)) break;
        trace.back().end = e;
        DekInfoState u = place(t, e);
        if (u.dead() || !u.hidden) continue;
        if (!seen.emplace(key(u), true).second) continue;
        self(self, u);
      }
      trace.pop_back();
    }
  };
  visit(visit, DekInfoState::initial(n));
}

struct GateMismatch {
  DekInfoState state;
  std::vector<DekMove> trace;
  bool by_conditions = false;
  bool by_oracle = false;
};

struct GateReport {
  int n = 0;
  std::uint64_t states = 0;
  std::uint64_t substantive = 0;  // by the oracle
  std::uint64_t mismatches = 0;
  std::vector<GateMismatch> examples;  // first few mismatches
};

// Six-condition predicate against the completion oracle on every reachable
// revealed state for one deck size.
inline GateReport condition_gate(int n, std::size_t keep_examples = 20) {
  GateReport r;
  r.n = n;
  DekAnalyzer a;
  for_each_reachable_reveal(n, [&](const DekInfoState& s, std::span<const DekMove> trace) {
    ++r.states;
    const bool oracle = a.substantive_oracle(s);
    const bool cond = substantive_by_conditions(s);
    if (oracle) ++r.substantive;
    if (oracle == cond) return;
    ++r.mismatches;
    if (r.examples.size() < keep_examples)
      r.examples.push_back({s, std::vector<DekMove>(trace.begin(), trace.end()), cond, oracle});
  });
  return r;
}

struct AgreementRow {
  int n = 0;
  std::uint64_t states = 0;
  std::uint64_t substantive = 0;
  std::uint64_t disagreements = 0;
};

struct AgreementDisagreement {
  DekInfoState state;
  std::vector<DekMove> trace;
  Advice s1;
  Advice s2;
};

struct AgreementReport {
  std::vector<AgreementRow> rows;
  std::vector<AgreementDisagreement> examples;
  std::uint64_t total_disagreements() const {
    std::uint64_t t = 0;
    for (const auto& r : rows) t += r.disagreements;
    return t;
  }
};

// Compares the Strategy 1 and Strategy 2 recommendations at every reachable
// substantive state for deck sizes 1..max_n.
inline AgreementReport agreement_experiment(int max_n, std::size_t keep_examples = 20) {
  AgreementReport report;
  for (int n = 1; n <= max_n; ++n) {
    AgreementRow row;
    row.n = n;
    DekAnalyzer a;
    for_each_reachable_reveal(n, [&](const DekInfoState& s, std::span<const DekMove> trace) {
      ++row.states;
      if (!a.substantive_oracle(s)) return;
      ++row.substantive;
      Advice s1 = a.strategy1_advise(s);
      Advice s2 = a.strategy2_advise(s);
      if (s1.recommended == s2.recommended) return;
      ++row.disagreements;
      if (report.examples.size() < keep_examples)
        report.examples.push_back({s, std::vector<DekMove>(trace.begin(), trace.end()), s1, s2});
    });
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace deqsort
