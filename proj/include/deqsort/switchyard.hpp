#pragma once

// Brute-force deque, parallel-stack and single-stack switchyards. These are
// the trusted ground truth that the linear-time tests and the counting DP are
// checked against, so they stay deliberately simple.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "deqsort/permutation.hpp"

namespace deqsort {

// Output is kept as its length: every successful run emits 1,2,3,... in
// order, so output_next alone determines it.
struct DequeState {
  int output_next = 1;
  std::vector<int> deque;       // left end first
  std::vector<int> input_rest;  // front first

  int size() const {
    return output_next - 1 + static_cast<int>(deque.size() + input_rest.size());
  }
  bool finished() const { return deque.empty() && input_rest.empty(); }

  friend bool operator==(const DequeState&, const DequeState&) = default;
};

inline DequeState initial_state(const Permutation& pi) {
  return DequeState{1, {}, std::vector<int>(pi.begin(), pi.end())};
}

// Throws std::invalid_argument unless deque and input partition
// {output_next..n}.
inline void validate(const DequeState& s) {
  const int n = s.size();
  if (s.output_next < 1) throw std::invalid_argument("output_next must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  auto mark = [&](int v) {
    if (v < s.output_next || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("deque and input do not partition " +
                                  std::to_string(s.output_next) + ".." + std::to_string(n));
    seen[static_cast<std::size_t>(v)] = true;
  };
  for (int v : s.deque) mark(v);
  for (int v : s.input_rest) mark(v);
}

// Some element has a strictly larger element somewhere on each side.
inline bool is_sandwich(std::span<const int> deque) {
  if (deque.size() < 3) return false;
  // prefix maxima from the left, suffix maxima from the right
  std::vector<int> right_max(deque.size(), 0);
  for (std::size_t i = deque.size() - 1; i-- > 0;)
    right_max[i] = std::max(right_max[i + 1], deque[i + 1]);
  int left_max = deque[0];
  for (std::size_t i = 1; i + 1 < deque.size(); ++i) {
    if (left_max > deque[i] && right_max[i] > deque[i]) return true;
    left_max = std::max(left_max, deque[i]);
  }
  return false;
}
inline bool is_sandwich(const DequeState& s) { return is_sandwich(s.deque); }

// Emptiable by end pops in increasing order: rises then falls.
inline bool is_emptiable(std::span<const int> deque) { return !is_sandwich(deque); }

// ---------------------------------------------------------------------------
// Operation words over {a, b, y, z}: a/b push the next input element onto the
// left/right end, y/z pop the left/right end to the output.

class OpWord {
 public:
  OpWord() = default;
  explicit OpWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
      if (c != 'a' && c != 'b' && c != 'y' && c != 'z')
        throw ParseError(std::string("invalid operation letter '") + c + "'");
  }
  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  char operator[](std::size_t i) const { return letters_[i]; }
  void push_back(char c) { letters_.push_back(c); }
  void pop_back() { letters_.pop_back(); }
  friend bool operator==(const OpWord&, const OpWord&) = default;

 private:
  std::string letters_;
};

// At most n pushes, and no prefix pops more than it pushed.
inline bool is_valid_run_word(const OpWord& w, int n) {
  int pushes = 0, pops = 0;
  for (char c : w.str()) {
    if (c == 'a' || c == 'b')
      ++pushes;
    else
      ++pops;
    if (pops > pushes) return false;
  }
  return pushes <= n;
}

struct ReplayResult {
  enum class Status { Ok, IllegalOperation, NotSorted };
  Status status = Status::Ok;
  std::size_t index = 0;  // offending letter when status != Ok
  DequeState state;       // state before the offending letter otherwise final

  bool ok() const { return status == Status::Ok; }
  bool sorted() const { return ok() && state.finished(); }
};

inline ReplayResult replay_word(const Permutation& pi, const OpWord& w) {
  ReplayResult r;
  r.state = initial_state(pi);
  auto& st = r.state;
  std::size_t next_in = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char c = w[i];
    if (c == 'a' || c == 'b') {
      if (next_in == st.input_rest.size()) {
        r.status = ReplayResult::Status::IllegalOperation;
        r.index = i;
        break;
      }
      const int v = st.input_rest[next_in++];
      if (c == 'a')
        st.deque.insert(st.deque.begin(), v);
      else
        st.deque.push_back(v);
    } else {
      if (st.deque.empty()) {
        r.status = ReplayResult::Status::IllegalOperation;
        r.index = i;
        break;
      }
      const int v = c == 'y' ? st.deque.front() : st.deque.back();
      if (v != st.output_next) {
        r.status = ReplayResult::Status::NotSorted;
        r.index = i;
        break;
      }
      if (c == 'y')
        st.deque.erase(st.deque.begin());
      else
        st.deque.pop_back();
      ++st.output_next;
    }
  }
  st.input_rest.erase(st.input_rest.begin(),
                      st.input_rest.begin() + static_cast<std::ptrdiff_t>(next_in));
  return r;
}

// A run is reduced when whichever end holds output_next is popped next.
inline bool is_reduced_run(const Permutation& pi, const OpWord& w) {
  DequeState st = initial_state(pi);
  std::size_t next_in = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool poppable = !st.deque.empty() && (st.deque.front() == st.output_next ||
                                                 st.deque.back() == st.output_next);
    const char c = w[i];
    if (poppable && (c == 'a' || c == 'b')) return false;
    if (c == 'a' || c == 'b') {
      if (next_in == st.input_rest.size()) return false;
      const int v = st.input_rest[next_in++];
      if (c == 'a')
        st.deque.insert(st.deque.begin(), v);
      else
        st.deque.push_back(v);
    } else {
      if (st.deque.empty()) return false;
      if (c == 'y')
        st.deque.erase(st.deque.begin());
      else
        st.deque.pop_back();
      ++st.output_next;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive search.

struct OracleOptions {
  bool reduced = true;         // pop output_next the moment it reaches an end
  bool prune_dead = true;      // cut sandwich (deque) or pinned (stack) states
  bool memoize = true;         // remember failed (storage, consumed) states
};

namespace detail {

class DequeSearch {
 public:
  DequeSearch(std::span<const int> input, OracleOptions opt, OpWord* trace)
      : input_(input), opt_(opt), trace_(trace) {}

  bool run(std::vector<int> deque, int out) { return go(0, out, std::move(deque)); }

 private:
  bool go(std::size_t pos, int out, std::vector<int> d) {
    std::size_t marks = 0;
    if (opt_.reduced) {
      for (;;) {
        if (!d.empty() && d.front() == out) {
          d.erase(d.begin());
          emit('y', marks);
        } else if (!d.empty() && d.back() == out) {
          d.pop_back();
          emit('z', marks);
        } else {
          break;
        }
        ++out;
      }
    }
    bool ok = explore(pos, out, d);
    if (!ok) unemit(marks);
    return ok;
  }

  bool explore(std::size_t pos, int out, const std::vector<int>& d) {
    if (pos == input_.size() && d.empty()) return true;
    if (opt_.prune_dead && is_sandwich(d)) return false;
    std::string key;
    if (opt_.memoize) {
      key.reserve(d.size() + 1);
      key.push_back(static_cast<char>(pos));
      for (int v : d) key.push_back(static_cast<char>(v));
      if (failed_.count(key)) return false;
    }
    if (pos < input_.size()) {
      const int v = input_[pos];
      std::vector<int> left = d;
      left.insert(left.begin(), v);
      if (step('a', pos + 1, out, std::move(left))) return true;
      if (!d.empty()) {
        std::vector<int> right = d;
        right.push_back(v);
        if (step('b', pos + 1, out, std::move(right))) return true;
      }
    }
    if (!opt_.reduced && !d.empty()) {
      if (d.front() == out) {
        std::vector<int> rest(d.begin() + 1, d.end());
        if (step('y', pos, out + 1, std::move(rest))) return true;
      }
      if (d.size() > 1 && d.back() == out) {
        std::vector<int> rest(d.begin(), d.end() - 1);
        if (step('z', pos, out + 1, std::move(rest))) return true;
      }
    }
    if (opt_.memoize) failed_.insert(std::move(key));
    return false;
  }

  bool step(char letter, std::size_t pos, int out, std::vector<int> d) {
    if (trace_) trace_->push_back(letter);
    if (go(pos, out, std::move(d))) return true;
    if (trace_) trace_->pop_back();
    return false;
  }

  void emit(char letter, std::size_t& marks) {
    if (trace_) {
      trace_->push_back(letter);
      ++marks;
    }
  }
  void unemit(std::size_t marks) {
    for (; marks > 0; --marks) trace_->pop_back();
  }

  std::span<const int> input_;
  OracleOptions opt_;
  OpWord* trace_;
  std::unordered_set<std::string> failed_;
};

// Two stacks, each stored bottom first. Failure memo keys sort the pair, the
// stacks being interchangeable.
class PStackSearch {
 public:
  PStackSearch(std::span<const int> input, OracleOptions opt) : input_(input), opt_(opt) {}

  bool run() { return go(0, 1, {}, {}); }

 private:
  static bool pinned(const std::vector<int>& s) {
    // an element resting on a smaller one can never leave in order
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] > s[i - 1]) return true;
    return false;
  }

  bool go(std::size_t pos, int out, std::vector<int> a, std::vector<int> b) {
    if (opt_.reduced) {
      for (;;) {
        if (!a.empty() && a.back() == out)
          a.pop_back();
        else if (!b.empty() && b.back() == out)
          b.pop_back();
        else
          break;
        ++out;
      }
    }
    if (pos == input_.size() && a.empty() && b.empty()) return true;
    if (opt_.prune_dead && (pinned(a) || pinned(b))) return false;
    std::string key;
    if (opt_.memoize) {
      std::string ka(a.begin(), a.end()), kb(b.begin(), b.end());
      if (kb < ka) std::swap(ka, kb);
      key.push_back(static_cast<char>(pos));
      key += ka;
      key.push_back('\xff');
      key += kb;
      if (failed_.count(key)) return false;
    }
    if (pos < input_.size()) {
      const int v = input_[pos];
      a.push_back(v);
      if (go(pos + 1, out, a, b)) return true;
      a.pop_back();
      b.push_back(v);
      if (go(pos + 1, out, a, b)) return true;
      b.pop_back();
    }
    if (!opt_.reduced) {
      if (!a.empty() && a.back() == out) {
        auto rest = a;
        rest.pop_back();
        if (go(pos, out + 1, rest, b)) return true;
      }
      if (!b.empty() && b.back() == out) {
        auto rest = b;
        rest.pop_back();
        if (go(pos, out + 1, a, rest)) return true;
      }
    }
    if (opt_.memoize) failed_.insert(std::move(key));
    return false;
  }

  std::span<const int> input_;
  OracleOptions opt_;
  std::unordered_set<std::string> failed_;
};

}  // namespace detail

inline bool deque_sortable_bruteforce(const Permutation& pi, OracleOptions opt = {}) {
  return detail::DequeSearch(pi.values(), opt, nullptr).run({}, 1);
}

inline bool pstack_sortable_bruteforce(const Permutation& pi, OracleOptions opt = {}) {
  return detail::PStackSearch(pi.values(), opt).run();
}

// A single stack admits no choices: push, then pop while the top is next.
inline bool stack_sortable(const Permutation& pi) {
  std::vector<int> stack;
  int out = 1;
  for (int v : pi) {
    stack.push_back(v);
    while (!stack.empty() && stack.back() == out) {
      stack.pop_back();
      ++out;
    }
  }
  return stack.empty();
}

inline bool oracle_sortable(SortClass cls, const Permutation& pi) {
  switch (cls) {
    case SortClass::Deque: return deque_sortable_bruteforce(pi);
    case SortClass::ParallelStacks: return pstack_sortable_bruteforce(pi);
    case SortClass::SingleStack: return stack_sortable(pi);
  }
  return false;
}

// Can the sort be completed from s when the whole remaining input is known?
inline bool sortable_from_state(const DequeState& s, OracleOptions opt = {}) {
  validate(s);
  if (s.input_rest.empty()) return is_emptiable(s.deque);
  return detail::DequeSearch(s.input_rest, opt, nullptr).run(s.deque, s.output_next);
}

// A sorting word found by the reduced search, trying a before b.
inline std::optional<OpWord> bruteforce_witness(const Permutation& pi) {
  OpWord w;
  if (detail::DequeSearch(pi.values(), OracleOptions{}, &w).run({}, 1)) return w;
  return std::nullopt;
}

}  // namespace deqsort
