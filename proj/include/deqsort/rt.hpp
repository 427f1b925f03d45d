#pragma once

// Linear-time pile-of-twinstacks sortability tests.
//
// A twinstack is a pair of stacks, each strictly increasing from top to
// bottom. The pile is a stack of twinstacks; choosing an orientation for each
// twinstack and welding the pile down yields one concrete configuration, so a
// normal pile of k twinstacks stands for up to 2^k configurations at once.
//
// Three modes share the machinery:
//   ParallelStacks  the linear-time test for two parallel stacks;
//   DequeOriginal   the original deque modification, which misses states that
//                   become monotonic through a pop (254163 is rejected);
//   DequeCorrected  the modification plus the bottom-twinstack repair after
//                   pops, which decides deque sortability exactly.
//
// Stacks are singly linked lists threaded through an array indexed by value,
// so pushes, pops, welds and the bottom tuck are all O(1).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "deqsort/permutation.hpp"
#include "deqsort/switchyard.hpp"

namespace deqsort {

enum class RtMode { ParallelStacks, DequeOriginal, DequeCorrected };
enum class DequeVariant { Original, Corrected };

// Value snapshot of a twinstack; each stack is listed top first.
struct TwinstackView {
  std::vector<int> left;
  std::vector<int> right;
  friend bool operator==(const TwinstackView&, const TwinstackView&) = default;
};

// Index 0 is the top of the pile.
using Pile = std::vector<TwinstackView>;

inline bool is_normal(const Pile& pile) {
  for (const auto& ts : pile) {
    for (const auto* side : {&ts.left, &ts.right})
      for (std::size_t i = 1; i < side->size(); ++i)
        if ((*side)[i] <= (*side)[i - 1]) return false;
    if (ts.left.empty() && ts.right.empty()) return false;
  }
  for (std::size_t i = 0; i + 1 < pile.size(); ++i) {
    int upper_max = 0;
    for (int v : pile[i].left) upper_max = std::max(upper_max, v);
    for (int v : pile[i].right) upper_max = std::max(upper_max, v);
    for (std::size_t j = i + 1; j < pile.size(); ++j)
      for (const auto* side : {&pile[j].left, &pile[j].right})
        for (int v : *side)
          if (v < upper_max) return false;
  }
  return true;
}

inline std::string to_string(const Pile& pile) {
  if (pile.empty()) return "-";
  std::string out;
  auto side = [](const std::vector<int>& s) {
    std::string t;
    for (int v : s) t += std::to_string(v);
    return t.empty() ? std::string("-") : t;
  };
  for (std::size_t i = 0; i < pile.size(); ++i) {
    if (i) out += ' ';
    out += '(' + side(pile[i].left) + '|' + side(pile[i].right) + ')';
  }
  return out;
}

// Row of the step table: the state after each element has been processed.
struct RtTraceRow {
  std::string output;
  std::string pile;
  std::string input;
  bool aborted = false;
};

struct RtStats {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t welds = 0;
  std::uint64_t reversals = 0;
  std::uint64_t tucks = 0;
  std::uint64_t total() const { return pushes + pops + welds + reversals + tucks; }
};

class RtMachine {
 public:
  explicit RtMachine(RtMode mode) : mode_(mode) {}

  RtMode mode() const { return mode_; }
  const RtStats& stats() const { return stats_; }
  int output_next() const { return out_; }

  void set_trace(std::vector<RtTraceRow>* trace) { trace_ = trace; }

  bool run(std::span<const int> pi) {
    reset(static_cast<int>(pi.size()));
    for (std::size_t pos = 0; pos < pi.size(); ++pos) {
      if (!push(pi[pos])) {
        record(pi.subspan(pos + 1), true);
        return false;
      }
      record(pi.subspan(pos + 1), false);
    }
    return pile_.empty();
  }

  // Start a run over values 1..n to be fed one at a time with push().
  void begin(int n) { reset(n); }

  // One step of the loop: take v from the input, normalize, drain to the
  // output. False means the run aborted.
  bool push(int v) {
    if (!from_input(v)) return false;
    to_output();
    return true;
  }

  // Replace the machine state with an explicit pile, for stepwise testing.
  // Values must be distinct and positive.
  void load(const Pile& pile, int output_next = 1) {
    int cap = 0;
    for (const auto& ts : pile) {
      for (int v : ts.left) cap = std::max(cap, v);
      for (int v : ts.right) cap = std::max(cap, v);
    }
    reset(cap);
    out_ = output_next;
    for (auto it = pile.rbegin(); it != pile.rend(); ++it) {
      Twin ts;
      for (auto v = it->left.rbegin(); v != it->left.rend(); ++v) push_bottom_reverse(ts.left, *v);
      for (auto v = it->right.rbegin(); v != it->right.rend(); ++v) push_bottom_reverse(ts.right, *v);
      pile_.push_back(ts);
    }
  }

  Pile pile() const {
    Pile out;
    for (auto it = pile_.rbegin(); it != pile_.rend(); ++it)
      out.push_back(TwinstackView{list(it->left), list(it->right)});
    return out;
  }

  // Restore normality after a new element was placed alone on the top
  // twinstack's left side. False means every configuration is a sandwich.
  bool normalize() {
    for (;;) {
      if (pile_.size() < 2) return true;
      Twin& top = pile_[pile_.size() - 1];
      Twin& second = pile_[pile_.size() - 2];
      const int x = top.left.top;
      const bool two_sided = second.left.size > 0 && second.right.size > 0;
      if (two_sided) {
        const int a = second.left.top;
        const int b = second.right.top;
        if (x < a && x < b) return true;
        if (x > a && x > b) return false;
        if (x > a) reverse(top);  // x must land over the side whose top exceeds it
        weld();
        return true;
      }
      Stack& occupied = second.left.size > 0 ? second.left : second.right;
      if (x < occupied.top) return true;
      if (mode_ == RtMode::DequeCorrected && pile_.size() == 2 && x > twin_max(second)) {
        // tuck x under the occupied side, then fold the rest of the top onto it
        pop_top(top.left);
        push_bottom(occupied, x);
        ++stats_.tucks;
        if (top.left.size == 0 && top.right.size > 0) reverse(top);
        const bool on_left = second.left.size > 0;
        if (top.left.size > 0 && !on_left) reverse(top);
        if (top.left.size + top.right.size == 0)
          pile_.pop_back();
        else
          weld();
        return true;
      }
      if (second.left.size > 0) reverse(second);
      weld();
    }
  }

  // Move elements to the output while the next one is on top of the pile.
  void to_output() {
    while (!pile_.empty()) {
      Twin& top = pile_.back();
      if (top.right.size > 0 && top.right.top == out_)
        pop_top(top.right);
      else if (top.left.size > 0 && top.left.top == out_)
        pop_top(top.left);
      else
        return;
      ++out_;
      ++stats_.pops;
      if (top.left.size + top.right.size == 0) {
        pile_.pop_back();
        continue;
      }
      canonicalize(top);
      if (mode_ == RtMode::DequeCorrected && pile_.size() == 1) repair_monotonic(top);
    }
  }

 private:
  struct Stack {
    int top = 0;
    int bottom = 0;
    int size = 0;
  };
  struct Twin {
    Stack left;
    Stack right;
  };

  void reset(int n) {
    next_.assign(static_cast<std::size_t>(n) + 1, 0);
    pile_.clear();
    out_ = 1;
    stats_ = {};
  }

  bool from_input(int v) {
    ++stats_.pushes;
    if (mode_ == RtMode::DequeOriginal && !pile_.empty() && v > twin_max(pile_.front()))
      return add_maximum_original(v);
    Twin ts;
    push_bottom(ts.left, v);
    pile_.push_back(ts);
    return normalize();
  }

  // The original rule for a new maximum: abort on any two-sided twinstack,
  // otherwise gather everything on one side with v at the bottom.
  bool add_maximum_original(int v) {
    for (const Twin& ts : pile_)
      if (ts.left.size > 0 && ts.right.size > 0) return false;
    for (Twin& ts : pile_)
      if (ts.right.size > 0) reverse(ts);
    while (pile_.size() > 1) weld();
    push_bottom(pile_.front().left, v);
    return true;
  }

  static int twin_max(const Twin& ts) { return std::max(ts.left.bottom, ts.right.bottom); }

  void push_bottom(Stack& s, int v) {
    next_[static_cast<std::size_t>(v)] = 0;
    if (s.size == 0)
      s.top = v;
    else
      next_[static_cast<std::size_t>(s.bottom)] = v;
    s.bottom = v;
    ++s.size;
  }
  void push_bottom_reverse(Stack& s, int v) {
    // building from the bottom up while loading: v goes on top
    next_[static_cast<std::size_t>(v)] = s.top;
    if (s.size == 0) s.bottom = v;
    s.top = v;
    ++s.size;
  }
  int pop_top(Stack& s) {
    const int v = s.top;
    s.top = next_[static_cast<std::size_t>(v)];
    if (--s.size == 0) s.top = s.bottom = 0;
    return v;
  }
  Stack concat(const Stack& upper, const Stack& lower) {
    if (upper.size == 0) return lower;
    if (lower.size == 0) return upper;
    next_[static_cast<std::size_t>(upper.bottom)] = lower.top;
    return Stack{upper.top, lower.bottom, upper.size + lower.size};
  }
  void reverse(Twin& ts) {
    std::swap(ts.left, ts.right);
    ++stats_.reversals;
  }
  void weld() {
    Twin top = pile_.back();
    pile_.pop_back();
    Twin& below = pile_.back();
    below.left = concat(top.left, below.left);
    below.right = concat(top.right, below.right);
    ++stats_.welds;
  }

  // Larger top on the left; an empty side counts as smallest.
  void canonicalize(Twin& ts) {
    if (ts.left.size == 0 || (ts.right.size > 0 && ts.right.top > ts.left.top)) reverse(ts);
  }

  // A two-sided bottom twinstack is monotonic when one side holds only the
  // overall maximum; move that element under the other side.
  void repair_monotonic(Twin& ts) {
    if (ts.left.size == 0 || ts.right.size == 0) return;
    Stack* lone = nullptr;
    Stack* rest = nullptr;
    if (ts.left.size == 1 && ts.left.top > ts.right.bottom) {
      lone = &ts.left;
      rest = &ts.right;
    } else if (ts.right.size == 1 && ts.right.top > ts.left.bottom) {
      lone = &ts.right;
      rest = &ts.left;
    } else {
      return;
    }
    push_bottom(*rest, pop_top(*lone));
    ++stats_.tucks;
    canonicalize(ts);
  }

  std::vector<int> list(const Stack& s) const {
    std::vector<int> out;
    for (int v = s.top, k = 0; k < s.size; ++k, v = next_[static_cast<std::size_t>(v)])
      out.push_back(v);
    return out;
  }

  void record(std::span<const int> rest, bool aborted) {
    if (!trace_) return;
    RtTraceRow row;
    for (int v = 1; v < out_; ++v) row.output += std::to_string(v);
    row.pile = aborted ? "Abort!" : to_string(pile());
    for (int v : rest) row.input += std::to_string(v);
    row.aborted = aborted;
    trace_->push_back(std::move(row));
  }

  RtMode mode_;
  std::vector<int> next_;
  std::vector<Twin> pile_;  // back() is the top
  int out_ = 1;
  RtStats stats_;
  std::vector<RtTraceRow>* trace_ = nullptr;
};

inline bool rt_pstack_sortable(const Permutation& pi) {
  return RtMachine(RtMode::ParallelStacks).run(pi.values());
}

inline bool rt_deque_sortable(const Permutation& pi,
                              DequeVariant variant = DequeVariant::Corrected) {
  return RtMachine(variant == DequeVariant::Corrected ? RtMode::DequeCorrected
                                                      : RtMode::DequeOriginal)
      .run(pi.values());
}

// Normalizes the pile in place as the given mode would after a push.
inline bool normalize(Pile& pile, RtMode mode) {
  RtMachine m(mode);
  m.load(pile);
  const bool ok = m.normalize();
  pile = m.pile();
  return ok;
}

class NotSortable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word over {a,b,y,z} that sorts pi on a deque. The linear test screens out
// unsortable inputs; the word comes from the failure-memoized reduced search.
inline OpWord extract_witness(const Permutation& pi) {
  if (!rt_deque_sortable(pi)) throw NotSortable(pi.to_string() + " is not deque sortable");
  auto w = bruteforce_witness(pi);
  if (!w) throw std::logic_error("linear test and search disagree on " + pi.to_string());
  return *w;
}

}  // namespace deqsort
