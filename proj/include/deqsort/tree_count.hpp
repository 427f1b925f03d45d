#pragma once

// Counting sortable permutations by a pruned depth-first search of the
// permutation tree. Sortable classes are closed under containment, so an
// unsortable node has no sortable descendants and its subtree is skipped.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "deqsort/count.hpp"
#include "deqsort/permutation.hpp"
#include "deqsort/rt.hpp"
#include "deqsort/switchyard.hpp"

namespace deqsort {

struct CountTable {
  std::vector<Count> counts;  // counts[i] is the count for length i+1
  std::uint64_t visited = 0;  // tree nodes tested, root excluded

  int max_n() const { return static_cast<int>(counts.size()); }
  Count at(int n) const { return counts.at(static_cast<std::size_t>(n - 1)); }

  // count[m+n] >= count[m] * count[n] wherever both sides are tabulated
  bool supermultiplicative() const {
    for (int a = 1; a <= max_n(); ++a)
      for (int b = 1; a + b <= max_n(); ++b)
        if (at(a + b) < at(a) * at(b)) return false;
    return true;
  }
};

namespace detail {

class TreeSearch {
 public:
  TreeSearch(SortClass cls, int max_n)
      : cls_(cls),
        max_n_(max_n),
        machine_(cls == SortClass::Deque ? RtMode::DequeCorrected : RtMode::ParallelStacks) {
    table_.counts.assign(static_cast<std::size_t>(max_n), Count(0));
    levels_.resize(static_cast<std::size_t>(max_n) + 1);
  }

  CountTable run() {
    levels_[0].clear();
    expand(0);
    return table_;
  }

 private:
  bool sortable(std::span<const int> p) {
    if (cls_ == SortClass::SingleStack) {
      stack_.clear();
      int out = 1;
      for (int v : p) {
        stack_.push_back(v);
        while (!stack_.empty() && stack_.back() == out) {
          stack_.pop_back();
          ++out;
        }
      }
      return stack_.empty();
    }
    return machine_.run(p);
  }

  // Visit every child of the node stored at levels_[depth].
  void expand(int depth) {
    const auto& parent = levels_[static_cast<std::size_t>(depth)];
    auto& child = levels_[static_cast<std::size_t>(depth) + 1];
    for (int pos = 0; pos <= depth; ++pos) {
      child.assign(parent.begin(), parent.end());
      child.insert(child.begin() + pos, depth + 1);
      ++table_.visited;
      if (!sortable(child)) continue;
      table_.counts[static_cast<std::size_t>(depth)] += Count(1);
      if (depth + 1 < max_n_) expand(depth + 1);
    }
  }

  SortClass cls_;
  int max_n_;
  RtMachine machine_;
  std::vector<int> stack_;
  std::vector<std::vector<int>> levels_;
  CountTable table_;
};

}  // namespace detail

inline CountTable count_by_tree(SortClass cls, int max_n) {
  if (max_n < 1) throw std::invalid_argument("count_by_tree: max_n must be >= 1");
  return detail::TreeSearch(cls, max_n).run();
}

// Counts every permutation of each length with the brute-force switchyards.
inline CountTable count_by_oracle(SortClass cls, int max_n) {
  if (max_n < 1) throw std::invalid_argument("count_by_oracle: max_n must be >= 1");
  CountTable t;
  for (int n = 1; n <= max_n; ++n) {
    std::uint64_t c = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      ++t.visited;
      if (oracle_sortable(cls, p)) ++c;
    });
    t.counts.emplace_back(c);
  }
  return t;
}

}  // namespace deqsort
