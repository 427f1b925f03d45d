#pragma once

// Random sortable permutations for large-n tests: drive a switchyard with a
// random legal operation sequence and label each element by the time it
// leaves. The resulting input order is sorted by that sequence.

#include <deque>
#include <random>
#include <vector>

#include "deqsort/permutation.hpp"

namespace deqsort::gen {

enum class Yard { Stack, Deque, ParallelStacks };

inline Permutation random_sortable(Yard yard, int n, std::mt19937_64& rng) {
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::deque<int> d;            // positions, front is the left end / stack 1
  std::vector<int> s1, s2;      // positions, back is the top
  int next_pos = 0, out = 1;
  auto coin = [&] { return (rng() & 1U) != 0; };
  auto occupancy = [&] { return yard == Yard::ParallelStacks ? s1.size() + s2.size() : d.size(); };
  while (out <= n) {
    const bool can_push = next_pos < n;
    const bool push = can_push && (occupancy() == 0 || coin());
    if (push) {
      const int p = next_pos++;
      if (yard == Yard::ParallelStacks)
        (coin() ? s1 : s2).push_back(p);
      else if (yard == Yard::Stack || coin())
        d.push_back(p);
      else
        d.push_front(p);
      continue;
    }
    int p;
    if (yard == Yard::ParallelStacks) {
      auto& s = s2.empty() || (!s1.empty() && coin()) ? s1 : s2;
      p = s.back();
      s.pop_back();
    } else if (yard == Yard::Stack || coin()) {
      p = d.back();
      d.pop_back();
    } else {
      p = d.front();
      d.pop_front();
    }
    label[static_cast<std::size_t>(p)] = out++;
  }
  return Permutation(std::move(label));
}

}  // namespace deqsort::gen
