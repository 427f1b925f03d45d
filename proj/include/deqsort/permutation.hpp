#pragma once

// Permutations of {1..n}, pattern containment, the Pratt basis patterns of
// the parallel-stack and deque classes, and permutation-tree navigation.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deqsort {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAPermutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DuplicateValue : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedClass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SortClass { ParallelStacks, Deque, SingleStack };

inline std::string_view to_string(SortClass cls) {
  switch (cls) {
    case SortClass::ParallelStacks: return "pstacks";
    case SortClass::Deque: return "deque";
    case SortClass::SingleStack: return "stack";
  }
  return "?";
}

// One-line notation; values()[i] is the image of i+1.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> values) : values_(std::move(values)) { validate(); }
  Permutation(std::initializer_list<int> values) : values_(values) { validate(); }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }
  int operator[](std::size_t i) const { return values_[i]; }
  std::span<const int> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(values_[i]);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    return os << '(' << p.to_string() << ')';
  }

 private:
  void validate() const {
    const std::size_t n = values_.size();
    std::vector<bool> seen(n + 1, false);
    for (int v : values_) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw NotAPermutation("value " + std::to_string(v) + " out of range 1.." +
                              std::to_string(n));
      if (seen[static_cast<std::size_t>(v)])
        throw NotAPermutation("value " + std::to_string(v) + " repeated");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  std::vector<int> values_;
};

// Integers separated by whitespace and/or commas.
inline Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',';
  };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw ParseError("malformed token '" + std::string(token) + "'");
    values.push_back(value);
    i = j;
  }
  return Permutation(std::move(values));
}

// Order-isomorphic permutation of a sequence of distinct integers.
inline Permutation reduce(std::span<const int> values) {
  std::vector<int> order(values.begin(), values.end());
  std::sort(order.begin(), order.end());
  if (std::adjacent_find(order.begin(), order.end()) != order.end())
    throw DuplicateValue("reduce: values are not distinct");
  std::vector<int> ranked;
  ranked.reserve(values.size());
  for (int v : values) {
    auto pos = std::lower_bound(order.begin(), order.end(), v) - order.begin();
    ranked.push_back(static_cast<int>(pos) + 1);
  }
  return Permutation(std::move(ranked));
}

namespace detail {

inline bool embed(std::span<const int> pi, std::span<const int> sigma, std::size_t from,
                  std::vector<std::size_t>& chosen) {
  const std::size_t t = chosen.size();
  if (t == sigma.size()) return true;
  const std::size_t need = sigma.size() - t;
  for (std::size_t i = from; i + need <= pi.size(); ++i) {
    bool ok = true;
    for (std::size_t s = 0; s < t && ok; ++s)
      ok = (pi[i] < pi[chosen[s]]) == (sigma[t] < sigma[s]);
    if (!ok) continue;
    chosen.push_back(i);
    if (embed(pi, sigma, i + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace detail

// True iff some subsequence of pi is order-isomorphic to sigma.
inline bool contains(const Permutation& pi, const Permutation& sigma) {
  if (sigma.size() > pi.size()) return false;
  std::vector<std::size_t> chosen;
  chosen.reserve(static_cast<std::size_t>(sigma.size()));
  return detail::embed(pi.values(), sigma.values(), 0, chosen);
}

inline bool avoids_all(const Permutation& pi, std::span<const Permutation> patterns) {
  return std::none_of(patterns.begin(), patterns.end(),
                      [&](const Permutation& p) { return contains(pi, p); });
}

namespace detail {

// The shared zig-zag tail 4 1 6 3 8 5 ... of the Pratt patterns.
inline void append_zigzag(std::vector<int>& out, int pairs) {
  for (int t = 1; t <= pairs; ++t) {
    out.push_back(2 * t + 2);
    out.push_back(2 * t - 1);
  }
}

inline Permutation pstack_basis_at(int len) {
  std::vector<int> v;
  if (len % 4 == 0) {
    v = {2, len - 1};
    append_zigzag(v, (len - 2) / 2);
  } else {
    v = {len - 2, 2, len};
    append_zigzag(v, (len - 3) / 2);
  }
  return Permutation(std::move(v));
}

inline Permutation deque_basis_representative(int len) {
  std::vector<int> v;
  if (len % 4 == 3)
    v = {len - 2, 2, len};
  else
    v = {len, 2, len - 2};
  append_zigzag(v, (len - 3) / 2);
  return Permutation(std::move(v));
}

}  // namespace detail

// Minimal non-members of the class of length <= max_len, ordered by length.
// Deque lengths contribute the representative followed by the variants from
// swapping the first two entries, the two largest values, and both.
inline std::vector<Permutation> basis_patterns(SortClass cls, int max_len) {
  std::vector<Permutation> out;
  switch (cls) {
    case SortClass::SingleStack:
      if (max_len >= 3) out.push_back(Permutation{2, 3, 1});
      break;
    case SortClass::ParallelStacks:
      for (int len = 4; len <= max_len; ++len)
        if (len % 4 == 0 || len % 4 == 3) out.push_back(detail::pstack_basis_at(len));
      break;
    case SortClass::Deque:
      for (int len = 5; len <= max_len; len += 2) {
        const Permutation rep = detail::deque_basis_representative(len);
        std::vector<int> base(rep.begin(), rep.end());
        auto swap_first = [](std::vector<int> v) {
          std::swap(v[0], v[1]);
          return v;
        };
        auto swap_largest = [len](std::vector<int> v) {
          auto a = std::find(v.begin(), v.end(), len);
          auto b = std::find(v.begin(), v.end(), len - 1);
          std::iter_swap(a, b);
          return v;
        };
        const std::size_t first = out.size();
        for (auto& v : {base, swap_first(base), swap_largest(base), swap_largest(swap_first(base))}) {
          Permutation p(v);
          if (std::find(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), p) == out.end())
            out.push_back(std::move(p));
        }
      }
      break;
  }
  return out;
}

// Children in the permutation tree: k+1 inserted at positions 0..k.
inline std::vector<Permutation> tree_children(const Permutation& pi) {
  const int k = pi.size();
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  for (int pos = 0; pos <= k; ++pos) {
    std::vector<int> v(pi.begin(), pi.end());
    v.insert(v.begin() + pos, k + 1);
    out.emplace_back(std::move(v));
  }
  return out;
}

// Calls fn(const Permutation&) for every permutation of {1..n} in
// lexicographic order.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace deqsort
