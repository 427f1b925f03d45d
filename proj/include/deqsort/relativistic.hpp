#pragma once

// Counting sortable permutations without generating them.
//
// The linear-time test is deterministic, so sortable permutations are in
// bijection with its successful runs, and those runs are in bijection with
// their label-free shadows: piles whose twinstacks remember only the relative
// order of their elements (r-twinstacks). A run decomposes into nested epochs,
// one per pile level; each epoch is itself a smaller run that ends by
// signalling the level below, either 0 (it popped everything) or k > 0 (it
// welded k elements down).
//
// h(S, m, k, b) counts epochs that start from the r-twinstack S, take m input
// steps and end with signal k, using bottom-level transition rules when b is
// set. |C_n| = h(empty, n, 0, 0) and |D_n| = h(empty, n, 0, 1).

#include <absl/container/flat_hash_map.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deqsort/count.hpp"
#include "deqsort/permutation.hpp"

namespace deqsort {

// Longest r-twinstack the packed memo key can hold.
inline constexpr int kMaxRelativisticN = 40;

// Bit i is set iff the (i+1)-th smallest element sits on the left stack.
// Canonical strings keep the smallest element on the left (bit 0 set).
struct RTwinstack {
  std::uint64_t bits = 0;
  int len = 0;

  static constexpr std::uint64_t mask(int width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

  static RTwinstack single() { return {1, 1}; }

  // "1101" lists bits from the smallest element upward.
  static RTwinstack parse(std::string_view text) {
    RTwinstack s;
    if (text.size() > static_cast<std::size_t>(kMaxRelativisticN))
      throw std::invalid_argument("r-twinstack too long");
    for (char c : text) {
      if (c != '0' && c != '1') throw ParseError("r-twinstack must be a 0/1 string");
      if (c == '1') s.bits |= std::uint64_t{1} << s.len;
      ++s.len;
    }
    return s;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < len; ++i) out.push_back(bit(i) ? '1' : '0');
    return out;
  }

  bool bit(int i) const { return (bits >> i) & 1U; }
  bool empty() const { return len == 0; }
  bool one_sided() const { return bits == mask(len); }
  bool canonical() const { return len == 0 || bit(0); }

  friend bool operator==(RTwinstack, RTwinstack) = default;
};

// All bits but possibly the last agree.
inline bool is_monotonic_rts(RTwinstack s) {
  if (s.len <= 2) return true;
  const std::uint64_t head = s.bits & RTwinstack::mask(s.len - 1);
  return head == 0 || head == RTwinstack::mask(s.len - 1);
}

// Signal the epoch above must send so this one can end with signal k while S
// stays untouched; -1 when none can.
inline int k_prime(RTwinstack s, int k) {
  if (k == 0) return 0;
  if (s.one_sided() && s.len < k) return k - s.len;
  return -1;
}

// r-twinstacks reachable from S when the epoch above ends with signal j.
//
// j > 0: a weld of one large element y and j-1 elements smaller than all of
// S. y goes on the right above at least one element and below the first
// right-side element; the small ones go on the left. At the bottom level an
// end insertion is tucked under the left side instead.
//
// j = 0: the epoch above popped out and S may now lose any number of its
// smallest elements. At the bottom level a survivor that is monotonic is
// stored one-sided.
inline std::vector<RTwinstack> transition_list(RTwinstack s, int j, bool bottom) {
  std::vector<RTwinstack> out;
  const int len = s.len;
  int first_zero = len;
  for (int i = 0; i < len; ++i)
    if (!s.bit(i)) {
      first_zero = i;
      break;
    }
  if (j > 0) {
    out.reserve(static_cast<std::size_t>(first_zero));
    for (int i = 1; i <= first_zero; ++i) {
      const std::uint64_t low = s.bits & RTwinstack::mask(i);
      const std::uint64_t high = s.bits >> i;
      RTwinstack x{low | (high << (i + 1)), len + 1};
      if (bottom && i == len) x.bits |= std::uint64_t{1} << len;
      x.bits = (x.bits << (j - 1)) | RTwinstack::mask(j - 1);
      x.len += j - 1;
      out.push_back(x);
    }
    return out;
  }
  // longest monotonic suffix
  int mono_suffix = 0;
  for (int l = len; l >= 0; --l) {
    RTwinstack suffix{s.bits >> (len - l), l};
    if (is_monotonic_rts(suffix)) {
      mono_suffix = l;
      break;
    }
  }
  out.reserve(static_cast<std::size_t>(len) + 1);
  for (int i = 0; i <= len; ++i) {
    RTwinstack x{s.bits >> i, len - i};
    if (x.len > 0 && !x.bit(0)) x.bits ^= RTwinstack::mask(x.len);
    if (bottom && x.len <= mono_suffix && x.len > 0) x.bits |= std::uint64_t{1} << (x.len - 1);
    out.push_back(x);
  }
  return out;
}

// Memoized h(S, m, k, b). Single-threaded: each instance owns its store, and
// one instance can serve every n and both classes since h does not depend on
// n.
class RelativisticCounter {
 public:
  Count h(RTwinstack s, int m, int k, bool bottom) {
    if (k < 0) return Count(0);
    if (m < 1) throw std::invalid_argument("h: m must be >= 1");
    if (s.len > kMaxRelativisticN || m > kMaxRelativisticN || k > kMaxRelativisticN)
      throw std::invalid_argument("h: argument exceeds the configured cap");
    return eval(s, m, k, bottom);
  }

  Count count_sortable(SortClass cls, int n) {
    if (n < 1) throw std::invalid_argument("count_sortable: n must be >= 1");
    switch (cls) {
      case SortClass::Deque: return h({}, n, 0, true);
      case SortClass::ParallelStacks: return h({}, n, 0, false);
      case SortClass::SingleStack: break;
    }
    throw UnsupportedClass("the relativistic counter covers deques and parallel stacks only");
  }

  std::size_t memo_size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  // 128-bit value split so map slots stay 8-byte aligned.
  struct Packed {
    std::uint64_t lo;
    std::uint64_t hi;
  };

  static std::uint64_t key(RTwinstack s, int m, int k, bool bottom) {
    return s.bits | (static_cast<std::uint64_t>(s.len) << 40) |
           (static_cast<std::uint64_t>(m) << 46) | (static_cast<std::uint64_t>(k) << 52) |
           (static_cast<std::uint64_t>(bottom) << 58);
  }

  Count eval(RTwinstack s, int m, int k, bool bottom) {
    if (k < 0) return Count(0);
    const std::uint64_t id = key(s, m, k, bottom);
    if (auto it = memo_.find(id); it != memo_.end())
      return Count::from_raw((static_cast<Count::raw_type>(it->second.hi) << 64) | it->second.lo);

    Count result;
    if (m == 1) {
      result = Count(k == 0 || (s.one_sided() && s.len == k - 1) ? 1 : 0);
    } else if (s.empty()) {
      result = eval(RTwinstack::single(), m - 1, k, bottom) + eval({}, m - 1, k, bottom);
    } else {
      // S untouched until the epoch above ends with the one usable signal
      const int kp = k_prime(s, k);
      if (kp != -1)
        result = eval(RTwinstack::single(), m - 1, kp, false) + eval({}, m - 1, kp, false);
      // S first changes after i steps on signal j
      for (int i = 1; i <= m - 1; ++i) {
        for (int j = 0; j <= i + 1; ++j) {
          const Count above = eval({}, i, j, false);
          if (above.is_zero()) continue;
          Count inner;
          for (RTwinstack next : transition_list(s, j, bottom))
            if (!(next == s)) inner += eval(next, m - i, k, bottom);
          result += above * inner;
        }
      }
    }
    const auto raw = result.raw();
    memo_.emplace(id, Packed{static_cast<std::uint64_t>(raw), static_cast<std::uint64_t>(raw >> 64)});
    return result;
  }

  absl::flat_hash_map<std::uint64_t, Packed> memo_;
};

inline Count count_sortable(SortClass cls, int n) {
  return RelativisticCounter().count_sortable(cls, n);
}

}  // namespace deqsort
