#pragma once

// Exact nonnegative counts with 128 bits of headroom. Every arithmetic
// operation is checked; overflow throws instead of wrapping.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deqsort {

class OverflowDetected : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class Count {
 public:
  __extension__ using raw_type = unsigned __int128;

  constexpr Count() = default;
  constexpr Count(std::uint64_t v) : value_(v) {}  // NOLINT: implicit by intent

  static constexpr Count from_raw(raw_type v) {
    Count c;
    c.value_ = v;
    return c;
  }

  constexpr raw_type raw() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  bool fits_u64() const { return value_ <= UINT64_MAX; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw OverflowDetected("count does not fit in 64 bits");
    return static_cast<std::uint64_t>(value_);
  }

  Count& operator+=(Count rhs) {
    if (__builtin_add_overflow(value_, rhs.value_, &value_))
      throw OverflowDetected("count addition overflowed 128 bits");
    return *this;
  }
  Count& operator*=(Count rhs) {
    if (__builtin_mul_overflow(value_, rhs.value_, &value_))
      throw OverflowDetected("count multiplication overflowed 128 bits");
    return *this;
  }
  friend Count operator+(Count a, Count b) { return a += b; }
  friend Count operator*(Count a, Count b) { return a *= b; }

  friend constexpr bool operator==(Count a, Count b) { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(Count a, Count b) {
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    if (value_ == 0) return "0";
    std::string out;
    raw_type v = value_;
    while (v != 0) {
      out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Accepts plain decimal digits, optionally grouped with ',' or '_'.
  static Count parse(std::string_view text) {
    Count result;
    bool any = false;
    for (char ch : text) {
      if (ch == ',' || ch == '_') continue;
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("malformed count: " + std::string(text));
      result *= Count(10);
      result += Count(static_cast<std::uint64_t>(ch - '0'));
      any = true;
    }
    if (!any) throw std::invalid_argument("empty count");
    return result;
  }

  friend std::ostream& operator<<(std::ostream& os, Count c) { return os << c.to_string(); }

 private:
  raw_type value_ = 0;
};

inline Count factorial(unsigned n) {
  Count out(1);
  for (unsigned i = 2; i <= n; ++i) out *= Count(i);
  return out;
}

}  // namespace deqsort
