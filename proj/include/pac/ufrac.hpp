#pragma once

// Exact arithmetic on the unit interval [0,1) under addition modulo 1.
//
// A UFrac stores k in 64 bits and denotes k * 2^-64. Unsigned wraparound is
// exactly mod-1 addition, so sums of masks cancel bit-for-bit.

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pac {

class UFrac {
 public:
  constexpr UFrac() = default;
  constexpr explicit UFrac(std::uint64_t raw) : raw_(raw) {}

  constexpr std::uint64_t raw() const { return raw_; }

  // Nearest lattice point to frac(x); ties round toward zero.
  static UFrac from_real(double x);

  // Same as from_real but on the exact decimal value of `text`
  // (e.g. "0.1" is 1/10, not the double nearest to it).
  static UFrac from_decimal(std::string_view text);

  // Nearest double in [0,1).
  double to_real() const {
    double v = std::ldexp(static_cast<double>(raw_), -64);
    if (v >= 1.0) v = std::nextafter(1.0, 0.0);
    return v;
  }

  template <class Rng>
  static UFrac uniform(Rng& rng) {
    static_assert(Rng::min() == 0 && Rng::max() == std::numeric_limits<std::uint64_t>::max(),
                  "UFrac::uniform needs a full-width 64-bit engine");
    return UFrac(static_cast<std::uint64_t>(rng()));
  }

  constexpr UFrac operator+(UFrac o) const { return UFrac(raw_ + o.raw_); }
  constexpr UFrac operator-(UFrac o) const { return UFrac(raw_ - o.raw_); }
  constexpr UFrac operator-() const { return UFrac(0 - raw_); }
  constexpr UFrac& operator+=(UFrac o) {
    raw_ += o.raw_;
    return *this;
  }
  constexpr UFrac& operator-=(UFrac o) {
    raw_ -= o.raw_;
    return *this;
  }

  // Integer multiple, i.e. frac(m * x).
  constexpr UFrac times(std::int64_t m) const {
    return UFrac(raw_ * static_cast<std::uint64_t>(m));
  }

  constexpr auto operator<=>(const UFrac&) const = default;

 private:
  std::uint64_t raw_ = 0;
};

constexpr UFrac add(UFrac a, UFrac b) { return a + b; }
constexpr UFrac neg(UFrac a) { return -a; }

inline UFrac sum_frac(std::span<const UFrac> values) {
  return std::accumulate(values.begin(), values.end(), UFrac{});
}
inline UFrac sum_frac(std::initializer_list<UFrac> values) {
  return sum_frac(std::span<const UFrac>(values.begin(), values.size()));
}

inline UFrac from_real(double x) { return UFrac::from_real(x); }
inline double to_real(UFrac a) { return a.to_real(); }

// Distance between two lattice points in the mod-1 metric, in quanta.
constexpr std::uint64_t lattice_distance(UFrac a, UFrac b) {
  std::uint64_t d = a.raw() - b.raw();
  std::uint64_t e = b.raw() - a.raw();
  return d < e ? d : e;
}

// True iff a < 1/n on the lattice, i.e. a * n < 2^64.
inline bool below_inverse(UFrac a, std::size_t n) {
  return static_cast<unsigned __int128>(a.raw()) * n < (static_cast<unsigned __int128>(1) << 64);
}

// 17 significant digits, enough to round-trip the double rendering.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline UFrac UFrac::from_real(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("UFrac::from_real: non-finite input");
  if (x == 0.0) return UFrac{};
  int exp = 0;
  double f = std::frexp(x, &exp);  // x = f * 2^exp, 0.5 <= |f| < 1
  auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
  int shift = exp - 53 + 64;  // x * 2^64 = mant * 2^shift
  if (shift >= 64) return UFrac{};
  if (shift >= 0) return UFrac(static_cast<std::uint64_t>(mant) << shift);
  int s = -shift;
  if (s > 100) s = 100;
  // Round mant / 2^s to nearest, ties downward (toward zero on frac(x)).
  __int128 num = static_cast<__int128>(mant) + ((static_cast<__int128>(1) << (s - 1)) - 1);
  __int128 q = num >> s;  // arithmetic shift == floor
  return UFrac(static_cast<std::uint64_t>(q));
}

inline UFrac UFrac::from_decimal(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("UFrac::from_decimal: malformed decimal '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  bool any_digit = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    any_digit = true;
    ++pos;
  }
  std::vector<std::uint8_t> digits;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      digits.push_back(static_cast<std::uint8_t>(text[pos] - '0'));
      any_digit = true;
      ++pos;
    }
  }
  if (!any_digit) fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    // Exponent form: shift the decimal point. Integer digits only matter for
    // negative exponents, so rebuild the digit string.
    std::string_view mantissa = text.substr(0, pos);
    int e = 0;
    try {
      e = std::stoi(std::string(text.substr(pos + 1)));
    } catch (const std::exception&) {
      fail();
    }
    std::string ints, fracs;
    for (char c : mantissa) {
      if (c == '.') break;
      if (c >= '0' && c <= '9') ints.push_back(c);
    }
    for (auto d : digits) fracs.push_back(static_cast<char>('0' + d));
    std::string all = ints + fracs;
    long point = static_cast<long>(ints.size()) + e;
    std::string frac_part;
    if (point < 0) {
      frac_part = std::string(static_cast<std::size_t>(-point), '0') + all;
    } else if (static_cast<std::size_t>(point) < all.size()) {
      frac_part = all.substr(static_cast<std::size_t>(point));
    }
    digits.clear();
    for (char c : frac_part) digits.push_back(static_cast<std::uint8_t>(c - '0'));
  } else if (pos != text.size()) {
    fail();
  }

  // Binary expansion of the decimal fraction by repeated doubling:
  // 64 result bits, one guard bit, and a sticky flag for the remainder.
  std::uint64_t raw = 0;
  bool guard = false;
  for (int bit = 0; bit < 65; ++bit) {
    int carry = 0;
    for (std::size_t k = digits.size(); k-- > 0;) {
      int v = digits[k] * 2 + carry;
      digits[k] = static_cast<std::uint8_t>(v % 10);
      carry = v / 10;
    }
    if (bit < 64) {
      raw = (raw << 1) | static_cast<std::uint64_t>(carry);
    } else {
      guard = carry != 0;
    }
  }
  bool sticky = false;
  for (auto d : digits) sticky |= d != 0;
  // Ties go toward zero on frac(value), which for a negative value means
  // rounding its magnitude up.
  if (guard && (sticky || negative)) ++raw;

  UFrac value(raw);
  return negative ? -value : value;
}

}  // namespace pac
