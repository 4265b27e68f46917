#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pac/rng.hpp"
#include "pac/ufrac.hpp"

using namespace pac;
namespace mp = boost::multiprecision;

namespace {

// Exact reference: nearest integer to frac(num/den) * 2^64, ties toward zero,
// reduced mod 2^64.
std::uint64_t oracle_quantize(mp::cpp_int num, mp::cpp_int den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const mp::cpp_int two64 = mp::cpp_int(1) << 64;
  mp::cpp_int floor_q = num / den;
  if (num < 0 && floor_q * den != num) floor_q -= 1;
  mp::cpp_int rem = num - floor_q * den;  // frac = rem / den in [0, 1)
  mp::cpp_int scaled = rem * two64;
  mp::cpp_int q = scaled / den;
  mp::cpp_int r = scaled - q * den;
  if (2 * r > den) q += 1;
  return static_cast<std::uint64_t>(q % two64);
}

std::uint64_t oracle_from_double(double x) {
  int exp = 0;
  double f = std::frexp(x, &exp);
  auto mant = static_cast<long long>(std::ldexp(f, 53));
  int shift = exp - 53;
  mp::cpp_int num = mant, den = 1;
  if (shift >= 0) num <<= shift;
  else den <<= -shift;
  return oracle_quantize(num, den);
}

std::uint64_t oracle_from_decimal(const std::string& digits_before, const std::string& digits_after, bool negative) {
  mp::cpp_int num(digits_before.empty() ? "0" : digits_before);
  mp::cpp_int den = 1;
  for (char c : digits_after) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (negative) num = -num;
  return oracle_quantize(num, den);
}

}  // namespace

TEST(UFrac, HalfAndQuarterAreExact) {
  EXPECT_EQ(UFrac::from_real(0.5).raw(), 1ULL << 63);
  EXPECT_EQ(UFrac::from_real(0.25).raw(), 1ULL << 62);
  EXPECT_EQ(UFrac::from_real(0.75).to_real(), 0.75);
  EXPECT_EQ(UFrac::from_real(1.0).raw(), 0U);
  EXPECT_EQ(UFrac::from_real(-0.25).raw(), 3ULL << 62);
}

TEST(UFrac, FromRealMatchesRationalOracle) {
  Engine rng(20240601);
  std::uniform_real_distribution<double> wide(-8.0, 8.0);
  for (int k = 0; k < 20000; ++k) {
    double x = k % 3 == 0 ? std::ldexp(wide(rng), -static_cast<int>(rng() % 80)) : wide(rng);
    ASSERT_EQ(UFrac::from_real(x).raw(), oracle_from_double(x)) << format_real(x);
  }
}

TEST(UFrac, FromRealTiesRoundTowardZero) {
  // 2^-65 is exactly half a quantum.
  EXPECT_EQ(UFrac::from_real(std::ldexp(1.0, -65)).raw(), 0U);
  EXPECT_EQ(UFrac::from_real(std::ldexp(3.0, -65)).raw(), 1U);
  EXPECT_EQ(UFrac::from_real(std::ldexp(1.0, -65) + std::ldexp(1.0, -70)).raw(), 1U);
}

TEST(UFrac, FromDecimalMatchesRationalOracle) {
  Engine rng(77);
  for (int k = 0; k < 5000; ++k) {
    std::string before = std::to_string(rng() % 5);
    std::string after;
    std::size_t len = 1 + rng() % 40;
    for (std::size_t d = 0; d < len; ++d) after += static_cast<char>('0' + rng() % 10);
    bool negative = rng() % 4 == 0;
    std::string text = (negative ? "-" : "") + before + "." + after;
    ASSERT_EQ(UFrac::from_decimal(text).raw(), oracle_from_decimal(before, after, negative)) << text;
  }
}

TEST(UFrac, FromDecimalFrozenValues) {
  // Nearest lattice points to 1/10, 2/10, 3/20 (frozen from the oracle above).
  EXPECT_EQ(UFrac::from_decimal("0.1").raw(), 1844674407370955162ULL);
  EXPECT_EQ(UFrac::from_decimal("0.2").raw(), 3689348814741910323ULL);
  EXPECT_EQ(UFrac::from_decimal("0.15").raw(), 2767011611056432742ULL);
  EXPECT_EQ(UFrac::from_decimal("0.45").raw(), 8301034833169298227ULL);
  EXPECT_EQ(UFrac::from_decimal("0.1").raw(), oracle_from_decimal("0", "1", false));
  EXPECT_EQ(UFrac::from_decimal("1e-1").raw(), UFrac::from_decimal("0.1").raw());
}

TEST(UFrac, FromDecimalRejectsGarbage) {
  for (const char* bad : {"", "-", ".", "abc", "0.1x", "1e", "--1"})
    EXPECT_THROW(UFrac::from_decimal(bad), std::invalid_argument) << bad;
}

TEST(UFrac, NonFiniteRejected) {
  EXPECT_THROW(UFrac::from_real(std::nan("")), std::invalid_argument);
  EXPECT_THROW(UFrac::from_real(INFINITY), std::invalid_argument);
}

TEST(UFrac, RoundTripsDoublesOnTheLattice) {
  Engine rng(5);
  for (int k = 0; k < 10000; ++k) {
    double x = std::ldexp(1.0 + unit_double(rng), -1 - static_cast<int>(rng() % 10));
    ASSERT_EQ(UFrac::from_real(x).to_real(), x);
  }
}

TEST(UFrac, GroupLaws) {
  Engine rng(99);
  for (int k = 0; k < 10000; ++k) {
    UFrac a = UFrac::uniform(rng), b = UFrac::uniform(rng), c = UFrac::uniform(rng);
    ASSERT_EQ(add(a, b), add(b, a));
    ASSERT_EQ(add(add(a, b), c), add(a, add(b, c)));
    ASSERT_EQ(add(a, UFrac{}), a);
    ASSERT_EQ(add(a, neg(a)), UFrac{});
    ASSERT_EQ(a - b, add(a, neg(b)));
    ASSERT_EQ(a.times(3), a + a + a);
    ASSERT_EQ(a.times(-1), neg(a));
  }
  EXPECT_EQ(neg(UFrac{}), UFrac{});
}

TEST(UFrac, WrappingMatchesRealFractionalPart) {
  UFrac a = from_real(0.75), b = from_real(0.5);
  EXPECT_EQ(to_real(add(a, b)), 0.25);
  EXPECT_EQ(to_real(neg(from_real(0.25))), 0.75);
}

TEST(UFrac, SumIsPermutationInvariant) {
  Engine rng(3);
  for (int k = 0; k < 200; ++k) {
    std::vector<UFrac> v(1 + rng() % 30);
    for (auto& x : v) x = UFrac::uniform(rng);
    UFrac s = sum_frac(v);
    std::shuffle(v.begin(), v.end(), rng);
    ASSERT_EQ(sum_frac(v), s);
  }
  EXPECT_EQ(sum_frac({from_real(0.5), from_real(0.5)}), UFrac{});
}

TEST(UFrac, ToRealStaysBelowOne) {
  EXPECT_LT(UFrac(~0ULL).to_real(), 1.0);
  EXPECT_EQ(UFrac(0).to_real(), 0.0);
}

TEST(UFrac, LatticeDistanceIsCircular) {
  EXPECT_EQ(lattice_distance(UFrac(1), UFrac(~0ULL)), 2U);
  EXPECT_EQ(lattice_distance(UFrac(10), UFrac(3)), 7U);
}

TEST(UFrac, BelowInverse) {
  const std::uint64_t third = 0x5555555555555555ULL;  // floor(2^64 / 3)
  EXPECT_TRUE(below_inverse(UFrac(third), 3));
  EXPECT_FALSE(below_inverse(UFrac(third + 1), 3));
  EXPECT_TRUE(below_inverse(UFrac(~0ULL), 1));
  EXPECT_FALSE(below_inverse(UFrac(1ULL << 63), 2));
}

TEST(Rng, DerivedSeedsAreStable) {
  EXPECT_EQ(derive_seed(1, Stream::Agent, 0), derive_seed(1, Stream::Agent, 0));
  EXPECT_NE(derive_seed(1, Stream::Agent, 0), derive_seed(1, Stream::Agent, 1));
  EXPECT_NE(derive_seed(1, Stream::Agent, 0), derive_seed(1, Stream::Scheduler, 0));
  Engine rng(4);
  for (int k = 0; k < 1000; ++k) ASSERT_LT(uniform_below(rng, 7), 7U);
}
