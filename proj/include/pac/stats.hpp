#pragma once

// Goodness-of-fit and two-sample tests used by the privacy audit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace pac::stats {

struct TestStat {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Survival function of the Kolmogorov distribution, P(K > lambda).
inline double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.18) {
    // Theta-function form, fast for small lambda.
    double y = std::exp(-pi * pi / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k < 50; k += 2) {
      double term = std::pow(y, static_cast<double>(k * k));
      sum += term;
      if (term < 1e-18) break;
    }
    double cdf = std::sqrt(2.0 * pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Asymptotic p-value with Stephens' small-sample correction.
inline double ks_p_value(double d, double effective_n) {
  double en = std::sqrt(effective_n);
  return kolmogorov_q((en + 0.12 + 0.11 / en) * d);
}

// One-sample KS against Uniform[0,1).
inline TestStat ks_uniform(std::vector<double> x) {
  if (x.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - x[i], x[i] - lo});
  }
  return {d, ks_p_value(d, n)};
}

// Two-sample KS; tied values are stepped over together.
inline TestStat ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

inline double chi_squared_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

// Pearson goodness of fit against equal cell probabilities.
inline TestStat chi_squared_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) return {};
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) throw std::invalid_argument("chi_squared_uniform: no observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return {stat, chi_squared_sf(stat, static_cast<double>(counts.size() - 1))};
}

// Pearson homogeneity test on a 2 x K table. Cells empty in both samples
// carry no information and are dropped.
inline TestStat chi_squared_homogeneity(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("chi_squared_homogeneity: size mismatch");
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_squared_homogeneity: empty sample");
  const double n = na + nb;
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double col = static_cast<double>(a[k] + b[k]);
    if (col == 0.0) continue;
    ++cells;
    double ea = na * col / n;
    double eb = nb * col / n;
    double da = static_cast<double>(a[k]) - ea;
    double db = static_cast<double>(b[k]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  if (cells < 2) return {0.0, 1.0};
  return {stat, chi_squared_sf(stat, static_cast<double>(cells - 1))};
}

// Total variation between two empirical histograms.
inline double total_variation(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  double tv = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    tv += std::abs(static_cast<double>(a[k]) / na - static_cast<double>(b[k]) / nb);
  return 0.5 * tv;
}

inline double bonferroni(double p, std::size_t tests) {
  return std::min(1.0, p * static_cast<double>(tests));
}

// Linear-interpolated quantile, q in [0,1].
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile: empty");
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, v.size() - 1);
  double w = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

}  // namespace pac::stats
