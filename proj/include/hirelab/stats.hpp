#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hirelab/error.hpp"

namespace hirelab {

/// Sample mean with its normal-approximation standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;

  /// |mean - target| measured in standard errors (inf when std_error is 0 and
  /// the values differ).
  double z_score(double target) const {
    const double diff = std::abs(mean - target);
    if (std_error > 0.0) return diff / std_error;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }

  bool within_sigmas(double target, double sigmas) const { return z_score(target) <= sigmas; }
};

/// Count, mean and centered second moment. Merging uses the pairwise
/// update, so a fixed merge order gives bit-identical results.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) noexcept {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
  }

  double variance() const noexcept {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }

  Estimate estimate() const noexcept {
    return {mean, count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0, count};
  }
};

/// Cheap per-chunk accumulator: sums of (x - shift) and its square, with the
/// shift fixed to the first value seen. Converted to Moments at chunk end.
struct ShiftedSums {
  std::uint64_t count = 0;
  double shift = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;

  void add(double x) noexcept {
    if (count == 0) shift = x;
    const double d = x - shift;
    ++count;
    s1 += d;
    s2 += d * d;
  }

  Moments moments() const noexcept {
    Moments m;
    if (count == 0) return m;
    const double n = static_cast<double>(count);
    const double dm = s1 / n;
    m.count = count;
    m.mean = shift + dm;
    m.m2 = std::max(0.0, s2 - s1 * dm);
    return m;
  }
};

/// Bernoulli proportion estimate.
inline Estimate proportion(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) return {};
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  const double var = trials > 1 ? p * (1.0 - p) * static_cast<double>(trials) /
                                      static_cast<double>(trials - 1)
                                : 0.0;
  return {p, std::sqrt(var / static_cast<double>(trials)), trials};
}

/// Complementary Kolmogorov distribution Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

namespace detail {

inline double ks_p_value(double d, double effective_n) {
  const double sn = std::sqrt(effective_n);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace detail

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, detail::ks_p_value(d, na * nb / (na + nb))};
}

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
inline KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, detail::ks_p_value(d, n)};
}

enum class PowerLawSense { Decaying, Growing };

/// value ~ amplitude * k^{+-exponent}, fitted by least squares on
/// (log k, log value) over the inclusive window [first, last] of k.
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t points = 0;
  double r_squared = 0.0;
};

/// Fit a power law to (k, value) pairs with k in [window_lo, window_hi].
/// For PowerLawSense::Decaying the exponent is reported as -slope, so
/// value ~ k^{-beta} yields beta > 0.
inline PowerLawFit fit_power_law(std::span<const std::pair<double, double>> series,
                                 double window_lo, double window_hi,
                                 PowerLawSense sense = PowerLawSense::Decaying) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (const auto& [k, v] : series) {
    if (k < window_lo || k > window_hi) continue;
    if (!(k > 0.0) || !(v > 0.0))
      throw DomainError("fit_power_law: non-positive value in window");
    const double x = std::log(k);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  if (n < 5) throw DomainError("fit_power_law: window needs at least 5 points");
  const double nn = static_cast<double>(n);
  const double cxx = sxx - sx * sx / nn;
  const double cxy = sxy - sx * sy / nn;
  const double cyy = syy - sy * sy / nn;
  const double slope = cxy / cxx;
  const double intercept = (sy - slope * sx) / nn;
  PowerLawFit fit;
  fit.exponent = sense == PowerLawSense::Decaying ? -slope : slope;
  fit.amplitude = std::exp(intercept);
  fit.window = {window_lo, window_hi};
  fit.points = n;
  fit.r_squared = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  return fit;
}

}  // namespace hirelab
