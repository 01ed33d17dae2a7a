#pragma once

// Closed forms, recurrences and named constants for the three hiring
// strategies. Rational results are exact (GMP); the rest are doubles or
// 50-digit binary floats where noted.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hirelab/error.hpp"
#include "hirelab/gaps.hpp"
#include "hirelab/rational.hpp"
#include "hirelab/score_dist.hpp"
#include "hirelab/strategy.hpp"

namespace hirelab {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

// ---------------------------------------------------------------------------
// Gaps

/// xi_j = 2^{-j} for MIS with uniform scores.
inline Rational mis_xi(int j) {
  detail::require_positive(j, "mis_xi");
  return Rational(BigInt(1), pow2(static_cast<unsigned long>(j)));
}

/// mu_n = (1 - 2^{-n}) / n for MIS with uniform scores.
inline Rational mis_mu(int n) {
  detail::require_positive(n, "mis_mu");
  Rational r = (Rational(1) - mis_xi(n)) / Rational(n);
  r.canonicalize();
  return r;
}

/// Exact mu_n for AIS with uniform scores: binom(2n, n) / 4^n.
inline Rational ais_mu_exact(int n) {
  detail::require_positive(n, "ais_mu_exact");
  Rational r(binomial(2UL * static_cast<unsigned long>(n), static_cast<unsigned long>(n)),
             pow2(2UL * static_cast<unsigned long>(n)));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// All-hired probabilities

/// Product form prod_{j=1}^{N-1} [1 - (j/(j+1))^{N-j}] for AIS with uniform scores.
inline Rational ais_uniform_F_product(int N) {
  detail::require_positive(N, "ais_uniform_F_product");
  Rational f(1);
  for (int j = 1; j < N; ++j) {
    const Rational ratio(j, j + 1);
    f *= Rational(1) - pow(ratio, static_cast<unsigned long>(N - j));
  }
  f.canonicalize();
  return f;
}

/// log F_N for AIS with uniform scores, in floating point (usable for large N).
inline double ais_uniform_log_F(int N) {
  detail::require_positive(N, "ais_uniform_log_F");
  double s = 0.0;
  for (int j = 1; j < N; ++j) {
    const double q = std::exp((N - j) * std::log1p(-1.0 / (j + 1.0)));
    s += std::log1p(-q);
  }
  return s;
}

/// F_N for every (strategy, law) pair with a known closed form.
inline Rational F_exact(const StrategySpec& strategy, ScoreLaw law, int N) {
  if (N < 1) throw DomainError("F_exact: N must be >= 1");
  const auto uN = static_cast<unsigned long>(N);
  switch (strategy.kind) {
    case StrategyKind::MIS:
      return Rational(BigInt(1), factorial(uN));
    case StrategyKind::LIS: {
      const auto c = static_cast<unsigned long>(strategy.committee);
      if (uN <= c) return Rational(BigInt(1), factorial(uN));
      return Rational(BigInt(1), factorial(c) * pow(BigInt(c + 1), uN - c));
    }
    case StrategyKind::mLIS1: {
      Rational r(BigInt(N + 1), pow2(uN));
      r.canonicalize();
      return r;
    }
    case StrategyKind::AIS:
      switch (law) {
        case ScoreLaw::Uniform: return ais_uniform_F_product(N);
        case ScoreLaw::Exponential: {
          Rational r(factorial(uN), pow(BigInt(N), uN));
          r.canonicalize();
          return r;
        }
        case ScoreLaw::Tent: {
          if (N == 1) return Rational(1);
          if (N == 2) return make_rational(1, 2);
          if (N == 3) return make_rational(17, 72);
          throw UnsupportedError("F_N for AIS with tent scores is only known for N <= 3");
        }
      }
  }
  throw UnsupportedError("F_exact: unsupported strategy");
}

/// Published F_N for AIS with uniform scores, N = 1..9.
inline const std::vector<std::pair<int, std::string>>& published_ais_uniform_F() {
  static const std::vector<std::pair<int, std::string>> table = {
      {1, "1"},
      {2, "1/2"},
      {3, "1/4"},
      {4, "35/288"},
      {5, "133/2304"},
      {6, "14911/552960"},
      {7, "991067/79626240"},
      {8, "13058067737/2293235712000"},
      {9, "3014412193738231/1165037125238784000"},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Superior companies, MIS with uniform scores

struct DnEntry {
  Rational probability;  // P_n
  BigInt count;          // D_n = P_n 2^{n^2}
};

/// P_n = sum_{k=1}^n (-1)^{k-1} C(n,k) 2^{-nk} P_{n-k}, P_0 = 1, and the
/// acyclic digraph count D_n = P_n 2^{n^2}. The table is memoized.
inline DnEntry dn_recurrence(int n) {
  if (n < 0) throw DomainError("dn_recurrence: n must be >= 0");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  Rational p;
  {
    std::lock_guard lock(mu);
    for (int m = static_cast<int>(table.size()); m <= n; ++m) {
      const auto um = static_cast<unsigned long>(m);
      Rational s(0);
      for (unsigned long k = 1; k <= um; ++k) {
        Rational term(binomial(um, k), pow2(um * k));
        term.canonicalize();
        term *= table[um - k];
        if (k % 2 == 1) s += term;
        else s -= term;
      }
      s.canonicalize();
      table.push_back(s);
    }
    p = table[static_cast<std::size_t>(n)];
  }
  const auto un = static_cast<unsigned long>(n);
  Rational scaled = p * Rational(pow2(un * un));
  scaled.canonicalize();
  if (!is_integer(scaled) || scaled <= 0)
    throw ConsistencyError("P_n 2^{n^2} is not a positive integer at n = " + std::to_string(n));
  return {p, scaled.get_num()};
}

// ---------------------------------------------------------------------------
// Named constants

struct NamedConstant {
  std::string name;
  double value = 0.0;
  std::string provenance;  // "quadrature" | "closed form" | "literature"
  bool heuristic = false;  // true when the value rests on a heuristic derivation
  std::string note;
};

/// Quoted decimal values of the quadrature constants and their precision.
inline constexpr double kPublishedLambda = 0.8433021075;
inline constexpr double kPublishedLambdaTol = 1e-9;
inline constexpr double kPublishedAgeAmplitude = 0.296788;
inline constexpr double kPublishedAgeAmplitudeTol = 1e-6;

/// Robinson/Stanley asymptotic D_n ~ n! 2^{n(n-1)/2} / (M p^n).
inline constexpr double kRobinsonP = 1.488078545599710;
inline constexpr double kRobinsonM = 0.5743623733093115;
/// M as printed alongside the asymptotic (a digit slip for 0.574...).
inline constexpr double kRobinsonMPrinted = 0.474;

/// Lambda = -int_0^1 ln(1 - e^{1-1/y}) dy, decay rate of F_N for AIS.
/// With u = 1 - y the integrand is -ln(-expm1(-u/(1-u))): a log singularity
/// at u = 0 and a flat tail towards u = 1. Split at u = 1/2.
inline double compute_lambda() {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [](double u) {
    if (u >= 1.0) return 0.0;
    return -std::log(-std::expm1(-u / (1.0 - u)));
  };
  return integrator.integrate(f, 0.0, 0.5, 1e-14) + integrator.integrate(f, 0.5, 1.0, 1e-14);
}

/// C = e^2 int_1^inf exp(-2 x^{3/2}) dx, amplitude of <j_n> ~ C n for AIS.
/// Integrated as e^2 (2/3) int_1^inf t^{-1/3} e^{-2t} dt (t = x^{3/2}).
inline double compute_age_amplitude() {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [](double t) { return (2.0 / 3.0) * std::pow(t, -1.0 / 3.0) * std::exp(-2.0 * t); };
  return std::exp(2.0) * integrator.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-14);
}

/// B = 3 / sqrt(pi), amplitude of nu_n ~ B n^{-3/2} for AIS.
inline double best_gap_amplitude() { return 3.0 / std::sqrt(boost::math::constants::pi<double>()); }

inline std::vector<NamedConstant> constants() {
  return {
      {"Lambda", compute_lambda(), "quadrature", false, "lim -ln(F_N)/N for AIS, uniform scores"},
      {"C_age", compute_age_amplitude(), "quadrature", true, "<j_n> ~ C n for AIS"},
      {"B_amp", best_gap_amplitude(), "closed form", true, "nu_n ~ B n^{-3/2} for AIS"},
      {"p_mis", kRobinsonP, "literature", false, "D_n ~ n! 2^{n(n-1)/2} / (M p^n)"},
      {"M_mis", kRobinsonM, "literature", false,
       "recomputed from the exact recurrence; printed as 0.474"},
      {"EulerGamma", boost::math::constants::euler<double>(), "literature", false, "H_n ~ ln n + gamma"},
  };
}

/// Asymptotic P_n ~ n! / (M p^n) 2^{-n(n+1)/2} for MIS with uniform scores.
inline double mis_pn_asymptotic(int n, double p = kRobinsonP, double M = kRobinsonM) {
  detail::require_positive(n, "mis_pn_asymptotic");
  const double log_value = std::lgamma(n + 1.0) - std::log(M) - n * std::log(p) -
                           0.5 * n * (n + 1.0) * std::log(2.0);
  return std::exp(log_value);
}

// ---------------------------------------------------------------------------
// Score densities

/// Marks rho_infinity in density_closed_form.
inline constexpr int kLimitingSize = std::numeric_limits<int>::max();

enum class DensityForm { Exact, AllowHeuristic };

struct DensityValue {
  double value = 0.0;
  bool heuristic = false;
};

/// Pointwise rho_n(x) for the supported cases:
///  - MIS, uniform: sum_{j<n} t^j / j!, t = -ln(1-x); n = kLimitingSize gives 1/(1-x).
///  - LIS(c), uniform, n <= c+1: same as MIS.
///  - AIS, uniform: n <= 3 exactly (rho_3 has a breakpoint at 1/2); for n >= 4
///    the small-x form sum_{j<n} t^j on x < 1/(n-1); with AllowHeuristic the
///    large-n estimate (2/3pi)(1-x)^{-3}, capped at (2/3pi)(pi n)^{3/2}.
inline DensityValue density_closed_form(const StrategySpec& strategy, ScoreLaw law, int n,
                                        double x, DensityForm form = DensityForm::Exact) {
  if (n < 1) throw DomainError("density_closed_form: n must be >= 1");
  if (law != ScoreLaw::Uniform)
    throw UnsupportedError("density_closed_form: only uniform scores have closed forms");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("density_closed_form: x must lie in (0, 1)");
  const double t = -std::log1p(-x);
  auto mis = [&](int size) {
    if (size == kLimitingSize) return 1.0 / (1.0 - x);
    double term = 1.0, sum = 0.0;
    for (int j = 0; j < size; ++j) {
      sum += term;
      term *= t / (j + 1);
    }
    return sum;
  };
  const bool mis_like = strategy.kind == StrategyKind::MIS ||
                        (strategy.kind == StrategyKind::LIS && n <= strategy.committee + 1) ||
                        (strategy.kind != StrategyKind::mLIS1 && n <= 2);
  if (mis_like) return {mis(n), false};
  if (strategy.kind == StrategyKind::AIS) {
    if (n == 3) {
      if (x < 0.5) return {1.0 + t + t * t, false};
      const double ln2 = std::log(2.0);
      return {1.0 - ln2 * ln2 + (1.0 + 2.0 * ln2) * t, false};
    }
    if (n != kLimitingSize && x < 1.0 / (n - 1)) {
      double term = 1.0, sum = 0.0;
      for (int j = 0; j < n; ++j) {
        sum += term;
        term *= t;
      }
      return {sum, false};
    }
    if (form == DensityForm::AllowHeuristic) {
      const double pi = boost::math::constants::pi<double>();
      const double amp = 2.0 / (3.0 * pi);
      if (n == kLimitingSize) return {amp * std::pow(1.0 - x, -3.0), true};
      if (x < 1.0 - 1.0 / std::sqrt(pi * n)) return {amp * std::pow(1.0 - x, -3.0), true};
      return {amp * std::pow(pi * n, 1.5), true};
    }
  }
  throw UnsupportedError("density_closed_form: no closed form for " + strategy.name() +
                         " at n = " + std::to_string(n) + ", x = " + std::to_string(x));
}

/// Average of rho_n over [lo, hi], integrated with tanh-sinh and split at
/// the AIS breakpoints 1/k inside the bin.
inline DensityValue density_bin_average(const StrategySpec& strategy, ScoreLaw law, int n,
                                        double lo, double hi,
                                        DensityForm form = DensityForm::Exact) {
  if (!(lo < hi) || lo < 0.0 || hi > 1.0) throw DomainError("density_bin_average: bad bin");
  std::vector<double> cuts{lo};
  if (strategy.kind == StrategyKind::AIS) {
    const int kmax = n == kLimitingSize ? 64 : n - 1;
    for (int k = kmax; k >= 2; --k) {
      const double b = 1.0 / k;
      if (b > lo && b < hi) cuts.push_back(b);
    }
    const double pi = boost::math::constants::pi<double>();
    if (form == DensityForm::AllowHeuristic && n != kLimitingSize) {
      const double knee = 1.0 - 1.0 / std::sqrt(pi * n);
      if (knee > lo && knee < hi) cuts.push_back(knee);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(hi);
  boost::math::quadrature::tanh_sinh<double> integrator;
  bool heuristic = false;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrator.integrate(
        [&](double x) {
          const DensityValue v = density_closed_form(strategy, law, n, x, form);
          heuristic = heuristic || v.heuristic;
          return v.value;
        },
        cuts[i], cuts[i + 1], 1e-10);
  }
  return {total / (hi - lo), heuristic};
}

// ---------------------------------------------------------------------------
// Superior-company reference values

/// P_n for AIS with uniform scores, n <= 5.
inline Rational ais_uniform_superior_table(int n) {
  switch (n) {
    case 1: return make_rational(1, 2);
    case 2: return make_rational(3, 16);
    case 3: return Rational(BigInt(9 * 7), pow2(10));
    case 4: {
      Rational r(BigInt(9 * 43 * 173), pow2(19) * 7);
      r.canonicalize();
      return r;
    }
    case 5: {
      Rational r(BigInt(83) * BigInt(2051182663UL), pow2(34) * (3 * 5 * 7 * 19));
      r.canonicalize();
      return r;
    }
    default: throw UnsupportedError("AIS superior fractions are tabulated for n <= 5 only");
  }
}

/// One closed-form value for exponential scores.
struct ReferenceValue {
  std::string key;          // e.g. "ais/exp/P3"
  std::string strategies;   // which strategies it applies to
  int n = 0;
  double value = 0.0;
  std::string digits;       // 30 significant digits
  std::string closed_form;
};

namespace detail {

inline HighFloat e_pow(const HighFloat& k) {
  return boost::multiprecision::exp(k);
}

inline std::string digits30(const HighFloat& v) { return v.str(30); }

}  // namespace detail

/// Published MIS/exponential numerators D_1..D_7, coefficients of e^0, e^1, ...
/// exactly as printed (D_7 includes the misprint listed in exp_dn_errata()).
inline const std::vector<std::vector<long>>& published_exp_dn() {
  static const std::vector<std::vector<long>> table = {
      {1},
      {-1, 2},
      {1, 0, -6, 6},
      {-1, 0, 0, 8, 6, -36, 24},
      {1, 0, 0, 0, -10, 0, -20, 60, 90, -240, 120},
      {-1, 0, 0, 0, 0, 12, 0, 0, 30, -70, 0, -360, 390, 1080, -1800, 720},
      {1, 0, 0, 0, 0, 0, -14, 0, 0, 0, -42, 126, -70, 0, 630, -420, 630, -5040, 1680, 1260, -15120,
       5040},
  };
  return table;
}

struct PublishedErratum {
  int n = 0;
  int power = 0;
  long printed = 0;
  long corrected = 0;
};

/// Known misprints in published_exp_dn(). The printed D_7 coefficient of e^19
/// breaks the leading-term pattern n!(n-2)(n-3)/8 = 12600 and disagrees with
/// direct integration.
inline const std::vector<PublishedErratum>& exp_dn_errata() {
  static const std::vector<PublishedErratum> errata = {{7, 19, 1260, 12600}};
  return errata;
}

/// published_exp_dn() with the errata applied.
inline std::vector<long> corrected_exp_dn(int n) {
  const auto& table = published_exp_dn();
  if (n < 1 || n > static_cast<int>(table.size()))
    throw UnsupportedError("published D_n only for 1 <= n <= 7");
  auto coeffs = table[static_cast<std::size_t>(n - 1)];
  for (const auto& e : exp_dn_errata())
    if (e.n == n) coeffs[static_cast<std::size_t>(e.power)] = e.corrected;
  return coeffs;
}

namespace detail {

inline HighFloat eval_e_poly(const std::vector<long>& coeffs) {
  const HighFloat e = boost::math::constants::e<HighFloat>();
  HighFloat acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * e + HighFloat(*it);
  return acc;
}

}  // namespace detail

/// Closed forms for exponential scores, evaluated at 50-digit precision.
inline std::vector<ReferenceValue> reference_values() {
  using detail::digits30;
  using detail::e_pow;
  const HighFloat e = boost::math::constants::e<HighFloat>();
  std::vector<ReferenceValue> out;
  auto add = [&](std::string key, std::string who, int n, const HighFloat& v, std::string form) {
    out.push_back({std::move(key), std::move(who), n, static_cast<double>(v), digits30(v),
                   std::move(form)});
  };
  add("all/exp/P1", "mis ais lis:c", 1, 1 / e, "1/e");
  add("all/exp/P2", "mis ais lis:c", 2, (2 * e - 1) / e_pow(4), "(2e-1)/e^4");
  add("ais/exp/P3", "ais", 3, (18 * e * e - 9 * e - 14) / (4 * e_pow(HighFloat(15) / 2)),
      "(18e^2-9e-14)/(4e^(15/2))");
  add("ais/exp/P4", "ais", 4,
      (288 * e * e * e - 144 * e * e - 224 * e - 397) / (27 * e_pow(HighFloat(34) / 3)),
      "(288e^3-144e^2-224e-397)/(27e^(34/3))");
  add("ais/exp/P5", "ais", 5,
      (540000 * e_pow(4) - 270000 * e_pow(3) - 420000 * e * e - 744375 * e - 1448239) /
          (20736 * e_pow(HighFloat(185) / 12)),
      "(540000e^4-270000e^3-420000e^2-744375e-1448239)/(20736e^(185/12))");
  add("lis1/exp/P3", "lis:1", 3, (4 * e - boost::multiprecision::sqrt(e) - 2) / e_pow(HighFloat(13) / 2),
      "(4e-e^(1/2)-2)/e^(13/2)");
    add("mis/exp/P3", "mis lis:c>=2", 3, detail::eval_e_poly(corrected_exp_dn(3)) / e_pow(9), "(6e^3-6e^2+1)/e^9");
  add("mis/exp/P4", "mis lis:c>=3", 4, detail::eval_e_poly(corrected_exp_dn(4)) / e_pow(16),
      "(24e^6-36e^5+6e^4+8e^3-1)/e^16");
  add("mis/exp/P5", "mis lis:c>=4", 5, detail::eval_e_poly(corrected_exp_dn(5)) / e_pow(25),
      "(120e^10-240e^9+90e^8+60e^7-20e^6-10e^4+1)/e^25");
  add("mis/exp/P6", "mis lis:c>=5", 6, detail::eval_e_poly(corrected_exp_dn(6)) / e_pow(36),
      "(720e^15-1800e^14+1080e^13+390e^12-360e^11-70e^9+30e^8+12e^5-1)/e^36");
  return out;
}

/// Exact P_n when a closed form or table entry exists (used to pre-check
/// Monte Carlo feasibility and as test targets).
inline std::optional<double> reference_superior_fraction(const StrategySpec& strategy, ScoreLaw law,
                                                         int n) {
  if (n < 1) return std::nullopt;
  const bool mis_like = strategy.kind == StrategyKind::MIS ||
                        (strategy.kind == StrategyKind::LIS && n <= strategy.committee + 1) ||
                        (strategy.kind == StrategyKind::AIS && n <= 2);
  if (law == ScoreLaw::Uniform) {
    if (mis_like) return to_double(dn_recurrence(n).probability);
    if (strategy.kind == StrategyKind::AIS && n <= 5) return to_double(ais_uniform_superior_table(n));
    return std::nullopt;
  }
  if (law != ScoreLaw::Exponential) return std::nullopt;
  auto find = [](const std::string& key) -> std::optional<double> {
    for (const auto& r : reference_values())
      if (r.key == key) return r.value;
    return std::nullopt;
  };
  if (n <= 2 && strategy.kind != StrategyKind::mLIS1) return find("all/exp/P" + std::to_string(n));
  if (mis_like && n <= 6) return find("mis/exp/P" + std::to_string(n));
  if (strategy.kind == StrategyKind::AIS && n <= 5) return find("ais/exp/P" + std::to_string(n));
  if (strategy.kind == StrategyKind::LIS && strategy.committee == 1 && n == 3)
    return find("lis1/exp/P3");
  return std::nullopt;
}

}  // namespace hirelab
