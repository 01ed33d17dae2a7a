#pragma once

// Exact evaluation of the iterated integrals behind the superior-company
// fractions for MIS (uniform and exponential scores) and the all-hired
// probability for AIS with uniform scores.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hirelab/epoly.hpp"
#include "hirelab/error.hpp"
#include "hirelab/exact.hpp"
#include "hirelab/piecewise.hpp"
#include "hirelab/rational.hpp"

namespace hirelab {

// ---------------------------------------------------------------------------
// MIS, uniform scores

inline constexpr int kDefaultSymbolicMaxN = 8;

struct MisUniformExact {
  Rational probability;                 // P_n
  BigInt count;                         // P_n 2^{n^2}
  std::vector<std::size_t> piece_trace;  // piece count after each step
};

/// P_n = n! int ... int over max(1 - 2^{-j}, x_{j-1}) < x_j < 1, integrated
/// innermost variable first. Each step is G(t) = int_{max(theta_j, t)}^1 F.
inline MisUniformExact mis_uniform_superior_exact_traced(int n, int n_max = kDefaultSymbolicMaxN) {
  if (n < 1) throw DomainError("mis_uniform_superior_exact: n must be >= 1");
  if (n > n_max)
    throw ResourceError("mis_uniform_superior_exact: n = " + std::to_string(n) +
                        " exceeds n_max = " + std::to_string(n_max));
  MisUniformExact out;
  PiecewisePolynomial f(Rational(1));
  for (int j = n; j >= 1; --j) {
    const Rational theta = Rational(1) - mis_xi(j);
    f = f.tail_integral(theta);
    out.piece_trace.push_back(f.piece_count());
  }
  const auto un = static_cast<unsigned long>(n);
  out.probability = f(Rational(0)) * Rational(factorial(un));
  out.probability.canonicalize();
  Rational scaled = out.probability * Rational(pow2(un * un));
  scaled.canonicalize();
  if (!is_integer(scaled))
    throw ConsistencyError("P_n 2^{n^2} is not an integer at n = " + std::to_string(n));
  out.count = scaled.get_num();
  return out;
}

inline Rational mis_uniform_superior_exact(int n, int n_max = kDefaultSymbolicMaxN) {
  return mis_uniform_superior_exact_traced(n, n_max).probability;
}

// ---------------------------------------------------------------------------
// AIS, uniform scores: all-hired probability

/// A_k^{(N)} = ((N-k+1)/k) [1 - ((N-k)/(N-k+1))^k], 2 <= k <= N-1.
inline Rational ais_uniform_amplitude(int N, int k) {
  if (k < 2 || k > N - 1) throw DomainError("ais_uniform_amplitude: need 2 <= k <= N-1");
  const Rational ratio(N - k, N - k + 1);
  Rational a = make_rational(N - k + 1, static_cast<unsigned long>(k)) *
               (Rational(1) - pow(ratio, static_cast<unsigned long>(k)));
  a.canonicalize();
  return a;
}

/// F_N = N^{-1} prod_{k=2}^{N-1} A_k^{(N)}.
inline Rational ais_uniform_F_exact(int N) {
  if (N < 1) throw DomainError("ais_uniform_F_exact: N must be >= 1");
  if (N == 1) return Rational(1);
  Rational f(1, N);
  for (int k = 2; k <= N - 1; ++k) f *= ais_uniform_amplitude(N, k);
  f.canonicalize();
  return f;
}

// ---------------------------------------------------------------------------
// MIS, exponential scores

/// Piecewise sum of c * y^m * e^{-k y} on [0, inf) with integer breakpoints
/// 0 = b_0 < b_1 < ...; the last piece extends to infinity.
class ExpPolyFunction {
public:
  using Key = std::pair<int, int>;  // (m, k)
  using Piece = std::map<Key, EPoly>;

  ExpPolyFunction() : breaks_{0}, pieces_(1) {}

  static ExpPolyFunction constant(const EPoly& c) {
    ExpPolyFunction f;
    f.pieces_[0][{0, 0}] = c;
    return f;
  }

  const std::vector<int>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  std::size_t piece_index(int y) const {
    if (y < 0) throw DomainError("ExpPolyFunction: negative argument");
    std::size_t k = 0;
    while (k + 1 < breaks_.size() && breaks_[k + 1] <= y) ++k;
    return k;
  }

  /// Value at an integer point, as an element of the coefficient ring.
  EPoly operator()(int y) const { return evaluate_piece(pieces_[piece_index(y)], y); }

  /// Value at a real point.
  double operator()(double y) const {
    if (y < 0) throw DomainError("ExpPolyFunction: negative argument");
    std::size_t k = 0;
    while (k + 1 < breaks_.size() && breaks_[k + 1] <= y) ++k;
    double acc = 0.0;
    for (const auto& [key, c] : pieces_[k])
      acc += c.evaluate() * std::pow(y, key.first) * std::exp(-key.second * y);
    return acc;
  }

  /// H(t) = int_{(t-1)_+}^inf e^{-y} G(y) dy.
  ExpPolyFunction step() const {
    // tail[i] = K(b_i) = int_{b_i}^inf e^{-y} G(y) dy; anti[i] is an
    // antiderivative of e^{-y} G on piece i.
    const std::size_t m = pieces_.size();
    std::vector<Piece> anti(m);
    std::vector<EPoly> tail(m + 1);
    for (std::size_t i = m; i-- > 0;) {
      for (const auto& [key, c] : pieces_[i]) add_antiderivative(anti[i], key.first, key.second + 1, c);
      EPoly upper = i + 1 < m ? evaluate_piece(anti[i], breaks_[i + 1]) : EPoly();
      tail[i] = upper - evaluate_piece(anti[i], breaks_[i]) + (i + 1 < m ? tail[i + 1] : EPoly());
    }
    ExpPolyFunction h;
    h.breaks_ = {0};
    h.pieces_.clear();
    h.pieces_.push_back(Piece{{{0, 0}, tail[0]}});
    for (std::size_t i = 0; i < m; ++i) {
      // K(s) = [anti_i(b_{i+1}) + K(b_{i+1})] - anti_i(s), then s = t - 1.
      Piece k_piece;
      EPoly constant = i + 1 < m ? evaluate_piece(anti[i], breaks_[i + 1]) + tail[i + 1] : EPoly();
      if (!constant.is_zero()) k_piece[{0, 0}] = constant;
      for (const auto& [key, c] : anti[i]) accumulate(k_piece, key, c * Rational(-1));
      h.breaks_.push_back(breaks_[i] + 1);
      h.pieces_.push_back(shift_by_one(k_piece));
    }
    return h;
  }

private:
  static void accumulate(Piece& piece, const Key& key, const EPoly& c) {
    auto& slot = piece[key];
    slot += c;
    if (slot.is_zero()) piece.erase(key);
  }

  static EPoly evaluate_piece(const Piece& piece, int y) {
    EPoly out;
    for (const auto& [key, c] : piece) {
      const auto [m, k] = key;
      if (m > 0 && y == 0) continue;
      out += (c * Rational(pow(BigInt(y), static_cast<unsigned long>(m)))).shifted(-k * y);
    }
    return out;
  }

  /// int y^m e^{-k y} dy = -e^{-k y} sum_{i=0}^m m! / ((m-i)! k^{i+1}) y^{m-i}, k >= 1.
  static void add_antiderivative(Piece& out, int m, int k, const EPoly& c) {
    const auto um = static_cast<unsigned long>(m);
    for (unsigned long i = 0; i <= um; ++i) {
      Rational coeff(factorial(um) / factorial(um - i), pow(BigInt(k), i + 1));
      coeff.canonicalize();
      accumulate(out, {m - static_cast<int>(i), k}, c * (-coeff));
    }
  }

  /// Substitute y = t - 1: c y^m e^{-k y} -> c e^k sum_r C(m, r) (-1)^{m-r} t^r e^{-k t}.
  static Piece shift_by_one(const Piece& piece) {
    Piece out;
    for (const auto& [key, c] : piece) {
      const auto [m, k] = key;
      const auto um = static_cast<unsigned long>(m);
      for (unsigned long r = 0; r <= um; ++r) {
        Rational b(binomial(um, r));
        if ((um - r) % 2 == 1) b = -b;
        accumulate(out, {static_cast<int>(r), k}, (c * b).shifted(k));
      }
    }
    return out;
  }

  std::vector<int> breaks_;
  std::vector<Piece> pieces_;
};

struct MisExpExact {
  int n = 0;
  EPoly probability;  // P_n = D_n e^{-n^2}
  EPoly numerator;    // D_n
  std::size_t pieces = 0;
};

inline constexpr int kExpSymbolicMaxN = 8;

/// P_n = n! e^{-n(n+1)/2} prod_j int_{(y_{j-1}-1)_+}^inf e^{-y_j} dy_j and
/// D_n = P_n e^{n^2}, which must have integer coefficients.
inline MisExpExact mis_exp_superior_exact(int n, int n_max = kExpSymbolicMaxN) {
  if (n < 1) throw DomainError("mis_exp_superior_exact: n must be >= 1");
  if (n > n_max)
    throw ResourceError("mis_exp_superior_exact: n = " + std::to_string(n) +
                        " exceeds n_max = " + std::to_string(n_max));
  ExpPolyFunction g = ExpPolyFunction::constant(EPoly(Rational(1)));
  for (int j = 0; j < n; ++j) g = g.step();
  const EPoly value = g(0) * Rational(factorial(static_cast<unsigned long>(n)));
  MisExpExact out;
  out.n = n;
  out.probability = value.shifted(-n * (n + 1) / 2);
  out.numerator = out.probability.shifted(n * n);
  out.pieces = g.pieces().size();
  if (!out.numerator.has_integer_coefficients() || out.numerator.min_power() < 0)
    throw ConsistencyError("D_n is not an integer polynomial in e at n = " + std::to_string(n) +
                           ": " + out.numerator.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Structure of D_n

struct PatternCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StructureReport {
  int n = 0;
  std::vector<PatternCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Leading terms n! e^d [1 - (n-1)/(2e) + (n-2)(n-3)/(8e^2)], d = n(n-1)/2;
/// lowest terms (-1)^{n-1} + 2n(-1)^n e^{n-1} (n >= 3) with nothing in
/// between; P_n <= n! e^{-n(n+1)/2}.
inline StructureReport dn_exp_structure_checks(const MisExpExact& r) {
  const int n = r.n;
  const EPoly& d = r.numerator;
  StructureReport rep;
  rep.n = n;
  const int deg = n * (n - 1) / 2;
  const BigInt nf = factorial(static_cast<unsigned long>(n));
  auto check_coeff = [&](std::string name, int power, Rational want) {
    want.canonicalize();
    const Rational got = d.coefficient(power);
    rep.checks.push_back({std::move(name), got == want,
                          "e^" + std::to_string(power) + ": " + to_string(got) + " vs " +
                              to_string(want)});
  };
  check_coeff("degree", deg, Rational(nf));
  rep.checks.push_back({"no higher terms", d.max_power() == deg,
                        "max power " + std::to_string(d.max_power())});
  if (n >= 2) check_coeff("second leading", deg - 1, Rational(-nf * (n - 1), 2));
  if (n >= 4) check_coeff("third leading", deg - 2, Rational(nf * (n - 2) * (n - 3), 8));
  check_coeff("constant term", 0, Rational(n % 2 == 1 ? 1 : -1));
  if (n >= 3) {
    check_coeff("lowest nonconstant", n - 1, Rational(n % 2 == 0 ? 2 * n : -2 * n));
    bool gap = true;
    for (int p = 1; p < n - 1; ++p) gap = gap && d.coefficient(p) == 0;
    rep.checks.push_back({"low gap", gap, "e^1..e^" + std::to_string(n - 2) + " vanish"});
  }
  const double p = r.probability.evaluate();
  const double bound =
      std::exp(std::lgamma(n + 1.0) - 0.5 * n * (n + 1.0));
  rep.checks.push_back({"upper bound", p > 0.0 && p <= bound,
                        std::to_string(p) + " <= " + std::to_string(bound)});
  return rep;
}

/// Term-by-term comparison with published_exp_dn(); errata are applied
/// first and reported.
struct PublishedComparison {
  int n = 0;
  bool match = false;
  std::vector<std::string> errata_applied;
  std::vector<std::string> mismatches;
};

inline PublishedComparison compare_with_published(const MisExpExact& r) {
  PublishedComparison out;
  out.n = r.n;
  const auto want = corrected_exp_dn(r.n);
  for (const auto& e : exp_dn_errata())
    if (e.n == r.n)
      out.errata_applied.push_back("e^" + std::to_string(e.power) + ": printed " +
                                   std::to_string(e.printed) + ", derived " +
                                   std::to_string(e.corrected));
  const EPoly expected = EPoly::from_coefficients(want);
  for (int p = std::min(r.numerator.min_power(), 0);
       p <= std::max(r.numerator.max_power(), static_cast<int>(want.size()) - 1); ++p) {
    if (r.numerator.coefficient(p) != expected.coefficient(p))
      out.mismatches.push_back("e^" + std::to_string(p) + ": " +
                               to_string(r.numerator.coefficient(p)) + " vs " +
                               to_string(expected.coefficient(p)));
  }
  out.match = out.mismatches.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Asymptotic constants for exponential scores

struct ExpAsymptoticFit {
  double p = 0.0;
  double M = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  bool heuristic = true;
};

/// Fit P_n ~ n! e^{-n(n+1)/2} / (M p^n) by least squares of
/// log(P_n e^{n(n+1)/2} / n!) = -log M - n log p over n in [n_lo, n_hi].
/// Only p > 1 and M > 0 are known, so the result is descriptive.
inline ExpAsymptoticFit fit_exp_asymptotic(int n_lo = 3, int n_hi = kExpSymbolicMaxN) {
  if (n_lo < 1 || n_hi - n_lo < 1) throw DomainError("fit_exp_asymptotic: need at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int count = n_hi - n_lo + 1;
  for (int n = n_lo; n <= n_hi; ++n) {
    const MisExpExact r = mis_exp_superior_exact(n, std::max(n_hi, kExpSymbolicMaxN));
    const double y = std::log(r.numerator.evaluate()) - 0.5 * n * (n - 1.0) - std::lgamma(n + 1.0);
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  return {std::exp(-slope), std::exp(-intercept), n_lo, n_hi, true};
}

}  // namespace hirelab
