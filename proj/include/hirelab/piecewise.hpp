#pragma once

// Univariate polynomials and piecewise polynomials on [0, 1] with exact
// rational coefficients.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "hirelab/error.hpp"
#include "hirelab/rational.hpp"

namespace hirelab {

/// c[0] + c[1] x + ... ; trailing zeros are trimmed.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(const Rational& v) { return Polynomial({v}); }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const {
    std::vector<Rational> out(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      out[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
      out[i + 1].canonicalize();
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b * Rational(-1);
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Rational& s) {
    std::vector<Rational> out(a.c_);
    for (auto& v : out) v *= s;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
  void trim() {
    for (auto& v : c_) v.canonicalize();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Piecewise polynomial on [0, 1]. Piece k lives on [b_k, b_{k+1}); the
/// last piece also owns x = 1. Adjacent pieces may disagree at a breakpoint.
class PiecewisePolynomial {
public:
  /// The constant function `v` on [0, 1].
  explicit PiecewisePolynomial(const Rational& v = Rational(0))
      : breaks_{Rational(0), Rational(1)}, pieces_{Polynomial::constant(v)} {}

  PiecewisePolynomial(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    validate();
  }

  const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }

  int max_degree() const noexcept {
    int d = -1;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
  }

  std::size_t piece_index(const Rational& x) const {
    if (x < 0 || x > 1) throw DomainError("PiecewisePolynomial: point outside [0, 1]");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    auto k = static_cast<std::size_t>(it - breaks_.begin());
    return std::min(k == 0 ? 0 : k - 1, pieces_.size() - 1);
  }

  Rational operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

  /// Same function with `x` added to the breakpoints.
  PiecewisePolynomial with_breakpoint(const Rational& x) const {
    if (x < 0 || x > 1) throw DomainError("with_breakpoint: point outside [0, 1]");
    if (std::binary_search(breaks_.begin(), breaks_.end(), x)) return *this;
    const std::size_t k = piece_index(x);
    auto b = breaks_;
    auto p = pieces_;
    b.insert(b.begin() + static_cast<std::ptrdiff_t>(k) + 1, x);
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(k) + 1, pieces_[k]);
    return {std::move(b), std::move(p)};
  }

  /// Integral over [lo, hi] (0 <= lo <= hi <= 1).
  Rational integrate(const Rational& lo, const Rational& hi) const {
    if (lo > hi) throw DomainError("integrate: lo > hi");
    Rational total(0);
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Rational a = std::max(lo, breaks_[k]);
      const Rational b = std::min(hi, breaks_[k + 1]);
      if (a >= b) continue;
      const Polynomial anti = pieces_[k].antiderivative();
      total += anti(b) - anti(a);
    }
    total.canonicalize();
    return total;
  }

  /// G(t) = int_{max(floor, t)}^1 F(x) dx as a function of t on [0, 1]:
  /// the constant int_floor^1 F below `floor`, a tail integral above it.
  PiecewisePolynomial tail_integral(const Rational& floor) const {
    const PiecewisePolynomial f = with_breakpoint(floor);
    const std::size_t m = f.pieces_.size();
    // tail[k] = int_{b_k}^1 F.
    std::vector<Rational> tail(m + 1, Rational(0));
    std::vector<Polynomial> anti(m);
    for (std::size_t k = m; k-- > 0;) {
      anti[k] = f.pieces_[k].antiderivative();
      tail[k] = tail[k + 1] + anti[k](f.breaks_[k + 1]) - anti[k](f.breaks_[k]);
      tail[k].canonicalize();
    }
    std::vector<Rational> b{Rational(0)};
    std::vector<Polynomial> p;
    std::size_t first = 0;
    while (f.breaks_[first] < floor) ++first;
    if (first > 0) {
      b.push_back(floor);
      p.push_back(Polynomial::constant(tail[first]));
    }
    for (std::size_t k = first; k < m; ++k) {
      if (k > first) b.push_back(f.breaks_[k]);
      // int_t^{b_{k+1}} F_k + tail[k+1]
      p.push_back(Polynomial::constant(anti[k](f.breaks_[k + 1]) + tail[k + 1]) - anti[k]);
    }
    b.push_back(Rational(1));
    return {std::move(b), std::move(p)};
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
  }

  friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x * y; });
  }

  /// Equal as functions (up to redundant breakpoints).
  friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    const auto diff = combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x - y; });
    return std::all_of(diff.pieces_.begin(), diff.pieces_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
  }

private:
  void validate() const {
    if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1)
      throw DomainError("PiecewisePolynomial: breakpoints must span [0, 1]");
    if (pieces_.size() + 1 != breaks_.size())
      throw DomainError("PiecewisePolynomial: need one piece per interval");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i - 1] < breaks_[i]))
        throw DomainError("PiecewisePolynomial: breakpoints must increase strictly");
  }

  template <class Op>
  static PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b,
                                     Op op) {
    std::vector<Rational> merged;
    std::set_union(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
                   std::back_inserter(merged));
    std::vector<Polynomial> pieces;
    pieces.reserve(merged.size() - 1);
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
      const Rational& lo = merged[k];
      pieces.push_back(op(a.pieces_[a.piece_index(lo)], b.pieces_[b.piece_index(lo)]));
    }
    return {std::move(merged), std::move(pieces)};
  }

  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_;
};

}  // namespace hirelab
