#pragma once

// Laurent polynomials in the symbol e with rational coefficients.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hirelab/rational.hpp"

namespace hirelab {

/// sum_k c_k e^k, k any integer. Zero coefficients are never stored.
class EPoly {
public:
  EPoly() = default;
  explicit EPoly(const Rational& c, int power = 0) { add_term(power, c); }

  static EPoly from_coefficients(const std::vector<long>& low_to_high) {
    EPoly p;
    for (std::size_t k = 0; k < low_to_high.size(); ++k)
      p.add_term(static_cast<int>(k), Rational(low_to_high[k]));
    return p;
  }

  const std::map<int, Rational>& terms() const noexcept { return t_; }
  bool is_zero() const noexcept { return t_.empty(); }

  Rational coefficient(int power) const {
    auto it = t_.find(power);
    return it == t_.end() ? Rational(0) : it->second;
  }

  int max_power() const { return t_.empty() ? 0 : t_.rbegin()->first; }
  int min_power() const { return t_.empty() ? 0 : t_.begin()->first; }

  void add_term(int power, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(power, c);
    if (!fresh) {
      it->second += c;
      it->second.canonicalize();
      if (it->second == 0) t_.erase(it);
    }
  }

  /// Multiply by e^k.
  EPoly shifted(int k) const {
    EPoly out;
    for (const auto& [p, c] : t_) out.t_.emplace(p + k, c);
    return out;
  }

  bool has_integer_coefficients() const {
    for (const auto& [p, c] : t_)
      if (!is_integer(c)) return false;
    return true;
  }

  /// Dense integer coefficients of e^0..e^max_power (requires integer
  /// coefficients and no negative powers).
  std::vector<long> integer_coefficients() const {
    std::vector<long> out(static_cast<std::size_t>(max_power() + 1), 0);
    for (const auto& [p, c] : t_) out[static_cast<std::size_t>(p)] = c.get_num().get_si();
    return out;
  }

  template <class Real>
  Real evaluate() const {
    const Real e = boost::math::constants::e<Real>();
    Real acc = 0;
    for (const auto& [p, c] : t_) {
      const Real coeff = Real(c.get_num().get_str()) / Real(c.get_den().get_str());
      acc += coeff * pow(e, p);
    }
    return acc;
  }

  double evaluate() const {
    using boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(evaluate<cpp_bin_float_50>());
  }

  /// Highest power first, e.g. "6e^3 - 6e^2 + 1".
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [p, c] = *it;
      Rational mag = c;
      const bool neg = mag < 0;
      if (neg) mag = -mag;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      const std::string m = hirelab::to_string(mag);
      if (p == 0) {
        out += m;
        continue;
      }
      if (mag != 1) out += is_integer(mag) ? m : "(" + m + ")";
      out += p == 1 ? "e" : "e^" + std::to_string(p);
    }
    return out;
  }

  friend EPoly operator+(EPoly a, const EPoly& b) {
    for (const auto& [p, c] : b.t_) a.add_term(p, c);
    return a;
  }

  friend EPoly operator-(EPoly a, const EPoly& b) {
    for (const auto& [p, c] : b.t_) a.add_term(p, -c);
    return a;
  }

  friend EPoly operator*(const EPoly& a, const EPoly& b) {
    EPoly out;
    for (const auto& [pa, ca] : a.t_)
      for (const auto& [pb, cb] : b.t_) out.add_term(pa + pb, ca * cb);
    return out;
  }

  friend EPoly operator*(EPoly a, const Rational& s) {
    if (s == 0) return {};
    for (auto& [p, c] : a.t_) {
      c *= s;
      c.canonicalize();
    }
    return a;
  }

  EPoly& operator+=(const EPoly& b) { return *this = *this + b; }

  friend bool operator==(const EPoly&, const EPoly&) = default;

private:
  std::map<int, Rational> t_;
};

}  // namespace hirelab
