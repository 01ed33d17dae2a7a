#pragma once

// Floating-point closed forms for average gaps and expected scores. The
// Gamma-function ratios are evaluated through their product recurrences,
// which stay accurate (~1e-14 relative) for any n.

#include <cmath>

#include "hirelab/error.hpp"

namespace hirelab {

namespace detail {

inline void require_positive(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": index must be >= 1");
}

}  // namespace detail

/// mu_n for AIS with uniform scores: Gamma(n+1/2) / (Gamma(1/2) Gamma(n+1)).
inline double ais_mu(int n) {
  detail::require_positive(n, "ais_mu");
  double mu = 0.5;
  for (int k = 1; k < n; ++k) mu *= (k + 0.5) / (k + 1.0);
  return mu;
}

/// xi_n = 1 - <x_n> for AIS with uniform scores; xi_1 = 1/2, xi_n = mu_{n-1}/2.
inline double ais_xi(int n) {
  detail::require_positive(n, "ais_xi");
  return n == 1 ? 0.5 : 0.5 * ais_mu(n - 1);
}

/// mu_n for AIS with tent scores: Gamma(n+2/3) / (Gamma(2/3) Gamma(n+1)).
inline double tent_mu(int n) {
  detail::require_positive(n, "tent_mu");
  double mu = 2.0 / 3.0;
  for (int k = 1; k < n; ++k) mu *= (k + 2.0 / 3.0) / (k + 1.0);
  return mu;
}

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
inline double harmonic(int n) {
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  return h;
}

}  // namespace hirelab
