#include <catch_amalgamated.hpp>

#include <cmath>

#include "hirelab/random.hpp"
#include "hirelab/stats.hpp"

using namespace hirelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("proportion estimates carry binomial errors") {
  const Estimate e = proportion(250, 1000);
  REQUIRE(e.mean == 0.25);
  REQUIRE_THAT(e.std_error, WithinRel(std::sqrt(0.25 * 0.75 / 999), 1e-12));
  REQUIRE(e.z_score(0.25) == 0.0);
  REQUIRE(e.within_sigmas(0.25 + 2 * e.std_error, 2.01));
}

TEST_CASE("merged moments equal one pass over all data") {
  RandomStream rng(2, 2);
  Moments all, a, b;
  ShiftedSums s;
  for (int i = 0; i < 1000; ++i) {
    const double x = 10 + rng.uniform();
    all.add(x);
    s.add(x);
    (i < 300 ? a : b).add(x);
  }
  a.merge(b);
  REQUIRE(a.count == all.count);
  REQUIRE_THAT(a.mean, WithinRel(all.mean, 1e-13));
  REQUIRE_THAT(a.variance(), WithinRel(all.variance(), 1e-10));
  REQUIRE_THAT(s.moments().variance(), WithinRel(all.variance(), 1e-9));
}

TEST_CASE("Kolmogorov tail matches the classical critical values") {
  REQUIRE_THAT(kolmogorov_q(1.3581), WithinAbs(0.05, 2e-4));
  REQUIRE_THAT(kolmogorov_q(1.6276), WithinAbs(0.01, 1e-4));
  REQUIRE(kolmogorov_q(0.0) == 1.0);
}

TEST_CASE("KS tests accept equal laws and reject shifted ones") {
  RandomStream rng(4, 4);
  std::vector<double> a, b, c;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
    c.push_back(std::pow(rng.uniform(), 0.9));
  }
  CHECK(ks_two_sample(a, b).p_value > 0.001);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
  CHECK(ks_one_sample(a, [](double x) { return x; }).p_value > 0.001);
  CHECK(ks_one_sample(c, [](double x) { return x; }).p_value < 1e-6);
  REQUIRE_THROWS_AS(ks_two_sample({}, a), DomainError);
}

TEST_CASE("power-law fits recover exact exponents") {
  std::vector<std::pair<double, double>> down, up;
  for (int k = 1; k <= 1000; ++k) {
    down.emplace_back(k, 1.7 * std::pow(k, -1.5));
    up.emplace_back(k, 0.3 * k);
  }
  const PowerLawFit f = fit_power_law(down, 10, 1000, PowerLawSense::Decaying);
  REQUIRE_THAT(f.exponent, WithinAbs(1.5, 1e-12));
  REQUIRE_THAT(f.amplitude, WithinRel(1.7, 1e-10));
  REQUIRE(f.points == 991);
  REQUIRE_THAT(f.r_squared, WithinAbs(1.0, 1e-12));
  const PowerLawFit g = fit_power_law(up, 1, 1000, PowerLawSense::Growing);
  REQUIRE_THAT(g.exponent, WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(g.amplitude, WithinRel(0.3, 1e-10));
}
