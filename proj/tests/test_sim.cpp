#include <catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>

#include "hirelab/exact.hpp"
#include "hirelab/symbolic.hpp"
#include "hirelab/sim.hpp"

using namespace hirelab;

namespace {

SimConfig config(StrategySpec s, ScoreLaw law, std::uint64_t trials, std::uint64_t seed = 17) {
  SimConfig c;
  c.strategy = s;
  c.dist = ScoreDistribution(law);
  c.trials = trials;
  c.master_seed = seed;
  return c;
}

constexpr double kZ = 4.0;

}  // namespace

TEST_CASE("config validation") {
  SimConfig c = config(StrategySpec::mis(), ScoreLaw::Uniform, 10);
  c.mode = InterviewBudget{4};
  c.kernel = Kernel::RejectionFree;
  REQUIRE_THROWS_AS(c.validate(), ConfigError);
  c.kernel = Kernel::Naive;
  REQUIRE_NOTHROW(c.validate());
  REQUIRE(parse_kernel("naive") == Kernel::Naive);
  REQUIRE(kernel_name(parse_kernel(kernel_name(Kernel::RejectionFree))) == "rejection-free");
  REQUIRE_THROWS_AS(parse_kernel("fast"), ConfigError);
}

TEST_CASE("growth results do not depend on the worker count") {
  SimConfig c = config(StrategySpec::lis(2), ScoreLaw::Tent, 30000);
  c.mode = GrowToSize{12};
  c.workers = 1;
  const GrowthStats a = run_growth(c);
  c.workers = 3;
  const GrowthStats b = run_growth(c);
  for (int k = 1; k <= 12; ++k) {
    REQUIRE(a.mean_score(k).mean == b.mean_score(k).mean);
    REQUIRE(a.best_score(k).std_error == b.best_score(k).std_error);
    REQUIRE(a.mean_age(k).mean == b.mean_age(k).mean);
  }
}

TEST_CASE("all-hired estimates match exact values") {
  struct Case {
    StrategySpec s;
    ScoreLaw law;
    int N;
  };
  for (const Case& c : {Case{StrategySpec::mis(), ScoreLaw::Uniform, 3}, Case{StrategySpec::lis(1), ScoreLaw::Tent, 4},
                        Case{StrategySpec::mlis1(), ScoreLaw::Exponential, 3},
                        Case{StrategySpec::ais(), ScoreLaw::Tent, 3}, Case{StrategySpec::ais(), ScoreLaw::Uniform, 5}}) {
    SimConfig cfg = config(c.s, c.law, 400000);
    cfg.kernel = Kernel::Naive;
    const Estimate e = estimate_all_hired(cfg, c.N);
    CHECK(e.within_sigmas(to_double(F_exact(c.s, c.law, c.N)), kZ));
  }
}

TEST_CASE("both kernels reproduce the exact LIS(1) exponential <x_3>") {
  const double want = 3.0 - boost::math::constants::pi_sqr<double>() / 12.0;
  for (Kernel k : {Kernel::Naive, Kernel::RejectionFree}) {
    SimConfig cfg = config(StrategySpec::lis(1), ScoreLaw::Exponential, 400000);
    cfg.mode = GrowToSize{3};
    cfg.kernel = k;
    CHECK(run_growth(cfg).last_score(3).within_sigmas(want, kZ));
  }
}

TEST_CASE("the rejection-free mLIS1 kernel keeps the phantom") {
  SimConfig a = config(StrategySpec::mlis1(), ScoreLaw::Uniform, 100000, 3);
  a.mode = GrowToSize{5};
  SimConfig b = a;
  b.kernel = Kernel::Naive;
  b.master_seed = 4;
  const GrowthStats ga = run_growth(a), gb = run_growth(b);
  for (int k = 2; k <= 5; ++k) {
    const Estimate x = ga.mean_score(k), y = gb.mean_score(k);
    CHECK(std::abs(x.mean - y.mean) < kZ * std::hypot(x.std_error, y.std_error));
  }
}

TEST_CASE("MIS uniform gaps and ages") {
  SimConfig cfg = config(StrategySpec::mis(), ScoreLaw::Uniform, 200000);
  cfg.mode = GrowToSize{8};
  const GrowthStats g = run_growth(cfg);
  for (int k = 1; k <= 8; ++k) {
    CHECK(g.last_gap(k).within_sigmas(std::ldexp(1.0, -k), kZ));
    CHECK(g.mean_gap(k).within_sigmas(to_double(mis_mu(k)), kZ));
    REQUIRE(g.mean_age(k).mean == 0.0);  // the newest hire is always the best
  }
}

TEST_CASE("superior fractions are conditioned on no rejection") {
  SimConfig cfg = config(StrategySpec::mis(), ScoreLaw::Uniform, 2000000);
  const SuperiorEstimate u = estimate_superior(cfg, 2);
  REQUIRE(u.feasible);
  CHECK(u.fraction.within_sigmas(3.0 / 16.0, kZ));
  CHECK(u.all_hired > 0);
  cfg.dist = ScoreDistribution(ScoreLaw::Exponential);
  const SuperiorEstimate e = estimate_superior(cfg, 3);
  CHECK(e.fraction.within_sigmas(mis_exp_superior_exact(3).probability.evaluate(), kZ));
}

TEST_CASE("infeasible superior estimates carry a warning") {
  const SuperiorEstimate e = estimate_superior(config(StrategySpec::mis(), ScoreLaw::Uniform, 1000), 4);
  REQUIRE_FALSE(e.feasible);
  REQUIRE_FALSE(e.warning.empty());
}

TEST_CASE("density histograms are normalized to n") {
  const DensityHistogram h = density_histogram(config(StrategySpec::ais(), ScoreLaw::Uniform, 50000), 4, 16);
  double integral = 0;
  for (double d : h.density) integral += d * h.width();
  REQUIRE_THAT(integral, Catch::Matchers::WithinRel(4.0, 1e-12));
  REQUIRE(h.overflow_mass.mean == 0.0);
  const DensityHistogram e = density_histogram(config(StrategySpec::mis(), ScoreLaw::Exponential, 50000), 3, 10, 4.0);
  REQUIRE(e.hi == 4.0);
  CHECK(e.in_range_mass.mean + e.overflow_mass.mean == Catch::Approx(3.0));
  REQUIRE_THROWS_AS(density_histogram(config(StrategySpec::mis(), ScoreLaw::Uniform, 10), 3, 0), ConfigError);
}

TEST_CASE("growth samples keep trial order") {
  SimConfig cfg = config(StrategySpec::ais(), ScoreLaw::Uniform, 20000);
  cfg.mode = GrowToSize{4};
  cfg.workers = 2;
  const GrowthSamples s = collect_growth_samples(cfg);
  cfg.workers = 1;
  const GrowthSamples t = collect_growth_samples(cfg);
  REQUIRE(s.last.size() == 4);
  REQUIRE(s.last[3].size() == 20000);
  REQUIRE(s.best == t.best);
  for (std::size_t i = 0; i < 100; ++i) REQUIRE(s.best[3][i] >= s.last[3][i]);
}

TEST_CASE("calibration fills in thresholds without a closed form") {
  SimConfig cfg = config(StrategySpec::ais(), ScoreLaw::Uniform, 200000);
  cfg.thresholds = ThresholdMode::Calibrate;
  REQUIRE_FALSE(resolve_thresholds(cfg, 4).empirical);
  cfg.strategy = StrategySpec::lis(1);
  const ResolvedThresholds th = resolve_thresholds(cfg, 4);
  REQUIRE(th.empirical);
  CHECK(std::abs(th.values[0] - 0.5) < 5e-3);
  CHECK(std::abs(th.values[1] - 0.75) < 5e-3);
  CHECK(th.values[2] > th.values[1]);
  cfg.thresholds = ThresholdMode::Analytic;
  REQUIRE_THROWS_AS(resolve_thresholds(cfg, 4), ConfigError);
}
