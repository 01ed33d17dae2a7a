#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hirelab/error.hpp"
#include "hirelab/exact.hpp"
#include "hirelab/parallel.hpp"
#include "hirelab/random.hpp"
#include "hirelab/score_dist.hpp"
#include "hirelab/stats.hpp"
#include "hirelab/strategy.hpp"

namespace hirelab {

/// Seed used when none is given ("hire" in ASCII).
inline constexpr std::uint64_t kDefaultSeed = 0x68697265;

enum class Kernel { Naive, RejectionFree };

/// How superiority thresholds <x_j> are obtained.
enum class ThresholdMode {
  None,       // superiority not tracked
  Analytic,   // closed forms only; missing ones are a configuration error
  Calibrate,  // closed forms if all exist, else a pilot run estimates <x_j>
};

struct GrowToSize {
  int n = 1;
};
struct InterviewBudget {
  int N = 1;
};

struct SimConfig {
  StrategySpec strategy;
  ScoreDistribution dist;
  std::variant<GrowToSize, InterviewBudget> mode = GrowToSize{1};
  std::uint64_t trials = 100000;
  std::uint64_t master_seed = kDefaultSeed;
  Kernel kernel = Kernel::RejectionFree;
  ThresholdMode thresholds = ThresholdMode::None;
  unsigned workers = 0;  // 0: HIRELAB_THREADS or hardware concurrency

  int size() const {
    return std::visit([](const auto& m) {
      if constexpr (std::is_same_v<std::decay_t<decltype(m)>, GrowToSize>) return m.n;
      else return m.N;
    }, mode);
  }
  bool grows() const noexcept { return std::holds_alternative<GrowToSize>(mode); }

  void validate() const {
    if (trials < 2) throw ConfigError("trials must be >= 2");
    if (size() < 1) throw ConfigError("company size / interview budget must be >= 1");
    if (kernel == Kernel::RejectionFree && !grows())
      throw ConfigError("the rejection-free kernel marginalizes rejections; it needs grow-to-size mode");
  }
};

inline std::string kernel_name(Kernel k) {
  return k == Kernel::Naive ? "naive" : "rejection-free";
}

inline Kernel parse_kernel(std::string_view s) {
  if (s == "naive") return Kernel::Naive;
  if (s == "rejection-free" || s == "rf") return Kernel::RejectionFree;
  throw ConfigError("unknown kernel '" + std::string(s) + "' (expected naive | rejection-free)");
}

// ---------------------------------------------------------------------------
// Rejection-free sampling

/// Next hire drawn directly from its law conditioned on acceptance.
struct StepDraw {
  double score = 0.0;
  std::size_t decisive = Decision::kNoMember;  // 0-based hire index, see Decision
};

/// Incremental state for the rejection-free kernel. For LIS(1) and mLIS1 the
/// interviewer is picked with probability proportional to R(score), kept as
/// an append-only prefix sum. For LIS(c >= 2) the committee maximum has rank
/// k (ascending) with weight C(k-1, c-1) R(x_(k)), recomputed per draw.
class RejectionFreeSampler {
public:
  RejectionFreeSampler(StrategySpec strategy, ScoreDistribution dist)
      : strategy_(strategy), dist_(dist) {}

  void reset() {
    prefix_.clear();
    sorted_.clear();
    if (strategy_.kind == StrategyKind::mLIS1) prefix_.push_back(1.0);  // phantom, R(0) = 1
  }

  /// Rebuild the cache from scratch for an arbitrary state.
  void rebuild(const CompanyState& state) {
    reset();
    for (double x : state.scores()) observe(x);
  }

  /// Register the newest hire.
  void observe(double score) {
    if (uses_prefix()) {
      const double prev = prefix_.empty() ? 0.0 : prefix_.back();
      prefix_.push_back(prev + dist_.survival(score));
    } else if (strategy_.kind == StrategyKind::LIS) {
      const std::size_t index = sorted_.size();
      auto pos = std::upper_bound(sorted_.begin(), sorted_.end(), score,
                                  [](double v, const auto& e) { return v < e.first; });
      sorted_.insert(pos, {score, index});
    }
  }

  StepDraw draw(const CompanyState& state, RandomStream& rng) const {
    const std::size_t n = state.size();
    if (n == 0) return {dist_.sample(rng), Decision::kNoMember};
    switch (strategy_.kind) {
      case StrategyKind::MIS:
        return {dist_.sample_tail_unchecked(state.max_score(), rng), state.best_index() - 1};
      case StrategyKind::AIS:
        return {dist_.sample_tail_unchecked(state.mean_score(), rng), Decision::kNoMember};
      case StrategyKind::LIS: {
        const auto c = static_cast<std::size_t>(strategy_.committee);
        if (n <= c)
          return {dist_.sample_tail_unchecked(state.max_score(), rng), state.best_index() - 1};
        std::size_t who = 0;
        if (c == 1) {
          who = pick_prefix(rng);
        } else {
          who = pick_rank(c, rng);
        }
        return {dist_.sample_tail_unchecked(state.scores()[who], rng), who};
      }
      case StrategyKind::mLIS1: {
        const std::size_t slot = pick_prefix(rng);
        if (slot == 0) return {dist_.sample_tail_unchecked(0.0, rng), Decision::kNoMember};
        return {dist_.sample_tail_unchecked(state.scores()[slot - 1], rng), slot - 1};
      }
    }
    return {};
  }

private:
  bool uses_prefix() const noexcept {
    return strategy_.kind == StrategyKind::mLIS1 ||
           (strategy_.kind == StrategyKind::LIS && strategy_.committee == 1);
  }

  std::size_t pick_prefix(RandomStream& rng) const {
    const double target = rng.uniform() * prefix_.back();
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
    const auto idx = static_cast<std::size_t>(it - prefix_.begin());
    return std::min(idx, prefix_.size() - 1);
  }

  std::size_t pick_rank(std::size_t c, RandomStream& rng) const {
    const std::size_t n = sorted_.size();
    cumulative_.assign(n, 0.0);
    double binom = 1.0;  // C(k-1, c-1) at k = c
    double acc = 0.0;
    for (std::size_t k = c; k <= n; ++k) {
      if (k > c) binom = binom * static_cast<double>(k - 1) / static_cast<double>(k - c);
      acc += binom * dist_.survival(sorted_[k - 1].first);
      cumulative_[k - 1] = acc;
    }
    const double target = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative_.begin() + static_cast<std::ptrdiff_t>(c - 1),
                               cumulative_.end(), target);
    const auto rank = std::min(static_cast<std::size_t>(it - cumulative_.begin()), n - 1);
    return sorted_[rank].second;
  }

  StrategySpec strategy_;
  ScoreDistribution dist_;
  std::vector<double> prefix_;
  std::vector<std::pair<double, std::size_t>> sorted_;
  mutable std::vector<double> cumulative_;
};

/// One rejection-free hire for an arbitrary state (rebuilds the sampler
/// cache; the simulation loops keep it incrementally instead).
inline StepDraw rejection_free_step(const StrategySpec& strategy, const CompanyState& state,
                                    const ScoreDistribution& dist, RandomStream& rng) {
  RejectionFreeSampler sampler(strategy, dist);
  sampler.rebuild(state);
  return sampler.draw(state, rng);
}

/// Grows one company at a time with either kernel.
class CompanyGrower {
public:
  CompanyGrower(StrategySpec strategy, ScoreDistribution dist, Kernel kernel)
      : strategy_(strategy), dist_(dist), kernel_(kernel), sampler_(strategy, dist) {}

  void start(std::size_t capacity = 0) {
    state_.reset();
    state_.reserve(capacity);
    sampler_.reset();
  }

  /// Add one employee; the naive kernel interviews until somebody is hired.
  void hire_next(RandomStream& rng, std::span<const double> thresholds = {}) {
    if (kernel_ == Kernel::RejectionFree) {
      const StepDraw d = sampler_.draw(state_, rng);
      state_.hire(d.score, thresholds);
      sampler_.observe(d.score);
      return;
    }
    for (;;) {
      const double x = dist_.sample(rng);
      if (decide(strategy_, state_, x, rng).accept) {
        state_.hire(x, thresholds);
        return;
      }
      state_.reject();
    }
  }

  const CompanyState& state() const noexcept { return state_; }

private:
  StrategySpec strategy_;
  ScoreDistribution dist_;
  Kernel kernel_;
  CompanyState state_;
  RejectionFreeSampler sampler_;
};

// ---------------------------------------------------------------------------
// Growth statistics

struct SizeStats {
  Moments mean_score;  // a_k
  Moments last_score;  // x_k
  Moments best_score;  // m_k
  Moments age;         // j_k
  std::uint64_t superior_hits = 0;
};

/// Per-size aggregates for k = 1..n. For compact laws the gap accessors
/// return 1 - <.>; raw means are always available.
struct GrowthStats {
  SimConfig config;
  bool superiority_tracked = false;
  bool thresholds_empirical = false;
  std::vector<double> thresholds;
  std::vector<SizeStats> sizes;  // sizes[k-1]

  int max_size() const noexcept { return static_cast<int>(sizes.size()); }
  const SizeStats& at(int k) const { return sizes.at(static_cast<std::size_t>(k - 1)); }

  Estimate mean_score(int k) const { return at(k).mean_score.estimate(); }
  Estimate last_score(int k) const { return at(k).last_score.estimate(); }
  Estimate best_score(int k) const { return at(k).best_score.estimate(); }
  Estimate mean_age(int k) const { return at(k).age.estimate(); }
  double age_variance(int k) const { return at(k).age.variance(); }

  /// mu_k = 1 - <a_k>
  Estimate mean_gap(int k) const { return gap(mean_score(k)); }
  /// xi_k = 1 - <x_k>
  Estimate last_gap(int k) const { return gap(last_score(k)); }
  /// nu_k = 1 - <m_k>
  Estimate best_gap(int k) const { return gap(best_score(k)); }

  Estimate superior_fraction(int k) const {
    if (!superiority_tracked) throw ConfigError("superiority was not tracked in this run");
    return proportion(at(k).superior_hits, at(k).mean_score.count);
  }

private:
  Estimate gap(Estimate e) const {
    if (!config.dist.compact()) throw DomainError("gaps are defined for compact score laws only");
    return {1.0 - e.mean, e.std_error, e.count};
  }
};

namespace detail {

inline std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt));
}

inline constexpr std::uint64_t kCalibrationSalt = 0xca11b7a7e;
inline constexpr std::uint64_t kPilotSalt = 0x9110f;

struct GrowthTotals {
  std::vector<SizeStats> sizes;
};

inline GrowthStats run_growth_with(const SimConfig& config, std::span<const double> thresholds) {
  const int n = config.size();
  const auto un = static_cast<std::size_t>(n);
  auto make = [un] { return GrowthTotals{std::vector<SizeStats>(un)}; };
  auto process = [&](GrowthTotals& acc, std::uint64_t first, std::uint64_t last) {
    std::vector<ShiftedSums> a(un), x(un), m(un), j(un);
    std::vector<std::uint64_t> hits(un, 0);
    CompanyGrower grower(config.strategy, config.dist, config.kernel);
    for (std::uint64_t t = first; t < last; ++t) {
      RandomStream rng(config.master_seed, t);
      grower.start(un);
      for (std::size_t k = 0; k < un; ++k) {
        grower.hire_next(rng, thresholds);
        const CompanyState& s = grower.state();
        a[k].add(s.mean_score());
        x[k].add(s.last_score());
        m[k].add(s.max_score());
        j[k].add(static_cast<double>(s.age()));
        if (!thresholds.empty() && s.superior_so_far()) ++hits[k];
      }
    }
    for (std::size_t k = 0; k < un; ++k) {
      acc.sizes[k].mean_score = a[k].moments();
      acc.sizes[k].last_score = x[k].moments();
      acc.sizes[k].best_score = m[k].moments();
      acc.sizes[k].age = j[k].moments();
      acc.sizes[k].superior_hits = hits[k];
    }
  };
  auto merge = [](GrowthTotals& total, GrowthTotals&& chunk) {
    for (std::size_t k = 0; k < total.sizes.size(); ++k) {
      total.sizes[k].mean_score.merge(chunk.sizes[k].mean_score);
      total.sizes[k].last_score.merge(chunk.sizes[k].last_score);
      total.sizes[k].best_score.merge(chunk.sizes[k].best_score);
      total.sizes[k].age.merge(chunk.sizes[k].age);
      total.sizes[k].superior_hits += chunk.sizes[k].superior_hits;
    }
  };
  GrowthTotals totals = run_chunked<GrowthTotals>(config.trials, resolve_workers(config.workers),
                                                  make, process, merge);
  GrowthStats out;
  out.config = config;
  out.sizes = std::move(totals.sizes);
  out.superiority_tracked = !thresholds.empty();
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  return out;
}

}  // namespace detail

struct ResolvedThresholds {
  std::vector<double> values;  // empty: superiority not tracked
  bool empirical = false;
};

/// Thresholds <x_1>..<x_n> per config.thresholds. Calibration runs a pilot
/// growth with a seed derived from the master seed.
inline ResolvedThresholds resolve_thresholds(const SimConfig& config, int n) {
  if (config.thresholds == ThresholdMode::None) return {};
  if (auto analytic = expected_score_thresholds(config.strategy, config.dist, n))
    return {std::move(*analytic), false};
  if (config.thresholds == ThresholdMode::Analytic)
    throw ConfigError("no closed-form <x_j> for " + config.strategy.name() + "/" +
                      config.dist.name() + "; enable calibration for empirical thresholds");
  SimConfig pilot = config;
  pilot.mode = GrowToSize{n};
  pilot.thresholds = ThresholdMode::None;
  pilot.master_seed = detail::derived_seed(config.master_seed, detail::kCalibrationSalt);
  if (pilot.kernel == Kernel::Naive) pilot.kernel = Kernel::RejectionFree;
  const GrowthStats stats = detail::run_growth_with(pilot, {});
  ResolvedThresholds out;
  out.empirical = true;
  for (int k = 1; k <= n; ++k) out.values.push_back(stats.last_score(k).mean);
  return out;
}

/// Grow `trials` companies to size n and aggregate per-size statistics.
/// Deterministic in (master_seed, trials) for any worker count.
inline GrowthStats run_growth(const SimConfig& config) {
  config.validate();
  if (!config.grows()) throw ConfigError("run_growth needs grow-to-size mode");
  const ResolvedThresholds th = resolve_thresholds(config, config.size());
  GrowthStats stats = detail::run_growth_with(config, th.values);
  stats.thresholds_empirical = th.empirical;
  return stats;
}

/// F_N: probability that the first N applicants are all hired. Each trial
/// stops at its first rejection.
inline Estimate estimate_all_hired(const SimConfig& config, int N) {
  SimConfig cfg = config;
  cfg.mode = InterviewBudget{N};
  cfg.validate();
  if (cfg.kernel != Kernel::Naive)
    throw ConfigError("all-hired probabilities need the naive kernel (rejections must be observable)");
  auto make = [] { return std::uint64_t{0}; };
  auto process = [&](std::uint64_t& hits, std::uint64_t first, std::uint64_t last) {
    CompanyState state;
    state.reserve(static_cast<std::size_t>(N));
    for (std::uint64_t t = first; t < last; ++t) {
      RandomStream rng(cfg.master_seed, t);
      state.reset();
      bool all = true;
      for (int i = 0; i < N; ++i) {
        const double x = cfg.dist.sample(rng);
        if (!decide(cfg.strategy, state, x, rng).accept) {
          all = false;
          break;
        }
        state.hire(x);
      }
      if (all) ++hits;
    }
  };
  auto merge = [](std::uint64_t& total, std::uint64_t chunk) { total += chunk; };
  const std::uint64_t hits =
      run_chunked<std::uint64_t>(cfg.trials, resolve_workers(cfg.workers), make, process, merge);
  return proportion(hits, cfg.trials);
}

struct SuperiorEstimate {
  Estimate fraction;           // P_n, conditional on the first n applicants all being hired
  std::uint64_t all_hired = 0; // trials in which the first n applicants were all hired
  bool thresholds_empirical = false;
  std::optional<double> reference;  // exact value used for the feasibility pre-check
  double expected_hits = 0.0;
  bool feasible = true;
  std::string warning;
};

/// P_n: fraction of superior companies among those whose first n applicants
/// were all hired (every hire j beat its expected score <x_j>). Each trial
/// interviews applicants one by one and stops at the first rejection, so
/// the estimator is the ratio (all hired and superior) / (all hired).
inline SuperiorEstimate estimate_superior(const SimConfig& config, int n) {
  SimConfig cfg = config;
  cfg.mode = InterviewBudget{n};
  cfg.kernel = Kernel::Naive;
  if (cfg.thresholds == ThresholdMode::None) cfg.thresholds = ThresholdMode::Analytic;
  cfg.validate();
  SuperiorEstimate out;
  out.reference = reference_superior_fraction(cfg.strategy, cfg.dist.law(), n);
  if (out.reference) {
    double all_hired = 1.0;
    try {
      all_hired = to_double(F_exact(cfg.strategy, cfg.dist.law(), n));
    } catch (const UnsupportedError&) {
    }
    out.expected_hits = *out.reference * all_hired * static_cast<double>(cfg.trials);
    if (out.expected_hits < 100.0) {
      out.feasible = false;
      out.warning = "expected hits " + std::to_string(out.expected_hits) +
                    " < 100 at this trial count; estimate is unreliable";
    }
  }
  const ResolvedThresholds th = resolve_thresholds(cfg, n);
  out.thresholds_empirical = th.empirical;
  const std::span<const double> thresholds = th.values;
  struct Counts {
    std::uint64_t all = 0;
    std::uint64_t superior = 0;
  };
  auto make = [] { return Counts{}; };
  auto process = [&](Counts& acc, std::uint64_t first, std::uint64_t last) {
    CompanyState state;
    state.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t t = first; t < last; ++t) {
      RandomStream rng(cfg.master_seed, t);
      state.reset();
      bool all = true;
      for (int i = 0; i < n; ++i) {
        const double x = cfg.dist.sample(rng);
        if (!decide(cfg.strategy, state, x, rng).accept) {
          all = false;
          break;
        }
        state.hire(x, thresholds);
      }
      if (!all) continue;
      ++acc.all;
      if (state.superior_so_far()) ++acc.superior;
    }
  };
  auto merge = [](Counts& total, Counts chunk) {
    total.all += chunk.all;
    total.superior += chunk.superior;
  };
  const Counts c = run_chunked<Counts>(cfg.trials, resolve_workers(cfg.workers), make, process, merge);
  out.all_hired = c.all;
  out.fraction = proportion(c.superior, c.all);
  return out;
}

// ---------------------------------------------------------------------------
// Score densities

/// Histogram estimate of rho_n(x), normalized so that it integrates to the
/// in-range share of n. Per-bin errors account for the correlation between
/// employees of the same company.
struct DensityHistogram {
  int n = 0;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> density;
  std::vector<double> std_error;
  Estimate in_range_mass;   // integral of the histogram (= n for compact laws)
  Estimate overflow_mass;   // employees above hi, per company
  Estimate gap_moment;      // int (1 - x) rho_n dx (compact laws)
  Estimate first_moment;    // int x rho_n dx

  double width() const noexcept { return (hi - lo) / static_cast<double>(density.size()); }
  double bin_lo(std::size_t b) const noexcept { return lo + width() * static_cast<double>(b); }
  double bin_hi(std::size_t b) const noexcept { return lo + width() * static_cast<double>(b + 1); }
};

namespace detail {

struct DensityTotals {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> sum_squares;
  std::uint64_t overflow = 0;
  std::uint64_t overflow_sq = 0;
  Moments gap_moment;
  Moments first_moment;
};

}  // namespace detail

/// Default upper edge for non-compact laws: twice <m_n>, analytic when known,
/// else from a pilot run.
inline double default_density_cap(const SimConfig& config, int n) {
  if (config.dist.compact()) return 1.0;
  if (config.strategy.kind == StrategyKind::MIS) return 2.0 * n;
  SimConfig pilot = config;
  pilot.mode = GrowToSize{n};
  pilot.trials = std::min<std::uint64_t>(config.trials, 10000);
  pilot.thresholds = ThresholdMode::None;
  pilot.master_seed = detail::derived_seed(config.master_seed, detail::kPilotSalt);
  pilot.kernel = Kernel::RejectionFree;
  return 2.0 * detail::run_growth_with(pilot, {}).best_score(n).mean;
}

inline DensityHistogram density_histogram(const SimConfig& config, int n, int bins,
                                          std::optional<double> x_cap = std::nullopt) {
  SimConfig cfg = config;
  cfg.mode = GrowToSize{n};
  cfg.validate();
  if (bins < 1) throw ConfigError("density histogram needs at least one bin");
  DensityHistogram h;
  h.n = n;
  h.lo = 0.0;
  h.hi = cfg.dist.compact() ? 1.0 : x_cap.value_or(default_density_cap(cfg, n));
  if (!(h.hi > h.lo)) throw ConfigError("density cap must be positive");
  const auto nb = static_cast<std::size_t>(bins);
  const double inv_width = static_cast<double>(bins) / (h.hi - h.lo);
  const bool compact = cfg.dist.compact();

  auto make = [nb] {
    return detail::DensityTotals{std::vector<std::uint64_t>(nb, 0),
                                 std::vector<std::uint64_t>(nb, 0), 0, 0, {}, {}};
  };
  auto process = [&](detail::DensityTotals& acc, std::uint64_t first, std::uint64_t last) {
    CompanyGrower grower(cfg.strategy, cfg.dist, cfg.kernel);
    std::vector<std::size_t> slots;
    ShiftedSums gap, moment;
    for (std::uint64_t t = first; t < last; ++t) {
      RandomStream rng(cfg.master_seed, t);
      grower.start(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) grower.hire_next(rng);
      slots.clear();
      std::uint64_t over = 0;
      double gap_sum = 0.0, x_sum = 0.0;
      for (double x : grower.state().scores()) {
        x_sum += x;
        if (compact) gap_sum += 1.0 - x;
        if (x >= h.hi) {
          ++over;
          continue;
        }
        slots.push_back(std::min(nb - 1, static_cast<std::size_t>((x - h.lo) * inv_width)));
      }
      std::sort(slots.begin(), slots.end());
      for (std::size_t i = 0; i < slots.size();) {
        std::size_t j = i;
        while (j < slots.size() && slots[j] == slots[i]) ++j;
        const auto c = static_cast<std::uint64_t>(j - i);
        acc.counts[slots[i]] += c;
        acc.sum_squares[slots[i]] += c * c;
        i = j;
      }
      acc.overflow += over;
      acc.overflow_sq += over * over;
      gap.add(gap_sum);
      moment.add(x_sum);
    }
    acc.gap_moment = gap.moments();
    acc.first_moment = moment.moments();
  };
  auto merge = [](detail::DensityTotals& total, detail::DensityTotals&& chunk) {
    for (std::size_t b = 0; b < total.counts.size(); ++b) {
      total.counts[b] += chunk.counts[b];
      total.sum_squares[b] += chunk.sum_squares[b];
    }
    total.overflow += chunk.overflow;
    total.overflow_sq += chunk.overflow_sq;
    total.gap_moment.merge(chunk.gap_moment);
    total.first_moment.merge(chunk.first_moment);
  };
  const detail::DensityTotals tot = run_chunked<detail::DensityTotals>(
      cfg.trials, resolve_workers(cfg.workers), make, process, merge);

  const double trials = static_cast<double>(cfg.trials);
  // Mean and standard error of a per-company count from its sum and sum of squares.
  auto per_company = [trials](std::uint64_t sum, std::uint64_t sum_sq, double scale) {
    const double mean = static_cast<double>(sum) / trials;
    const double var =
        std::max(0.0, (static_cast<double>(sum_sq) / trials - mean * mean) * trials / (trials - 1.0));
    return Estimate{mean * scale, std::sqrt(var / trials) * scale, static_cast<std::uint64_t>(trials)};
  };
  h.density.resize(nb);
  h.std_error.resize(nb);
  std::uint64_t in_range = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    const Estimate e = per_company(tot.counts[b], tot.sum_squares[b], inv_width);
    h.density[b] = e.mean;
    h.std_error[b] = e.std_error;
    in_range += tot.counts[b];
  }
  // Every in-range employee lands in exactly one bin; the overflow count is
  // n minus that, so its spread is the spread of the in-range mass.
  h.overflow_mass = per_company(tot.overflow, tot.overflow_sq, 1.0);
  h.in_range_mass = {static_cast<double>(in_range) / trials, h.overflow_mass.std_error,
                     cfg.trials};
  h.gap_moment = tot.gap_moment.estimate();
  h.first_moment = tot.first_moment.estimate();
  return h;
}

// ---------------------------------------------------------------------------
// Marginal samples for distribution-level comparisons

/// Per-trial values of x_k and m_k for k = 1..n, trials in index order.
struct GrowthSamples {
  std::vector<std::vector<double>> last;  // last[k-1][trial]
  std::vector<std::vector<double>> best;
};

inline GrowthSamples collect_growth_samples(const SimConfig& config) {
  config.validate();
  if (!config.grows()) throw ConfigError("sample collection needs grow-to-size mode");
  const auto un = static_cast<std::size_t>(config.size());
  auto make = [un] {
    return GrowthSamples{std::vector<std::vector<double>>(un), std::vector<std::vector<double>>(un)};
  };
  auto process = [&](GrowthSamples& acc, std::uint64_t first, std::uint64_t last) {
    CompanyGrower grower(config.strategy, config.dist, config.kernel);
    for (std::uint64_t t = first; t < last; ++t) {
      RandomStream rng(config.master_seed, t);
      grower.start(un);
      for (std::size_t k = 0; k < un; ++k) {
        grower.hire_next(rng);
        acc.last[k].push_back(grower.state().last_score());
        acc.best[k].push_back(grower.state().max_score());
      }
    }
  };
  auto merge = [](GrowthSamples& total, GrowthSamples&& chunk) {
    for (std::size_t k = 0; k < total.last.size(); ++k) {
      total.last[k].insert(total.last[k].end(), chunk.last[k].begin(), chunk.last[k].end());
      total.best[k].insert(total.best[k].end(), chunk.best[k].begin(), chunk.best[k].end());
    }
  };
  return run_chunked<GrowthSamples>(config.trials, resolve_workers(config.workers), make, process,
                                    merge);
}

}  // namespace hirelab
