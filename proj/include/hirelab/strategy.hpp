#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hirelab/error.hpp"
#include "hirelab/gaps.hpp"
#include "hirelab/random.hpp"
#include "hirelab/score_dist.hpp"

namespace hirelab {

enum class StrategyKind { MIS, AIS, LIS, mLIS1 };

/// Acceptance rule. `committee` is only meaningful for LIS; mLIS1 is LIS(1)
/// with a permanent zero-score phantom in the interviewer pool.
struct StrategySpec {
  StrategyKind kind = StrategyKind::MIS;
  int committee = 1;

  static constexpr StrategySpec mis() noexcept { return {StrategyKind::MIS, 1}; }
  static constexpr StrategySpec ais() noexcept { return {StrategyKind::AIS, 1}; }
  static constexpr StrategySpec mlis1() noexcept { return {StrategyKind::mLIS1, 1}; }
  static StrategySpec lis(int c) {
    if (c < 1) throw ConfigError("LIS committee size must be >= 1");
    return {StrategyKind::LIS, c};
  }

  /// "mis" | "ais" | "lis:<c>" | "mlis1"
  static StrategySpec parse(std::string_view text) {
    if (text == "mis") return mis();
    if (text == "ais") return ais();
    if (text == "mlis1") return mlis1();
    if (text.starts_with("lis:")) {
      auto digits = text.substr(4);
      int c = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), c);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
        throw ConfigError("bad committee size in '" + std::string(text) + "'");
      return lis(c);
    }
    if (text == "lis") return lis(1);
    throw ConfigError("unknown strategy '" + std::string(text) +
                      "' (expected mis | ais | lis:<c> | mlis1)");
  }

  std::string name() const {
    switch (kind) {
      case StrategyKind::MIS: return "mis";
      case StrategyKind::AIS: return "ais";
      case StrategyKind::LIS: return "lis:" + std::to_string(committee);
      case StrategyKind::mLIS1: return "mlis1";
    }
    return "?";
  }

  friend constexpr bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

/// Hire record of one company. Hire indices are 1-based in the accessors
/// that mirror the usual notation (best_index, thresholds); `scores()` is a
/// plain 0-based vector.
class CompanyState {
public:
  CompanyState() = default;

  /// Empty the company but keep allocated storage.
  void reset() noexcept {
    scores_.clear();
    sum_ = 0.0;
    max_ = -std::numeric_limits<double>::infinity();
    best_index_ = 0;
    interviews_ = 0;
    superior_ = true;
    all_hired_ = true;
  }

  void reserve(std::size_t n) { scores_.reserve(n); }

  std::size_t size() const noexcept { return scores_.size(); }
  bool empty() const noexcept { return scores_.empty(); }
  std::span<const double> scores() const noexcept { return scores_; }
  double last_score() const { return scores_.back(); }
  double max_score() const noexcept { return max_; }
  double mean_score() const noexcept { return sum_ / static_cast<double>(scores_.size()); }
  double score_sum() const noexcept { return sum_; }
  /// 1-based hire index of the best employee (0 when empty).
  std::size_t best_index() const noexcept { return best_index_; }
  /// j_n = n - best_index: hires since the best employee joined.
  std::size_t age() const noexcept { return scores_.size() - best_index_; }
  std::uint64_t interviews() const noexcept { return interviews_; }
  bool superior_so_far() const noexcept { return superior_; }
  bool all_hired_so_far() const noexcept { return all_hired_; }

  /// Append an accepted applicant. When `thresholds` is non-empty,
  /// thresholds[j-1] is the expected score <x_j> of the j-th hire and the
  /// superiority flag is updated.
  void hire(double applicant, std::span<const double> thresholds = {}) {
    scores_.push_back(applicant);
    sum_ += applicant;
    ++interviews_;
    if (applicant > max_) {
      max_ = applicant;
      best_index_ = scores_.size();
    }
    if (!thresholds.empty()) {
      if (scores_.size() > thresholds.size())
        throw std::out_of_range("hire: no superiority threshold for hire " +
                                std::to_string(scores_.size()));
      superior_ = superior_ && applicant > thresholds[scores_.size() - 1];
    }
  }

  /// Record a rejected applicant.
  void reject() noexcept {
    ++interviews_;
    all_hired_ = false;
  }

private:
  std::vector<double> scores_;
  double sum_ = 0.0;
  double max_ = -std::numeric_limits<double>::infinity();
  std::size_t best_index_ = 0;
  std::uint64_t interviews_ = 0;
  bool superior_ = true;
  bool all_hired_ = true;
};

/// Outcome of one interview. `decisive` is the 0-based hire index of the
/// highest-scoring committee member the applicant had to beat, or
/// `kNoMember` when the comparison was against the phantom or an empty company.
struct Decision {
  static constexpr std::size_t kNoMember = std::numeric_limits<std::size_t>::max();

  bool accept = false;
  std::size_t committee_size = 0;
  std::size_t decisive = kNoMember;
};

namespace detail {

/// Floyd's distinct-subset draw of `count` indices out of [0, pool); exactly
/// `count` variates. Returns the member with the highest score.
inline std::size_t floyd_committee_max(std::span<const double> scores, std::size_t count,
                                       RandomStream& rng) {
  constexpr std::size_t kInline = 16;
  std::array<std::size_t, kInline> small{};
  std::vector<std::size_t> large;
  std::size_t* chosen = small.data();
  if (count > kInline) {
    large.resize(count);
    chosen = large.data();
  }
  const std::size_t pool = scores.size();
  std::size_t picked = 0;
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t j = pool - count; j < pool; ++j) {
    std::size_t t = rng.below(j + 1);
    if (std::find(chosen, chosen + picked, t) != chosen + picked) t = j;
    chosen[picked++] = t;
    if (scores[t] > best_score) {
      best_score = scores[t];
      best = t;
    }
  }
  return best;
}

}  // namespace detail

/// Decide whether `applicant` is hired. LIS draws a fresh committee of
/// min(c, n) distinct employees; ties are rejections.
inline Decision decide(const StrategySpec& strategy, const CompanyState& state, double applicant,
                       RandomStream& rng) {
  Decision d;
  const std::size_t n = state.size();
  switch (strategy.kind) {
    case StrategyKind::MIS:
      if (n == 0) return {true, 0, Decision::kNoMember};
      d.committee_size = n;
      d.decisive = state.best_index() - 1;
      d.accept = applicant > state.max_score();
      return d;
    case StrategyKind::AIS:
      if (n == 0) return {true, 0, Decision::kNoMember};
      d.committee_size = n;
      d.accept = applicant > state.mean_score();
      return d;
    case StrategyKind::LIS: {
      if (n == 0) return {true, 0, Decision::kNoMember};
      const auto c = static_cast<std::size_t>(strategy.committee);
      if (n <= c) {
        d.committee_size = n;
        d.decisive = state.best_index() - 1;
        d.accept = applicant > state.max_score();
        return d;
      }
      d.committee_size = c;
      if (c == 1) {
        d.decisive = rng.below(n);
      } else {
        d.decisive = detail::floyd_committee_max(state.scores(), c, rng);
      }
      d.accept = applicant > state.scores()[d.decisive];
      return d;
    }
    case StrategyKind::mLIS1: {
      // Pool: n employees plus the phantom at position n.
      d.committee_size = 1;
      const std::size_t t = rng.below(n + 1);
      if (t == n) {
        d.accept = applicant > 0.0;
        return d;
      }
      d.decisive = t;
      d.accept = applicant > state.scores()[t];
      return d;
    }
  }
  return d;
}

/// Analytic <x_j> for the (strategy, law) pairs where a closed form is known;
/// std::nullopt otherwise.
inline std::optional<double> expected_score_threshold(const StrategySpec& strategy,
                                                      const ScoreDistribution& dist, int j) {
  if (j < 1) throw DomainError("expected_score_threshold: j must be >= 1");
  const ScoreLaw law = dist.law();
  // Up to c+1 hires every employee sits on the committee, so LIS(c) is MIS.
  const bool mis_like = strategy.kind == StrategyKind::MIS ||
                        (strategy.kind == StrategyKind::LIS && j <= strategy.committee + 1);
  if (mis_like) {
    if (law == ScoreLaw::Uniform) return 1.0 - std::ldexp(1.0, -j);
    if (law == ScoreLaw::Exponential) return static_cast<double>(j);
  }
  switch (strategy.kind) {
    case StrategyKind::AIS:
      if (law == ScoreLaw::Uniform) return 1.0 - ais_xi(j);
      if (law == ScoreLaw::Exponential) return 1.0 + harmonic(j - 1);
      break;
    case StrategyKind::LIS:
      if (law == ScoreLaw::Exponential) {
        if (strategy.committee == 1) return 1.0 + harmonic(j - 1);
        if (strategy.committee == 2) return 2.0 * harmonic(j - 1);
      }
      break;
    default: break;
  }
  return std::nullopt;
}

/// Thresholds <x_1>..<x_n>, or std::nullopt if any is unavailable.
inline std::optional<std::vector<double>> expected_score_thresholds(const StrategySpec& strategy,
                                                                   const ScoreDistribution& dist,
                                                                   int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    auto t = expected_score_threshold(strategy, dist, j);
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  return out;
}

}  // namespace hirelab
