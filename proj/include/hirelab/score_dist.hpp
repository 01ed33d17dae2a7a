#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "hirelab/error.hpp"
#include "hirelab/random.hpp"

namespace hirelab {

enum class ScoreLaw { Uniform, Tent, Exponential };

/// Applicant score law. Uniform and tent live on (0,1), the exponential
/// (unit rate) on [0, inf). All sampling goes through closed-form inverse
/// CDFs, so every score costs exactly one uniform variate.
class ScoreDistribution {
public:
  constexpr ScoreDistribution() noexcept = default;
  constexpr explicit ScoreDistribution(ScoreLaw law) noexcept : law_(law) {}

  static ScoreDistribution parse(std::string_view name) {
    if (name == "uniform") return ScoreDistribution(ScoreLaw::Uniform);
    if (name == "tent") return ScoreDistribution(ScoreLaw::Tent);
    if (name == "exp" || name == "exponential") return ScoreDistribution(ScoreLaw::Exponential);
    throw ConfigError("unknown distribution '" + std::string(name) +
                      "' (expected uniform | tent | exp)");
  }

  constexpr ScoreLaw law() const noexcept { return law_; }

  std::string name() const {
    switch (law_) {
      case ScoreLaw::Uniform: return "uniform";
      case ScoreLaw::Tent: return "tent";
      case ScoreLaw::Exponential: return "exp";
    }
    return "?";
  }

  /// True for the laws supported on (0,1); gaps 1 - <x> only make sense there.
  constexpr bool compact() const noexcept { return law_ != ScoreLaw::Exponential; }

  constexpr double support_lo() const noexcept { return 0.0; }
  constexpr double support_hi() const noexcept {
    return compact() ? 1.0 : std::numeric_limits<double>::infinity();
  }

  double density(double x) const {
    check_closure(x);
    switch (law_) {
      case ScoreLaw::Uniform: return 1.0;
      case ScoreLaw::Tent: return 2.0 * (1.0 - x);
      case ScoreLaw::Exponential: return std::exp(-x);
    }
    return 0.0;
  }

  /// R(x) = P(score > x).
  double survival(double x) const {
    check_closure(x);
    switch (law_) {
      case ScoreLaw::Uniform: return 1.0 - x;
      case ScoreLaw::Tent: return (1.0 - x) * (1.0 - x);
      case ScoreLaw::Exponential: return std::exp(-x);
    }
    return 0.0;
  }

  double cdf(double x) const { return 1.0 - survival(x); }

  /// Inverse of the survival function: the x with R(x) = r, r in (0, 1].
  double inverse_survival(double r) const noexcept {
    switch (law_) {
      case ScoreLaw::Uniform: return 1.0 - r;
      case ScoreLaw::Tent: return 1.0 - std::sqrt(r);
      case ScoreLaw::Exponential: return -std::log(r);
    }
    return 0.0;
  }

  double mean() const noexcept {
    switch (law_) {
      case ScoreLaw::Uniform: return 0.5;
      case ScoreLaw::Tent: return 1.0 / 3.0;
      case ScoreLaw::Exponential: return 1.0;
    }
    return 0.0;
  }

  double sample(RandomStream& rng) const noexcept {
    const double u = rng.uniform();
    switch (law_) {
      case ScoreLaw::Uniform: return u;
      case ScoreLaw::Tent: return 1.0 - std::sqrt(1.0 - u);
      case ScoreLaw::Exponential: return -std::log1p(-u);
    }
    return 0.0;
  }

  /// Draw from the law conditioned on score > floor, by inverting
  /// R(x) = R(floor) (1 - u).
  double sample_tail(double floor, RandomStream& rng) const {
    if (!(floor >= support_lo()) || floor > support_hi())
      throw DomainError("sample_tail: floor " + std::to_string(floor) + " outside support of " +
                        name());
    if (survival(floor) <= 0.0)
      throw DomainError("sample_tail: degenerate floor " + std::to_string(floor) +
                        " (zero survival)");
    return sample_tail_unchecked(floor, rng);
  }

  /// sample_tail without validation; for kernels whose floors are always
  /// earlier samples.
  double sample_tail_unchecked(double floor, RandomStream& rng) const noexcept {
    const double u = rng.uniform();
    switch (law_) {
      case ScoreLaw::Uniform: return 1.0 - (1.0 - floor) * (1.0 - u);
      case ScoreLaw::Tent: return 1.0 - (1.0 - floor) * std::sqrt(1.0 - u);
      case ScoreLaw::Exponential: return floor - std::log1p(-u);
    }
    return 0.0;
  }

  friend constexpr bool operator==(const ScoreDistribution&, const ScoreDistribution&) = default;

private:
  void check_closure(double x) const {
    if (!(x >= support_lo() && x <= support_hi()))
      throw DomainError("score " + std::to_string(x) + " outside the support of " + name());
  }

  ScoreLaw law_ = ScoreLaw::Uniform;
};

}  // namespace hirelab
