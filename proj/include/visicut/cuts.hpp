#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "visicut/interval.hpp"
#include "visicut/multipoly.hpp"
#include "visicut/visibility.hpp"

namespace visicut {

/// a^T x + b
struct AffineFunction {
  std::vector<double> a;
  double b = 0.0;

  [[nodiscard]] double operator()(std::span<const double> x) const;
  [[nodiscard]] Interval range(const IntervalVector& box) const;
};

/// alpha^T (x - xbar) >= rhs
struct Cut {
  std::vector<double> alpha;
  double rhs = 1.0;
  Point xbar;

  [[nodiscard]] double lhs(std::span<const double> x) const;
  /// rhs - lhs(x); positive when x violates the cut.
  [[nodiscard]] double violation(std::span<const double> x) const { return rhs - lhs(x); }
  /// The same inequality written as alpha^T x >= rhs + alpha^T xbar.
  [[nodiscard]] double raw_rhs() const;
  [[nodiscard]] std::string to_string() const;
};

/// Affine L <= g on the box from term-wise McCormick estimators. Every
/// monomial must have total degree <= 3. Among the candidate facets of each
/// term the one with the largest value at xbar is kept (ties: the
/// lexicographically smallest coefficient vector).
AffineFunction mccormick_under(const MultiPoly& g, const IntervalVector& box, std::span<const double> xbar);

/// Gradient cut of the McCormick underestimator over `domain`, normalized to
/// alpha^T (x - xbar) >= 1; nullopt if the underestimator is not positive at xbar.
std::optional<Cut> gradient_cut(const MultiPoly& g, const IntervalVector& domain, std::span<const double> xbar);

enum class ValidationStatus { Valid, Violated, Inconclusive };

std::string to_string(ValidationStatus s);

struct ValidationReport {
  ValidationStatus status = ValidationStatus::Inconclusive;
  int feasible_samples = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
  Point worst;
};

/// Rejection-samples `samples` points of S = {x in C : g(x) <= 0} (at most
/// 50 * samples draws) and reports the largest cut violation.
ValidationReport validate_cut(const Cut& cut, const ProblemInstance& inst, int samples, std::uint64_t seed);

enum class Dominance { FirstDominates, SecondDominates, Incomparable };

std::string to_string(Dominance d);

/// c1 dominates when every box point violating c2 also violates c1.
/// Identical cuts count as c1 dominating.
Dominance compare_cuts(const Cut& c1, const Cut& c2, const IntervalVector& box, int samples = 1000,
                       std::uint64_t seed = 0);

}  // namespace visicut
