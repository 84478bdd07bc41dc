#pragma once

#include <variant>
#include <vector>

#include "visicut/interval.hpp"
#include "visicut/multipoly.hpp"

namespace visicut {

enum class Sense { LessEqual, GreaterEqual };

struct LinearConstraint {
  std::vector<double> a;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;

  [[nodiscard]] double violation(std::span<const double> x) const;
  /// Range of a^T x - rhs over the box.
  [[nodiscard]] Interval slack_range(const IntervalVector& box) const;
};

/// Convex set C: a box intersected with finitely many linear inequalities.
class ConvexDomain {
 public:
  explicit ConvexDomain(IntervalVector box, std::vector<LinearConstraint> linear = {});

  [[nodiscard]] std::size_t dim() const { return box_.size(); }
  [[nodiscard]] const IntervalVector& box() const { return box_; }
  [[nodiscard]] const std::vector<LinearConstraint>& linear() const { return linear_; }

  /// Box and every linear row satisfied within `tol` (absolute).
  [[nodiscard]] bool contains(std::span<const double> x, double tol = 1e-9) const;
  /// Some linear row is violated at every point of `box`.
  [[nodiscard]] bool excludes(const IntervalVector& box) const;

 private:
  IntervalVector box_;
  std::vector<LinearConstraint> linear_;
};

/// S = {x in C : g(x) <= 0} separated from xbar in C with g(xbar) > 0.
class ProblemInstance {
 public:
  ProblemInstance(MultiPoly g, ConvexDomain domain, Point xbar);

  [[nodiscard]] const MultiPoly& g() const { return g_; }
  [[nodiscard]] const ConvexDomain& domain() const { return domain_; }
  [[nodiscard]] const Point& xbar() const { return xbar_; }
  [[nodiscard]] std::size_t dim() const { return xbar_.size(); }
  /// Band |g(x)| <= surface_tol() counts as the surface g = 0.
  [[nodiscard]] double surface_tol() const { return surface_tol_; }

 private:
  MultiPoly g_;
  ConvexDomain domain_;
  Point xbar_;
  double surface_tol_;
};

/// alpha^T x + beta >= 0
struct Halfspace {
  std::vector<double> alpha;
  double beta = 0.0;

  [[nodiscard]] double value(std::span<const double> x) const;
};

enum class RegionKind { ExactQuadratic, GradientRelaxation };

/// {x in domain : surface(x) = 0, extra(x) >= 0}; extra is a half-space for
/// quadratic g and the polynomial <grad g(x), xbar - x> otherwise.
struct RegionDescription {
  RegionKind kind = RegionKind::ExactQuadratic;
  MultiPoly surface;
  std::variant<Halfspace, MultiPoly> extra;
  ConvexDomain domain;
};

/// Visible from xbar: on the surface and g > 0 on the open segment to xbar.
bool is_visible(const ProblemInstance& inst, std::span<const double> x);

/// On the surface and g >= 0 on the whole segment to xbar.
bool in_relaxation(const ProblemInstance& inst, std::span<const double> x);

/// Polar hyperplane of xbar w.r.t. a quadric: alpha = grad g(xbar), beta = b^T xbar + 2c.
Halfspace polar_halfspace(const MultiPoly& g, std::span<const double> xbar);

/// h(x) = <grad g(x), xbar - x>
MultiPoly visibility_gradient_condition(const MultiPoly& g, std::span<const double> xbar);

RegionDescription region_description(const ProblemInstance& inst);

}  // namespace visicut
