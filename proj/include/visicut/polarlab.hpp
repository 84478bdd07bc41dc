#pragma once

#include <optional>
#include <random>
#include <string_view>
#include <string>
#include <vector>

#include "visicut/multipoly.hpp"

namespace visicut {

/// A finite point set S together with the point xbar to be separated.
class FinitePointSet {
 public:
  FinitePointSet(std::vector<Point> points, Point xbar);
  /// xbar defaults to the origin.
  FinitePointSet(std::vector<Point> points, std::size_t dim);

  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] const Point& xbar() const { return xbar_; }
  [[nodiscard]] std::size_t dim() const { return xbar_.size(); }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  /// points()[i] - xbar
  [[nodiscard]] Point centered(std::size_t i) const;
  /// Same xbar, only the points at the given indices.
  [[nodiscard]] FinitePointSet subset(const std::vector<std::size_t>& keep) const;

 private:
  std::vector<Point> points_;
  Point xbar_;
};

/// {alpha : alpha^T r >= 1 for every row r}, r = x_i - xbar.
struct PolarPolyhedron {
  std::vector<Point> rows;
  std::size_t dim = 0;
};

PolarPolyhedron reverse_polar(const FinitePointSet& ps);

/// Some alpha with alpha^T r >= 1 for all rows, or nullopt if the system is infeasible.
std::optional<Point> polar_point(const PolarPolyhedron& poly);

/// xbar in conv(points), decided by a convex-combination LP.
bool xbar_in_hull(const FinitePointSet& ps);

/// Reverse polar empty. Decided twice (phase-1 on the polar rows and the
/// hull-membership LP); throws NumericalError if the two disagree.
bool polar_empty(const FinitePointSet& ps);

/// A separating normal alpha (alpha^T (x - xbar) >= 1 on S) or nullopt.
std::optional<Point> separate(const FinitePointSet& ps);

/// min{mu >= 0 : xbar + mu (x - xbar) in conv(points)}, nullopt if the ray misses the hull.
std::optional<double> min_scale_in_hull(const FinitePointSet& ps, const Point& x);

/// Points with no other point on the half-open segment [xbar, x_i).
FinitePointSet radial_visible_subset(const FinitePointSet& ps);

/// Points of S that are visible points of conv S. Requires xbar not in conv S.
FinitePointSet hull_visible_subset(const FinitePointSet& ps);

/// Points not in the convex hull of the others.
FinitePointSet hull_vertices(const FinitePointSet& ps);

/// Points present in both sets (same xbar).
FinitePointSet intersect(const FinitePointSet& a, const FinitePointSet& b);

struct GeneratorReport {
  bool equal = false;
  std::string detail;  // first failing row, empty when equal
};

/// Region of reverse_polar(a) contained in region of reverse_polar(b).
GeneratorReport polar_included(const FinitePointSet& a, const FinitePointSet& b);

GeneratorReport compare_generators(const FinitePointSet& a, const FinitePointSet& b);

/// Same reverse polar.
bool generator_equal(const FinitePointSet& a, const FinitePointSet& b);

/// Union over the scales t >= 1 of xbar + t (x_i - xbar).
FinitePointSet shadow_sample(const FinitePointSet& ps, const std::vector<double>& scales);

/// Generator checks on a finite set, each comparing S with a subset that the
/// theory says has the same reverse polar.
///   visible:         the radially visible points
///   shadow:          S plus shadow copies at random scales in [1, 5]
///   smallest-inter:  S intersected with the visible points of conv S
///   smallest-closed: the same, further restricted to vertices of conv S
enum class LabCheck { Visible, Shadow, SmallestInter, SmallestClosed };

std::optional<LabCheck> parse_lab_check(std::string_view name);
std::string to_string(LabCheck c);

struct LabOutcome {
  bool pass = false;
  /// Reverse polar of the input set is empty.
  bool polar_empty = false;
  /// Empty on success; otherwise the first row that is not implied.
  std::string detail;
  FinitePointSet candidate{std::vector<Point>{}, std::size_t{1}};
};

/// Runs one check. `claimed`, when given, replaces the computed candidate
/// (used to test a hand-supplied subset). The shadow check draws its scales
/// from `rng`.
LabOutcome run_lab_check(LabCheck check, const FinitePointSet& ps, std::mt19937_64& rng,
                         const std::optional<FinitePointSet>& claimed = std::nullopt);

/// Random instance for a check: dimension 2..4, 5..30 points with
/// coordinates in [-3, 3], no point within 0.1 of xbar = 0, and some points
/// duplicated along their rays so that blocking occurs. Sets for the hull
/// checks lie in an open half-space so that their reverse polar is nonempty.
FinitePointSet random_lab_set(LabCheck check, std::mt19937_64& rng);

}  // namespace visicut
