#include "visicut/polarlab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "visicut/error.hpp"
#include "visicut/linprog.hpp"

namespace visicut {

namespace {

constexpr double kDistinct = 1e-9;
constexpr double kImplied = 1e-7;
constexpr double kHullScale = 1e-8;

double norm(const Point& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void require_ok(const lp::Result& r, const char* what) {
  if (r.status == lp::Status::NumericalFailure) throw NumericalError(std::string(what) + ": LP numerical failure");
}

// Is some convex combination of `gens` equal to `target`?
bool in_convex_hull(const std::vector<Point>& gens, const Point& target) {
  if (gens.empty()) return false;
  const std::size_t n = target.size();
  lp::LinearProgram prog;
  prog.objective.assign(gens.size(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    lp::Row row{std::vector<double>(gens.size()), lp::RowSense::Equal, target[k]};
    for (std::size_t j = 0; j < gens.size(); ++j) row.a[j] = gens[j][k];
    prog.rows.push_back(std::move(row));
  }
  prog.rows.push_back({std::vector<double>(gens.size(), 1.0), lp::RowSense::Equal, 1.0});
  const auto res = lp::solve(prog);
  require_ok(res, "convex hull membership");
  return res.status == lp::Status::Optimal;
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

FinitePointSet::FinitePointSet(std::vector<Point> points, Point xbar) : points_(std::move(points)), xbar_(std::move(xbar)) {
  if (xbar_.empty()) throw InputError("point set: dimension must be positive");
  for (const auto& p : points_) {
    if (p.size() != xbar_.size()) throw InputError("point set: point has wrong dimension");
    for (double v : p)
      if (!std::isfinite(v)) throw InputError("point set: non-finite coordinate");
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (distance(points_[i], points_[j]) <= kDistinct)
        throw InputError("point set: points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

FinitePointSet::FinitePointSet(std::vector<Point> points, std::size_t dim)
    : FinitePointSet(std::move(points), Point(dim, 0.0)) {}

Point FinitePointSet::centered(std::size_t i) const {
  Point r = points_.at(i);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= xbar_[k];
  return r;
}

FinitePointSet FinitePointSet::subset(const std::vector<std::size_t>& keep) const {
  std::vector<Point> pts;
  for (std::size_t i : keep) pts.push_back(points_.at(i));
  return FinitePointSet(std::move(pts), xbar_);
}

PolarPolyhedron reverse_polar(const FinitePointSet& ps) {
  PolarPolyhedron poly{{}, ps.dim()};
  for (std::size_t i = 0; i < ps.size(); ++i) poly.rows.push_back(ps.centered(i));
  return poly;
}

std::optional<Point> polar_point(const PolarPolyhedron& poly) {
  if (poly.rows.empty()) return Point(poly.dim, 0.0);
  lp::LinearProgram prog;
  prog.objective.assign(poly.dim, 0.0);
  prog.lower.assign(poly.dim, -lp::kInf);
  prog.upper.assign(poly.dim, lp::kInf);
  for (const auto& r : poly.rows) prog.rows.push_back({r, lp::RowSense::GreaterEqual, 1.0});
  const auto res = lp::solve(prog);
  require_ok(res, "reverse polar feasibility");
  if (res.status != lp::Status::Optimal) return std::nullopt;
  return res.x;
}

bool xbar_in_hull(const FinitePointSet& ps) {
  std::vector<Point> gens;
  for (std::size_t i = 0; i < ps.size(); ++i) gens.push_back(ps.centered(i));
  return in_convex_hull(gens, Point(ps.dim(), 0.0));
}

bool polar_empty(const FinitePointSet& ps) {
  const bool by_polar = !polar_point(reverse_polar(ps)).has_value();
  const bool by_hull = xbar_in_hull(ps);
  if (by_polar != by_hull) throw NumericalError("polar_empty: polar feasibility and hull membership disagree");
  return by_polar;
}

std::optional<Point> separate(const FinitePointSet& ps) { return polar_point(reverse_polar(ps)); }

std::optional<double> min_scale_in_hull(const FinitePointSet& ps, const Point& x) {
  if (x.size() != ps.dim()) throw InputError("min_scale_in_hull: dimension mismatch");
  Point dir = x;
  for (std::size_t k = 0; k < dir.size(); ++k) dir[k] -= ps.xbar()[k];
  if (norm(dir) <= kDistinct) throw InputError("min_scale_in_hull: x coincides with xbar");
  if (ps.size() == 0) return std::nullopt;

  // Variables: mu, w_1..w_m.  sum w_i r_i - mu dir = 0, sum w_i = 1.
  const std::size_t m = ps.size();
  lp::LinearProgram prog;
  prog.objective.assign(m + 1, 0.0);
  prog.objective[0] = 1.0;
  for (std::size_t k = 0; k < ps.dim(); ++k) {
    lp::Row row{std::vector<double>(m + 1, 0.0), lp::RowSense::Equal, 0.0};
    row.a[0] = -dir[k];
    for (std::size_t j = 0; j < m; ++j) row.a[j + 1] = ps.points()[j][k] - ps.xbar()[k];
    prog.rows.push_back(std::move(row));
  }
  lp::Row sum{std::vector<double>(m + 1, 1.0), lp::RowSense::Equal, 1.0};
  sum.a[0] = 0.0;
  prog.rows.push_back(std::move(sum));
  const auto res = lp::solve(prog);
  require_ok(res, "min_scale_in_hull");
  if (res.status != lp::Status::Optimal) return std::nullopt;
  return std::max(0.0, res.x[0]);
}

FinitePointSet radial_visible_subset(const FinitePointSet& ps) {
  std::vector<Point> rays;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    rays.push_back(ps.centered(i));
    if (norm(rays.back()) <= kDistinct) throw InputError("radial_visible_subset: xbar belongs to the point set");
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const double ni2 = dot(rays[i], rays[i]);
    bool blocked = false;
    for (std::size_t j = 0; j < rays.size() && !blocked; ++j) {
      if (j == i) continue;
      const double t = dot(rays[j], rays[i]) / ni2;
      if (t <= 0.0 || t >= 1.0) continue;
      Point off = rays[j];
      for (std::size_t k = 0; k < off.size(); ++k) off[k] -= t * rays[i][k];
      blocked = norm(off) <= kDistinct * std::max(1.0, std::sqrt(ni2));
    }
    if (!blocked) keep.push_back(i);
  }
  return ps.subset(keep);
}

FinitePointSet hull_visible_subset(const FinitePointSet& ps) {
  if (polar_empty(ps)) throw InputError("hull_visible_subset: xbar lies in the convex hull of the point set");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto mu = min_scale_in_hull(ps, ps.points()[i]);
    if (mu && *mu >= 1.0 - kHullScale) keep.push_back(i);
  }
  return ps.subset(keep);
}

FinitePointSet hull_vertices(const FinitePointSet& ps) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (j != i) others.push_back(ps.points()[j]);
    if (!in_convex_hull(others, ps.points()[i])) keep.push_back(i);
  }
  return ps.subset(keep);
}

FinitePointSet intersect(const FinitePointSet& a, const FinitePointSet& b) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& q : b.points())
      if (distance(a.points()[i], q) <= kDistinct) {
        keep.push_back(i);
        break;
      }
  return a.subset(keep);
}

GeneratorReport polar_included(const FinitePointSet& a, const FinitePointSet& b) {
  if (a.dim() != b.dim() || distance(a.xbar(), b.xbar()) > kDistinct)
    throw InputError("polar comparison needs sets with the same xbar");
  if (polar_empty(a)) return {true, {}};
  const PolarPolyhedron pa = reverse_polar(a);
  const PolarPolyhedron pb = reverse_polar(b);
  for (std::size_t i = 0; i < pb.rows.size(); ++i) {
    // Is alpha^T r >= 1 implied on the region of a?  min r^T alpha over it.
    lp::LinearProgram prog;
    prog.objective = pb.rows[i];
    prog.lower.assign(a.dim(), -lp::kInf);
    prog.upper.assign(a.dim(), lp::kInf);
    for (const auto& r : pa.rows) prog.rows.push_back({r, lp::RowSense::GreaterEqual, 1.0});
    const auto res = lp::solve(prog);
    require_ok(res, "row implication");
    if (res.status == lp::Status::Unbounded)
      return {false, "row " + format_point(b.points()[i]) + " not implied (unbounded below)"};
    if (res.status != lp::Status::Optimal)
      return {false, "row " + format_point(b.points()[i]) + " implication LP " + lp::to_string(res.status)};
    if (res.objective < 1.0 - kImplied) {
      std::ostringstream os;
      os.precision(17);
      os << "row " << format_point(b.points()[i]) << " not implied: min value " << res.objective << " at alpha "
         << format_point(res.x);
      return {false, os.str()};
    }
  }
  return {true, {}};
}

GeneratorReport compare_generators(const FinitePointSet& a, const FinitePointSet& b) {
  const bool ea = polar_empty(a);
  const bool eb = polar_empty(b);
  if (ea && eb) return {true, {}};
  if (ea != eb) return {false, ea ? "first polar empty, second not" : "second polar empty, first not"};
  auto ab = polar_included(a, b);
  if (!ab.equal) return {false, "second set: " + ab.detail};
  auto ba = polar_included(b, a);
  if (!ba.equal) return {false, "first set: " + ba.detail};
  return {true, {}};
}

bool generator_equal(const FinitePointSet& a, const FinitePointSet& b) { return compare_generators(a, b).equal; }

FinitePointSet shadow_sample(const FinitePointSet& ps, const std::vector<double>& scales) {
  std::vector<Point> out;
  for (double t : scales) {
    if (!(t >= 1.0)) throw InputError("shadow_sample: scales must be >= 1");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      Point p = ps.xbar();
      const Point r = ps.centered(i);
      for (std::size_t k = 0; k < p.size(); ++k) p[k] += t * r[k];
      bool dup = false;
      for (const auto& q : out) dup = dup || distance(p, q) <= kDistinct;
      if (!dup) out.push_back(std::move(p));
    }
  }
  return FinitePointSet(std::move(out), ps.xbar());
}

std::optional<LabCheck> parse_lab_check(std::string_view name) {
  if (name == "visible") return LabCheck::Visible;
  if (name == "shadow") return LabCheck::Shadow;
  if (name == "smallest-inter") return LabCheck::SmallestInter;
  if (name == "smallest-closed") return LabCheck::SmallestClosed;
  return std::nullopt;
}

std::string to_string(LabCheck c) {
  switch (c) {
    case LabCheck::Visible: return "visible";
    case LabCheck::Shadow: return "shadow";
    case LabCheck::SmallestInter: return "smallest-inter";
    case LabCheck::SmallestClosed: return "smallest-closed";
  }
  return "unknown";
}

LabOutcome run_lab_check(LabCheck check, const FinitePointSet& ps, std::mt19937_64& rng,
                         const std::optional<FinitePointSet>& claimed) {
  LabOutcome out;
  out.polar_empty = polar_empty(ps);
  if (claimed) {
    out.candidate = *claimed;
  } else {
    switch (check) {
      case LabCheck::Visible: out.candidate = radial_visible_subset(ps); break;
      case LabCheck::Shadow: {
        std::uniform_real_distribution<double> scale(1.0, 5.0);
        std::vector<double> scales{1.0};
        const int extra = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < extra; ++k) scales.push_back(scale(rng));
        out.candidate = shadow_sample(ps, scales);
        break;
      }
      case LabCheck::SmallestInter: out.candidate = hull_visible_subset(ps); break;
      case LabCheck::SmallestClosed: out.candidate = intersect(hull_visible_subset(ps), hull_vertices(ps)); break;
    }
  }
  const auto report = compare_generators(ps, out.candidate);
  out.pass = report.equal;
  out.detail = report.detail;
  return out;
}

FinitePointSet random_lab_set(LabCheck check, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = 2 + rng() % 3;
  const std::size_t m = 5 + rng() % 26;
  const bool hull_check = check == LabCheck::SmallestInter || check == LabCheck::SmallestClosed;
  const bool halfspace = hull_check || unit(rng) < 0.5;
  Point u(n);
  for (auto& c : u) c = gauss(rng);
  const double un = norm(u);
  for (auto& c : u) c /= un;

  std::vector<Point> pts;
  while (pts.size() < m) {
    Point p(n);
    if (!pts.empty() && unit(rng) < 0.25) {
      const Point& base = pts[rng() % pts.size()];
      const double t = 1.2 + 1.8 * unit(rng);
      for (std::size_t k = 0; k < n; ++k) p[k] = t * base[k];
      if (std::any_of(p.begin(), p.end(), [](double v) { return std::abs(v) > 3.0; })) continue;
    } else {
      for (auto& c : p) c = coord(rng);
      if (norm(p) < 0.1) continue;
      if (halfspace && dot(u, p) < 0.2) continue;
    }
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && distance(p, q) > 1e-6;
    if (fresh) pts.push_back(std::move(p));
  }
  return FinitePointSet(std::move(pts), n);
}

}  // namespace visicut
