#pragma once

// Independent checks used by the unit and acceptance tests. Nothing here
// calls the decision procedures under test: visibility is decided by dense
// lambda scans, root counts by sign changes on grids, Gram systems by direct
// polynomial expansion.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "visicut/multipoly.hpp"
#include "visicut/unipoly.hpp"
#include "visicut/visibility.hpp"

namespace oracle {

using visicut::MultiPoly;
using visicut::Point;
using visicut::UniPoly;

inline double horner(const std::vector<double>& c, double t) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

/// g at x + lambda (xbar - x), evaluated pointwise.
inline double on_segment(const MultiPoly& g, const Point& x, const Point& xbar, double lambda) {
  Point y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + lambda * (xbar[i] - x[i]);
  return g.eval(y);
}

/// Visible by scanning g on the open segment: min over lambda_k = k/n, k = 1..n.
inline double segment_min(const MultiPoly& g, const Point& x, const Point& xbar, int n = 20000) {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) m = std::min(m, on_segment(g, x, xbar, static_cast<double>(k) / n));
  return m;
}

/// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const MultiPoly& g, const Point& x, double h = 1e-6) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Point a = x;
    Point b = x;
    a[i] += h;
    b[i] -= h;
    out[i] = (g.eval(a) - g.eval(b)) / (2.0 * h);
  }
  return out;
}

/// Sign changes of p between consecutive nodes a + (b - a) (k + offset) / n.
/// A node where p is exactly zero counts as one root.
inline int grid_root_count(const std::vector<double>& c, double a, double b, int n, double offset = 0.0) {
  int count = 0;
  double prev = horner(c, a);
  for (int k = 1; k <= n; ++k) {
    const double t = k == n ? b : a + (b - a) * (k + offset) / n;
    const double v = horner(c, t);
    if (v == 0.0) {
      ++count;
      prev = 0.0;
      continue;
    }
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++count;
    prev = v;
  }
  return count;
}

/// Even: lambda^2 L^T A L + lambda (1 - lambda) L^T B L, L = (1, lambda, ..., lambda^(d-1)).
/// Odd:  lambda L^T A L + lambda^2 (1 - lambda) L^T B L, A over (1, ..., lambda^d).
inline std::vector<double> gram_expand(bool odd, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  std::vector<double> c(static_cast<std::size_t>(A.rows() + B.rows() + 4), 0.0);
  auto add = [&](std::size_t power, double v) { c[power] += v; };
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) add(static_cast<std::size_t>(i + j + (odd ? 1 : 2)), A(i, j));
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      const auto base = static_cast<std::size_t>(i + j + (odd ? 2 : 1));
      add(base, B(i, j));
      add(base + 1, -B(i, j));
    }
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

inline Point random_direction(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  Point d(n);
  double s = 0.0;
  for (auto& v : d) {
    v = gauss(rng);
    s += v * v;
  }
  for (auto& v : d) v /= std::sqrt(s);
  return d;
}

/// Largest t with x + t d inside the domain (box and linear rows).
inline double ray_exit(const visicut::ConvexDomain& dom, const Point& x, const Point& d) {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] > 0.0) t = std::min(t, (dom.box()[i].hi - x[i]) / d[i]);
    if (d[i] < 0.0) t = std::min(t, (dom.box()[i].lo - x[i]) / d[i]);
  }
  for (const auto& row : dom.linear()) {
    double ad = 0.0;
    double ax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      ad += row.a[i] * d[i];
      ax += row.a[i] * x[i];
    }
    const double sgn = row.sense == visicut::Sense::LessEqual ? 1.0 : -1.0;
    if (sgn * ad > 0.0) t = std::min(t, (row.rhs - ax) / ad);
  }
  return std::max(0.0, t);
}

/// Sign changes of g along the ray from xbar inside the domain, each refined
/// by bisection. The first one is the first surface hit.
inline std::vector<Point> ray_crossings(const visicut::ProblemInstance& inst, const Point& d, int steps = 4000) {
  const auto& g = inst.g();
  const Point& xb = inst.xbar();
  const double tmax = ray_exit(inst.domain(), xb, d) * (1.0 - 1e-12);
  auto at = [&](double t) {
    Point y(xb.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = xb[i] + t * d[i];
    return y;
  };
  std::vector<Point> out;
  double t0 = 0.0;
  double v0 = g.eval(at(0.0));
  for (int k = 1; k <= steps; ++k) {
    const double t1 = tmax * k / steps;
    const double v1 = g.eval(at(t1));
    if ((v0 > 0.0) != (v1 > 0.0)) {
      double lo = t0;
      double hi = t1;
      const bool lo_pos = v0 > 0.0;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((g.eval(at(mid)) > 0.0) == lo_pos)
          lo = mid;
        else
          hi = mid;
      }
      const double glo = std::abs(g.eval(at(lo)));
      const double ghi = std::abs(g.eval(at(hi)));
      out.push_back(at(glo <= ghi ? lo : hi));
    }
    t0 = t1;
    v0 = v1;
  }
  return out;
}

/// Random quadratic g in n variables (coefficients in [-2, 2]), box with
/// lo in [-3, -0.5], hi in [0.5, 3], occasionally one linear row, and xbar
/// inside with g(xbar) >= 0.1 (g is negated when needed).
inline visicut::ProblemInstance random_quadratic_instance(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> lo_d(-3.0, -0.5);
  std::uniform_real_distribution<double> hi_d(0.5, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<visicut::Monomial> terms;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        std::vector<int> e(n, 0);
        ++e[i];
        ++e[j];
        terms.push_back({coef(rng), e});
      }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      terms.push_back({coef(rng), e});
    }
    terms.push_back({coef(rng), std::vector<int>(n, 0)});
    MultiPoly g(n, terms);
    std::vector<double> lo(n);
    std::vector<double> hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = lo_d(rng);
      hi[i] = hi_d(rng);
    }
    Point xb(n);
    for (std::size_t i = 0; i < n; ++i) xb[i] = lo[i] + (hi[i] - lo[i]) * (0.2 + 0.6 * unit(rng));
    double gv = g.eval(xb);
    if (std::abs(gv) < 0.1) continue;
    if (gv < 0.0) g *= -1.0;
    std::vector<visicut::LinearConstraint> linear;
    if (unit(rng) < 0.3) {
      const Point a = random_direction(rng, n);
      double ax = 0.0;
      for (std::size_t i = 0; i < n; ++i) ax += a[i] * xb[i];
      linear.push_back({a, visicut::Sense::LessEqual, ax + 0.5 + unit(rng)});
    }
    return visicut::ProblemInstance(g, visicut::ConvexDomain(visicut::IntervalVector(lo, hi), linear), xb);
  }
}

}  // namespace oracle
