#include "visicut/visibility.hpp"

#include <cmath>
#include <string>

#include "visicut/error.hpp"

namespace visicut {

namespace {

// Upper bound of |g| over the box: sum |c| prod max(|lo|,|hi|)^e.
double magnitude_over(const MultiPoly& g, const IntervalVector& box) {
  double s = 0.0;
  for (const auto& t : g.terms()) {
    double v = std::abs(t.coeff);
    for (std::size_t i = 0; i < box.size(); ++i)
      if (t.exponents[i] != 0) v *= std::pow(box[i].mag(), t.exponents[i]);
    s += v;
  }
  return s;
}

// p_x with the constant term (= g(x), inside the surface band) set to zero.
UniPoly surface_segment_poly(const ProblemInstance& inst, std::span<const double> x) {
  std::vector<double> c = inst.g().restrict_to_segment(x, inst.xbar()).coeffs();
  if (!c.empty()) c[0] = 0.0;
  return UniPoly(std::move(c));
}

void require_in_domain(const ProblemInstance& inst, std::span<const double> x) {
  if (x.size() != inst.dim()) throw InputError("point dimension mismatch");
  if (!inst.domain().contains(x)) throw InputError("outside domain");
}

}  // namespace

double LinearConstraint::violation(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return sense == Sense::LessEqual ? s - rhs : rhs - s;
}

Interval LinearConstraint::slack_range(const IntervalVector& box) const {
  Interval s{-rhs, -rhs};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * box[i];
  return s;
}

ConvexDomain::ConvexDomain(IntervalVector box, std::vector<LinearConstraint> linear)
    : box_(std::move(box)), linear_(std::move(linear)) {
  if (box_.empty()) throw InputError("domain box must have at least one coordinate");
  for (const auto& row : linear_) {
    if (row.a.size() != box_.size()) throw InputError("linear constraint has wrong length");
    for (double v : row.a)
      if (!std::isfinite(v)) throw InputError("non-finite linear coefficient");
    if (!std::isfinite(row.rhs)) throw InputError("non-finite right-hand side");
  }
}

bool ConvexDomain::contains(std::span<const double> x, double tol) const {
  if (!box_.contains(x, tol)) return false;
  for (const auto& row : linear_)
    if (row.violation(x) > tol) return false;
  return true;
}

bool ConvexDomain::excludes(const IntervalVector& box) const {
  for (const auto& row : linear_) {
    const Interval r = row.slack_range(box);
    if (row.sense == Sense::LessEqual ? r.lo > 1e-9 : r.hi < -1e-9) return true;
  }
  return false;
}

ProblemInstance::ProblemInstance(MultiPoly g, ConvexDomain domain, Point xbar)
    : g_(std::move(g)), domain_(std::move(domain)), xbar_(std::move(xbar)) {
  if (g_.num_vars() != domain_.dim() || xbar_.size() != domain_.dim())
    throw InputError("instance: dimension mismatch between g, domain and xbar");
  for (double v : xbar_)
    if (!std::isfinite(v)) throw InputError("instance: non-finite xbar");
  if (!domain_.contains(xbar_)) throw InputError("instance: xbar lies outside the domain");
  const double gx = g_.eval(xbar_);
  if (!(gx > 0.0)) throw InputError("instance: g(xbar) must be positive, got " + std::to_string(gx));
  surface_tol_ = 1e-9 * (1.0 + magnitude_over(g_, domain_.box()));
}

double Halfspace::value(std::span<const double> x) const {
  double s = beta;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * x[i];
  return s;
}

bool is_visible(const ProblemInstance& inst, std::span<const double> x) {
  require_in_domain(inst, x);
  if (std::abs(inst.g().eval(x)) > inst.surface_tol()) return false;
  return is_positive_on_unit_halfopen(surface_segment_poly(inst, x));
}

bool in_relaxation(const ProblemInstance& inst, std::span<const double> x) {
  require_in_domain(inst, x);
  if (std::abs(inst.g().eval(x)) > inst.surface_tol()) return false;
  return is_nonnegative_on_unit(surface_segment_poly(inst, x));
}

Halfspace polar_halfspace(const MultiPoly& g, std::span<const double> xbar) {
  if (g.degree() > 2) throw InputError("polar_halfspace: g has degree > 2");
  if (xbar.size() != g.num_vars()) throw InputError("polar_halfspace: dimension mismatch");
  const QuadraticForm f = quadratic_form(g);
  const std::size_t n = g.num_vars();
  Halfspace h{std::vector<double>(n, 0.0), 2.0 * f.c};
  for (std::size_t i = 0; i < n; ++i) {
    double qx = 0.0;
    for (std::size_t j = 0; j < n; ++j) qx += f.Q[i][j] * xbar[j];
    h.alpha[i] = 2.0 * qx + f.b[i];
    h.beta += f.b[i] * xbar[i];
  }
  return h;
}

MultiPoly visibility_gradient_condition(const MultiPoly& g, std::span<const double> xbar) {
  const std::size_t n = g.num_vars();
  MultiPoly h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly dir = MultiPoly::constant(n, xbar[i]) - MultiPoly::variable(n, i);
    h += g.partial(i) * dir;
  }
  return h;
}

RegionDescription region_description(const ProblemInstance& inst) {
  if (inst.g().degree() <= 2)
    return {RegionKind::ExactQuadratic, inst.g(), polar_halfspace(inst.g(), inst.xbar()), inst.domain()};
  return {RegionKind::GradientRelaxation, inst.g(), visibility_gradient_condition(inst.g(), inst.xbar()),
          inst.domain()};
}

}  // namespace visicut
