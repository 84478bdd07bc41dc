#include "visicut/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "visicut/error.hpp"

namespace visicut {

namespace {

AffineFunction constant_affine(std::size_t n, double c) { return {std::vector<double>(n, 0.0), c}; }

AffineFunction variable_affine(std::size_t n, std::size_t i) {
  AffineFunction f = constant_affine(n, 0.0);
  f.a[i] = 1.0;
  return f;
}

// s * f + t * g + c
AffineFunction combine(double s, const AffineFunction& f, double t, const AffineFunction& g, double c) {
  AffineFunction out{std::vector<double>(f.a.size()), s * f.b + t * g.b + c};
  for (std::size_t i = 0; i < f.a.size(); ++i) out.a[i] = s * f.a[i] + t * g.a[i];
  return out;
}

bool lex_less(const AffineFunction& x, const AffineFunction& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

AffineFunction select_facet(const std::vector<AffineFunction>& cands, std::span<const double> xbar, bool under) {
  const AffineFunction* best = nullptr;
  double best_val = 0.0;
  for (const auto& c : cands) {
    const double v = c(xbar);
    if (!best) {
      best = &c;
      best_val = v;
      continue;
    }
    const double tol = 1e-12 * (1.0 + std::abs(best_val));
    const bool better = under ? v > best_val + tol : v < best_val - tol;
    const bool tie = std::abs(v - best_val) <= tol;
    if (better || (tie && lex_less(c, *best))) {
      best = &c;
      best_val = v;
    }
  }
  return *best;
}

// Affine under- (or over-) estimator of the monomial prod x_i^e_i over the box.
AffineFunction estimate(const std::vector<int>& exps, const IntervalVector& box, std::span<const double> xbar, bool under) {
  const std::size_t n = exps.size();
  int deg = 0;
  for (int e : exps) deg += e;
  if (deg == 0) return constant_affine(n, 1.0);
  if (deg == 1) {
    const auto it = std::find(exps.begin(), exps.end(), 1);
    return variable_affine(n, static_cast<std::size_t>(it - exps.begin()));
  }
  // Split x_i * w and apply McCormick to the product with w's interval bounds,
  // substituting an affine estimator of w in the direction its coefficient needs.
  std::vector<AffineFunction> cands;
  for (std::size_t i = 0; i < n; ++i) {
    if (exps[i] == 0) continue;
    std::vector<int> rest = exps;
    --rest[i];
    Interval wb{1.0, 1.0};
    for (std::size_t k = 0; k < n; ++k)
      if (rest[k] != 0) wb = wb * pow(box[k], rest[k]);
    const double l = box[i].lo;
    const double u = box[i].hi;
    const AffineFunction xi = variable_affine(n, i);
    // Facets k_x * x_i + k_w * w + c.
    struct Facet {
      double kx, kw, c;
    };
    std::vector<Facet> facets;
    if (under) {
      facets = {{wb.lo, l, -l * wb.lo}, {wb.hi, u, -u * wb.hi}};
    } else {
      facets = {{wb.hi, l, -l * wb.hi}, {wb.lo, u, -u * wb.lo}};
    }
    for (const auto& f : facets) {
      const bool w_under = (f.kw >= 0.0) == under;
      const AffineFunction w = estimate(rest, box, xbar, w_under);
      cands.push_back(combine(f.kx, xi, f.kw, w, f.c));
    }
  }
  return select_facet(cands, xbar, under);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double AffineFunction::operator()(std::span<const double> x) const {
  double s = b;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

Interval AffineFunction::range(const IntervalVector& box) const {
  Interval s{b, b};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * box[i];
  return s;
}

double Cut::lhs(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * (x[i] - xbar[i]);
  return s;
}

double Cut::raw_rhs() const {
  double s = rhs;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * xbar[i];
  return s;
}

std::string Cut::to_string() const {
  std::ostringstream os;
  os << fmt(raw_rhs()) << " <=";
  bool first = true;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    os << (first ? " " : (alpha[i] < 0 ? " - " : " + "));
    if (first && alpha[i] < 0) os << "-";
    os << fmt(std::abs(alpha[i])) << "*x" << (i + 1);
    first = false;
  }
  if (first) os << " 0";
  return os.str();
}

AffineFunction mccormick_under(const MultiPoly& g, const IntervalVector& box, std::span<const double> xbar) {
  const std::size_t n = g.num_vars();
  if (box.size() != n || xbar.size() != n) throw InputError("mccormick_under: dimension mismatch");
  for (const auto& t : g.terms())
    if (t.degree() > 3) {
      Monomial m = t;
      m.coeff = 1.0;
      throw InputError("mccormick_under: unsupported monomial degree " + std::to_string(t.degree()) + " in term " +
                       MultiPoly(n, {m}).to_string());
    }
  AffineFunction acc = constant_affine(n, 0.0);
  for (const auto& t : g.terms()) {
    const AffineFunction est = estimate(t.exponents, box, xbar, t.coeff > 0.0);
    acc = combine(1.0, acc, t.coeff, est, 0.0);
  }
  return acc;
}

std::optional<Cut> gradient_cut(const MultiPoly& g, const IntervalVector& domain, std::span<const double> xbar) {
  const AffineFunction L = mccormick_under(g, domain, xbar);
  const double at_xbar = L(xbar);
  if (at_xbar <= 1e-9) return std::nullopt;
  Cut cut{std::vector<double>(L.a.size()), 1.0, Point(xbar.begin(), xbar.end())};
  for (std::size_t i = 0; i < L.a.size(); ++i) cut.alpha[i] = -L.a[i] / at_xbar;
  return cut;
}

std::string to_string(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::Valid: return "valid";
    case ValidationStatus::Violated: return "violated";
    case ValidationStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

ValidationReport validate_cut(const Cut& cut, const ProblemInstance& inst, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("validate_cut: samples must be >= 1");
  if (cut.alpha.size() != inst.dim()) throw InputError("validate_cut: dimension mismatch");
  std::mt19937_64 rng(seed);
  const auto& box = inst.domain().box();
  std::vector<std::uniform_real_distribution<double>> coord;
  for (const auto& c : box) coord.emplace_back(c.lo, c.hi);

  ValidationReport rep;
  Point x(inst.dim());
  const long max_draws = 50L * samples;
  for (long draw = 0; draw < max_draws && rep.feasible_samples < samples; ++draw) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = coord[i](rng);
    if (!inst.domain().contains(x, 0.0) || inst.g().eval(x) > 0.0) continue;
    ++rep.feasible_samples;
    const double v = cut.violation(x);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst = x;
    }
  }
  if (rep.feasible_samples < 10)
    rep.status = ValidationStatus::Inconclusive;
  else
    rep.status = rep.max_violation <= 1e-7 ? ValidationStatus::Valid : ValidationStatus::Violated;
  return rep;
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::FirstDominates: return "c1_dominates";
    case Dominance::SecondDominates: return "c2_dominates";
    case Dominance::Incomparable: return "incomparable";
  }
  return "unknown";
}

Dominance compare_cuts(const Cut& c1, const Cut& c2, const IntervalVector& box, int samples, std::uint64_t seed) {
  const std::size_t n = c1.alpha.size();
  if (c2.alpha.size() != n || box.size() != n) throw InputError("compare_cuts: dimension mismatch");
  // diff(x) = (lhs1 - rhs1) - (lhs2 - rhs2), affine in x.
  AffineFunction diff{std::vector<double>(n), -c1.raw_rhs() + c2.raw_rhs()};
  for (std::size_t i = 0; i < n; ++i) diff.a[i] = c1.alpha[i] - c2.alpha[i];
  const Interval r = diff.range(box);
  const double tol = 1e-12 * (1.0 + r.mag());

  Dominance verdict = Dominance::Incomparable;
  if (r.hi <= tol)
    verdict = Dominance::FirstDominates;
  else if (r.lo >= -tol)
    verdict = Dominance::SecondDominates;

  // Sampling confirmation: no sampled point may contradict the verdict.
  std::mt19937_64 rng(seed);
  Point x(n);
  for (int s = 0; s < samples && verdict != Dominance::Incomparable; ++s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::uniform_real_distribution<double>(box[i].lo, box[i].hi)(rng);
    const bool v1 = c1.violation(x) > 0.0;
    const bool v2 = c2.violation(x) > 0.0;
    if (verdict == Dominance::FirstDominates && v2 && !v1 && c2.violation(x) > tol) verdict = Dominance::Incomparable;
    if (verdict == Dominance::SecondDominates && v1 && !v2 && c1.violation(x) > tol) verdict = Dominance::Incomparable;
  }
  return verdict;
}

}  // namespace visicut
