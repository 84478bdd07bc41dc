#include "visicut/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "visicut/error.hpp"

namespace visicut {

namespace {

constexpr double kRootTol = 1e-12;     // root decisions, relative to coefficient scale
constexpr double kGcdTol = 1e-9;       // remainder treated as zero in gcd
constexpr double kChainChop = 1e-14;   // roundoff floor inside a Sturm chain
constexpr double kNonnegTol = 1e-10;
constexpr double kRootWidth = 1e-12;

// Sum |c_i| |t|^i; scale of the rounding error of evaluating p at t.
double eval_scale(const UniPoly& p, double t) {
  double s = 0.0;
  double tp = 1.0;
  for (double c : p.coeffs()) {
    s += std::abs(c) * tp;
    tp *= std::max(1.0, std::abs(t));
  }
  return s;
}

int sign_variations(const std::vector<UniPoly>& chain, double t) {
  int changes = 0;
  int prev = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const double v = chain[i](t);
    int s = 0;
    if (i == 0) {
      if (std::abs(v) > kRootTol * eval_scale(chain[0], t)) s = v > 0 ? 1 : -1;
    } else if (v != 0.0) {
      s = v > 0 ? 1 : -1;
    }
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

UniPoly::UniPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

UniPoly UniPoly::monomial(int power, double c) {
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

double UniPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double UniPoly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return UniPoly(std::move(d));
}

UniPoly UniPoly::chopped(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<double> v = coeffs_;
  for (double& c : v)
    if (std::abs(c) <= cut) c = 0.0;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::normalized() const {
  const double m = max_abs_coeff();
  if (m == 0.0) return *this;
  return *this * (1.0 / m);
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(v));
}

DivResult divide(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw InputError("polynomial division by zero");
  const int dn = num.degree();
  const int dd = den.degree();
  if (dn < dd) return {UniPoly{}, num};
  std::vector<double> r = num.coeffs();
  std::vector<double> q(static_cast<std::size_t>(dn - dd) + 1, 0.0);
  const double lead = den.leading();
  for (int k = dn - dd; k >= 0; --k) {
    const double f = r[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= f * den.coeff(j);
    r[static_cast<std::size_t>(k + dd)] = 0.0;
  }
  r.resize(static_cast<std::size_t>(dd));
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.normalized();
  UniPoly y = b.normalized();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (true) {
    UniPoly r = divide(x, y).remainder;
    if (r.max_abs_coeff() <= kGcdTol) return y;
    x = std::move(y);
    y = r.normalized();
  }
}

UniPoly square_free_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.normalized();
  const UniPoly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p.normalized();
  return divide(p, g).quotient.normalized();
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.normalized());
  UniPoly d = p.derivative().normalized();
  if (d.is_zero()) return chain;
  chain.push_back(std::move(d));
  while (chain.back().degree() > 0) {
    const auto& prev = chain[chain.size() - 2];
    UniPoly r = divide(prev, chain.back()).remainder.chopped(kChainChop);
    if (r.max_abs_coeff() <= kChainChop * prev.max_abs_coeff()) break;
    chain.push_back((r * -1.0).normalized());
  }
  return chain;
}

int sturm_count(const UniPoly& p, double a, double b) {
  if (p.is_zero()) throw InputError("sturm_count: zero polynomial");
  if (!(a < b)) throw InputError("sturm_count: empty interval");
  const auto chain = sturm_chain(square_free_part(p));
  return sign_variations(chain, a) - sign_variations(chain, b);
}

Deflated deflate_at_zero(const UniPoly& p) {
  if (p.is_zero()) throw InputError("deflate_at_zero: zero polynomial");
  const double cut = kRootTol * p.max_abs_coeff();
  int k = 0;
  while (std::abs(p.coeff(k)) <= cut) ++k;
  std::vector<double> q(p.coeffs().begin() + k, p.coeffs().end());
  return {UniPoly(std::move(q)), k};
}

bool is_positive_on_unit_halfopen(const UniPoly& p) {
  if (p.is_zero()) return false;
  const Deflated d = deflate_at_zero(p);
  // Sign just right of 0 is the sign of q(0).
  if (d.quotient.coeff(0) <= 0.0) return false;
  if (d.quotient.degree() == 0) return true;
  return sturm_count(d.quotient, 0.0, 1.0) == 0;
}

bool is_nonnegative_on_unit(const UniPoly& p) {
  if (p.is_zero()) return true;
  const double tol = kNonnegTol * p.max_abs_coeff();
  if (p(0.0) < -tol || p(1.0) < -tol) return false;
  if (p.degree() <= 0) return true;
  std::vector<double> breaks{0.0};
  for (const auto& r : real_roots(p, 0.0, 1.0)) breaks.push_back(r.value);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] - breaks[i] <= 1e-9) continue;
    if (p(0.5 * (breaks[i] + breaks[i + 1])) < -tol) return false;
  }
  return true;
}

std::vector<RealRoot> real_roots(const UniPoly& p, double a, double b) {
  if (p.is_zero()) throw InputError("real_roots: zero polynomial");
  std::vector<RealRoot> out;
  if (p.degree() == 0 || a > b) return out;
  const UniPoly sqf = square_free_part(p);
  const auto chain = sturm_chain(sqf);

  std::vector<double> found;
  if (std::abs(sqf(a)) <= kRootTol * eval_scale(sqf, a)) found.push_back(a);
  if (a < b) {
    // Isolate roots of the square-free part in (lo, hi] by Sturm bisection.
    std::function<void(double, double, int)> isolate = [&](double lo, double hi, int count) {
      if (count <= 0) return;
      if (hi - lo <= kRootWidth) {
        found.push_back(0.5 * (lo + hi));
        return;
      }
      const double mid = 0.5 * (lo + hi);
      const int left = sign_variations(chain, lo) - sign_variations(chain, mid);
      isolate(lo, mid, left);
      isolate(mid, hi, count - left);
    };
    isolate(a, b, sign_variations(chain, a) - sign_variations(chain, b));
  }

  // Multiplicity: number of successive gcds g_i = gcd(g_{i-1}, g_{i-1}') vanishing at the root.
  std::vector<UniPoly> gcds;
  for (UniPoly g = p; g.degree() >= 1;) {
    g = gcd(g, g.derivative());
    if (g.degree() < 1) break;
    gcds.push_back(g);
  }
  for (double r : found) {
    int mult = 1;
    for (const auto& g : gcds) {
      if (std::abs(g(r)) > 1e-6 * eval_scale(g, r)) break;
      ++mult;
    }
    out.push_back({r, mult});
  }
  return out;
}

std::vector<std::complex<double>> complex_roots(const UniPoly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / p.leading();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("complex_roots: eigen solver failed");
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

}  // namespace visicut
