#include "visicut/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "visicut/error.hpp"

namespace visicut {

namespace {

// Graded order: lower total degree first, then x1-heavier first.
bool grlex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return a.exponents > b.exponents;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// (x0 + lambda * d)^e
UniPoly linear_power(double x0, double d, int e) {
  std::vector<double> c(static_cast<std::size_t>(e) + 1);
  for (int k = 0; k <= e; ++k) c[static_cast<std::size_t>(k)] = binomial(e, k) * std::pow(x0, e - k) * std::pow(d, k);
  return UniPoly(std::move(c));
}

}  // namespace

int Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

MultiPoly::MultiPoly(std::size_t num_vars) : n_(num_vars) {
  if (n_ == 0) throw InputError("polynomial needs at least one variable");
}

MultiPoly::MultiPoly(std::size_t num_vars, std::vector<Monomial> terms) : MultiPoly(num_vars) {
  terms_ = std::move(terms);
  for (const auto& t : terms_) {
    if (t.exponents.size() != n_) throw InputError("monomial exponent vector has wrong length");
    if (!std::isfinite(t.coeff)) throw InputError("non-finite coefficient");
    for (int e : t.exponents)
      if (e < 0) throw InputError("negative exponent");
  }
  canonicalize();
}

MultiPoly MultiPoly::constant(std::size_t num_vars, double c) {
  return MultiPoly(num_vars, {Monomial{c, std::vector<int>(num_vars, 0)}});
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index, double c) {
  std::vector<int> e(num_vars, 0);
  e.at(index) = 1;
  return MultiPoly(num_vars, {Monomial{c, std::move(e)}});
}

void MultiPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), grlex_less);
  std::vector<Monomial> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Monomial& m) { return m.coeff == 0.0; });
  terms_ = std::move(merged);
}

void MultiPoly::check_dim(std::size_t m) const {
  if (m != n_) throw InputError("dimension mismatch: polynomial has " + std::to_string(n_) + " variables, got " + std::to_string(m));
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

double MultiPoly::coefficient(std::span<const int> exponents) const {
  for (const auto& t : terms_)
    if (std::equal(t.exponents.begin(), t.exponents.end(), exponents.begin(), exponents.end())) return t.coeff;
  return 0.0;
}

double MultiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

double MultiPoly::eval(std::span<const double> x) const {
  check_dim(x.size());
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < n_; ++i)
      if (t.exponents[i] != 0) v *= std::pow(x[i], t.exponents[i]);
    acc += v;
  }
  return acc;
}

Interval MultiPoly::eval(const IntervalVector& box) const {
  check_dim(box.size());
  Interval acc{0.0, 0.0};
  for (const auto& t : terms_) {
    Interval v{1.0, 1.0};
    for (std::size_t i = 0; i < n_; ++i)
      if (t.exponents[i] != 0) v = v * pow(box[i], t.exponents[i]);
    acc += t.coeff * v;
  }
  acc.lo -= 1e-12 * (1.0 + std::abs(acc.lo));
  acc.hi += 1e-12 * (1.0 + std::abs(acc.hi));
  return acc;
}

MultiPoly MultiPoly::partial(std::size_t index) const {
  if (index >= n_) throw InputError("partial: variable index out of range");
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    const int e = t.exponents[index];
    if (e == 0) continue;
    Monomial m{t.coeff * e, t.exponents};
    m.exponents[index] = e - 1;
    out.push_back(std::move(m));
  }
  return MultiPoly(n_, std::move(out));
}

std::vector<MultiPoly> MultiPoly::gradient() const {
  std::vector<MultiPoly> g;
  g.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) g.push_back(partial(i));
  return g;
}

UniPoly MultiPoly::restrict_to_segment(std::span<const double> x, std::span<const double> xbar) const {
  check_dim(x.size());
  check_dim(xbar.size());
  UniPoly out;
  for (const auto& t : terms_) {
    UniPoly term = UniPoly::constant(t.coeff);
    for (std::size_t i = 0; i < n_; ++i)
      if (t.exponents[i] != 0) term = term * linear_power(x[i], xbar[i] - x[i], t.exponents[i]);
    out += term;
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_dim(o.n_);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
  for (auto& t : terms_) t.coeff *= s;
  canonicalize();
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_dim(b.n_);
  std::vector<Monomial> out;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Monomial m{s.coeff * t.coeff, s.exponents};
      for (std::size_t i = 0; i < a.n_; ++i) m.exponents[i] += t.exponents[i];
      out.push_back(std::move(m));
    }
  return MultiPoly(a.n_, std::move(out));
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].exponents != b.terms_[i].exponents) return false;
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const double c = t.coeff;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double ac = std::abs(c);
    const bool is_const = t.degree() == 0;
    if (ac != 1.0 || is_const) os << ac;
    bool need_star = ac != 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (t.exponents[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (t.exponents[i] > 1) os << "^" << t.exponents[i];
      need_star = true;
    }
  }
  return os.str();
}

QuadraticForm quadratic_form(const MultiPoly& g) {
  if (g.degree() > 2) throw InputError("quadratic_form: degree exceeds 2");
  const std::size_t n = g.num_vars();
  QuadraticForm f{std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)), std::vector<double>(n, 0.0), 0.0};
  for (const auto& t : g.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < t.exponents[i]; ++k) idx.push_back(i);
    if (idx.empty()) {
      f.c += t.coeff;
    } else if (idx.size() == 1) {
      f.b[idx[0]] += t.coeff;
    } else if (idx[0] == idx[1]) {
      f.Q[idx[0]][idx[0]] += t.coeff;
    } else {
      f.Q[idx[0]][idx[1]] += 0.5 * t.coeff;
      f.Q[idx[1]][idx[0]] += 0.5 * t.coeff;
    }
  }
  return f;
}

}  // namespace visicut
