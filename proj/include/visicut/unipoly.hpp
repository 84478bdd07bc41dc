#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace visicut {

/// Dense univariate polynomial; coeffs()[i] multiplies lambda^i.
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients and degree() == -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<double> coeffs);
  UniPoly(std::initializer_list<double> coeffs);

  static UniPoly constant(double c) { return UniPoly({c}); }
  static UniPoly monomial(int power, double c = 1.0);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] double coeff(int i) const;
  [[nodiscard]] double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  [[nodiscard]] double max_abs_coeff() const;

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] UniPoly derivative() const;

  /// Drops coefficients with |c| <= rel_tol * max|c|.
  [[nodiscard]] UniPoly chopped(double rel_tol) const;
  /// Divides by max|c|; the zero polynomial is returned unchanged.
  [[nodiscard]] UniPoly normalized() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(double s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, double s) { return a *= s; }
  friend UniPoly operator*(double s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<double> coeffs_;
};

struct DivResult {
  UniPoly quotient;
  UniPoly remainder;
};

/// Euclidean division; the remainder is chopped relative to the dividend's scale.
DivResult divide(const UniPoly& num, const UniPoly& den);

/// Monic-free numerical gcd (normalized to max|c| = 1) by Euclid's algorithm.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// p / gcd(p, p'), normalized.
UniPoly square_free_part(const UniPoly& p);

/// Sturm chain of p (p, p', -rem, ...), each member normalized.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

/// Number of distinct real roots of p in (a, b]. Throws InputError for the
/// zero polynomial or a >= b.
int sturm_count(const UniPoly& p, double a, double b);

struct Deflated {
  UniPoly quotient;
  int power = 0;
};

/// p = lambda^power * quotient with quotient(0) != 0 (relative 1e-12).
Deflated deflate_at_zero(const UniPoly& p);

/// p > 0 on (0, 1]. The zero polynomial yields false.
bool is_positive_on_unit_halfopen(const UniPoly& p);

/// p >= 0 on [0, 1] up to 1e-10 * max|c|. The zero polynomial yields true.
bool is_nonnegative_on_unit(const UniPoly& p);

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots in [a, b] (bisection to width 1e-12) with multiplicities.
std::vector<RealRoot> real_roots(const UniPoly& p, double a, double b);

/// All complex roots from the companion matrix eigenvalues.
std::vector<std::complex<double>> complex_roots(const UniPoly& p);

}  // namespace visicut
