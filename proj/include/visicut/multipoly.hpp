#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "visicut/interval.hpp"
#include "visicut/unipoly.hpp"

namespace visicut {

using Point = std::vector<double>;

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;

  [[nodiscard]] int degree() const;
};

/// Sparse polynomial in n >= 1 variables. Terms are merged, zero
/// coefficients dropped, and the list kept in graded-lex order, so two
/// polynomials are equal iff their term lists are.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t num_vars);
  MultiPoly(std::size_t num_vars, std::vector<Monomial> terms);

  static MultiPoly constant(std::size_t num_vars, double c);
  static MultiPoly variable(std::size_t num_vars, std::size_t index, double c = 1.0);

  [[nodiscard]] std::size_t num_vars() const { return n_; }
  [[nodiscard]] const std::vector<Monomial>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Max total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  [[nodiscard]] double coefficient(std::span<const int> exponents) const;
  [[nodiscard]] double max_abs_coeff() const;

  [[nodiscard]] double eval(std::span<const double> x) const;
  /// Natural interval extension, padded by 1e-12 * (1 + |bound|).
  [[nodiscard]] Interval eval(const IntervalVector& box) const;

  [[nodiscard]] MultiPoly partial(std::size_t index) const;
  [[nodiscard]] std::vector<MultiPoly> gradient() const;

  /// p(lambda) = g(x + lambda (xbar - x)) by exact binomial expansion.
  [[nodiscard]] UniPoly restrict_to_segment(std::span<const double> x, std::span<const double> xbar) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator*=(double s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a += b * -1.0; }
  friend MultiPoly operator*(MultiPoly a, double s) { return a *= s; }
  friend MultiPoly operator*(double s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void canonicalize();
  void check_dim(std::size_t m) const;

  std::size_t n_;
  std::vector<Monomial> terms_;
};

/// g(x) = x^T Q x + b^T x + c with Q symmetric.
struct QuadraticForm {
  std::vector<std::vector<double>> Q;
  std::vector<double> b;
  double c = 0.0;
};

/// Throws InputError if deg(g) > 2.
QuadraticForm quadratic_form(const MultiPoly& g);

}  // namespace visicut
