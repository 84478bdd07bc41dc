#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "visicut/error.hpp"
#include "visicut/multipoly.hpp"
#include "visicut/unipoly.hpp"

namespace visicut {

/// Raised by sos_decompose when p takes negative values on [0, 1].
class NotNonnegativeError : public InputError {
 public:
  NotNonnegativeError() : InputError("not nonnegative") {}
};

enum class Parity { Even, Odd };

/// Weighted sum-of-squares representation of a polynomial on [0, 1]:
///   even (degree 2d):   p = s1^2 + lambda (1 - lambda) s2^2,  deg s1 <= d, deg s2 <= d - 1
///   odd  (degree 2d+1): p = lambda s1^2 + (1 - lambda) s2^2,  deg s1, s2 <= d
struct SosCertificate {
  Parity parity = Parity::Even;
  int d = 0;
  UniPoly s1;
  UniPoly s2;

  [[nodiscard]] UniPoly expand() const;
};

/// Builds a certificate for p >= 0 on [0, 1]. `degree_bound` selects the
/// parity and d (it must be >= deg p); by default it is deg p.
SosCertificate sos_decompose(const UniPoly& p, int degree_bound = -1);

/// Max-norm coefficient difference between p and the certificate expansion.
double verify_certificate(const UniPoly& p, const SosCertificate& cert);

struct GramTerm {
  enum class Matrix { A, B };
  Matrix matrix;
  int i;
  int j;
  double coeff;
};

/// taylor[power] == sum coeff * M(i, j)
struct GramEquation {
  int power;
  std::vector<GramTerm> terms;
};

/// Linear system tying the Taylor coefficients of p_x at 0 to entries of
/// the Gram matrices A and B in the extended formulation.
struct GramSystem {
  Parity parity = Parity::Even;
  int d = 0;
  int size_a = 0;
  int size_b = 0;
  std::vector<GramEquation> equations;

  /// Largest absolute equation residual.
  [[nodiscard]] double residual(std::span<const double> taylor, const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B) const;
};

/// The system for deg(g) and the Taylor coefficients p_x^(k)(0)/k!,
/// padded with zeros up to deg(g).
std::pair<GramSystem, std::vector<double>> gram_system(const MultiPoly& g, std::span<const double> xbar,
                                                        std::span<const double> x);

struct GramWitness {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  [[nodiscard]] double min_eigenvalue() const;
};

/// Rank-one Gram matrices certifying x in the relaxation, or nullopt when
/// p_x is negative somewhere on [0, 1]. Throws InputError if g(x) is off the
/// surface.
std::optional<GramWitness> gram_witness(const MultiPoly& g, std::span<const double> xbar, std::span<const double> x);

}  // namespace visicut
