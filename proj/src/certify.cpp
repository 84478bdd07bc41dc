#include "visicut/certify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace visicut {

namespace {

constexpr double kSnap = 1e-9;        // real roots this close to 0 or 1 are snapped
constexpr double kConjTol = 1e-7;

const UniPoly kLambda{0.0, 1.0};
const UniPoly kOneMinusLambda{1.0, -1.0};
const UniPoly kWeight{0.0, 1.0, -1.0};  // lambda (1 - lambda)

// a lambda + b (1 - lambda) with a, b >= 0: nonnegative on [0, 1].
struct LinearFactor {
  double a;
  double b;
  [[nodiscard]] UniPoly poly() const { return UniPoly{b, a - b}; }
};

// f^2 + lambda (1 - lambda) g^2
struct EvenForm {
  UniPoly f;
  UniPoly g;
};

// lambda f^2 + (1 - lambda) g^2
struct OddForm {
  UniPoly f;
  UniPoly g;
};

// q of degree <= 2, nonnegative on [0, 1], as (alpha lambda + beta)^2 + w gamma^2.
EvenForm quadratic_to_even(const UniPoly& q) {
  const double q0 = std::max(0.0, q.coeff(0));
  const double q1 = std::max(0.0, q(1.0));
  const double r0 = std::sqrt(q0);
  const double r1 = std::sqrt(q1);
  const double alpha = -(r0 + r1);
  const double gamma2 = std::max(0.0, alpha * alpha - q.coeff(2));
  return {UniPoly{r0, alpha}, UniPoly::constant(std::sqrt(gamma2))};
}

// Norm form is multiplicative: (f1 + g1 t)(f2 + g2 t) with t^2 = -w.
EvenForm multiply(const EvenForm& x, const EvenForm& y) {
  return {x.f * y.f - kWeight * x.g * y.g, x.f * y.g + x.g * y.f};
}

OddForm multiply(const EvenForm& e, const OddForm& o) {
  return {e.f * o.f + kOneMinusLambda * e.g * o.g, e.f * o.g - kLambda * e.g * o.f};
}

UniPoly positive_leading(const UniPoly& s) { return s.leading() < 0.0 ? s * -1.0 : s; }

// Polynomial of degree <= max_deg from a coefficient vector, dropping roundoff
// above the bound.
UniPoly clip_degree(const UniPoly& s, int max_deg) {
  if (s.degree() <= max_deg) return s;
  std::vector<double> c(s.coeffs().begin(), s.coeffs().begin() + std::max(0, max_deg + 1));
  return UniPoly(std::move(c));
}

}  // namespace

UniPoly SosCertificate::expand() const {
  if (parity == Parity::Even) return s1 * s1 + kWeight * s2 * s2;
  return kLambda * s1 * s1 + kOneMinusLambda * s2 * s2;
}

double verify_certificate(const UniPoly& p, const SosCertificate& cert) {
  return (p - cert.expand()).max_abs_coeff();
}

SosCertificate sos_decompose(const UniPoly& p, int degree_bound) {
  const int deg = std::max(p.degree(), 0);
  const int bound = degree_bound < 0 ? deg : degree_bound;
  if (bound < deg) throw InputError("sos_decompose: degree bound below polynomial degree");
  SosCertificate cert;
  cert.parity = bound % 2 == 0 ? Parity::Even : Parity::Odd;
  cert.d = cert.parity == Parity::Even ? bound / 2 : (bound - 1) / 2;
  if (p.is_zero()) return cert;
  if (!is_nonnegative_on_unit(p)) throw NotNonnegativeError();

  const Deflated defl = deflate_at_zero(p);
  const UniPoly& q = defl.quotient;

  std::vector<LinearFactor> linear(static_cast<std::size_t>(defl.power), LinearFactor{1.0, 0.0});
  std::vector<UniPoly> quadratics;
  std::vector<double> inside;
  double scale = q.leading();

  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> lower;
  for (const auto& z : complex_roots(q)) {
    if (z.imag() > 0.0) {
      upper.push_back(z);
    } else if (z.imag() < 0.0) {
      lower.push_back(z);
    } else {
      double r = z.real();
      if (std::abs(r) <= kSnap) r = 0.0;
      if (std::abs(r - 1.0) <= kSnap) r = 1.0;
      if (r <= 0.0) {
        linear.push_back({1.0 - r, -r});
      } else if (r >= 1.0) {
        linear.push_back({r - 1.0, r});
        scale = -scale;
      } else {
        inside.push_back(r);
      }
    }
  }
  if (upper.size() != lower.size()) throw NumericalError("sos_decompose: unpaired complex roots");
  for (const auto& z : upper) {
    auto it = std::min_element(lower.begin(), lower.end(), [&](const auto& u, const auto& v) {
      return std::abs(u - std::conj(z)) < std::abs(v - std::conj(z));
    });
    if (std::abs(*it - std::conj(z)) > kConjTol * (1.0 + std::abs(z)))
      throw NumericalError("sos_decompose: complex roots do not form conjugate pairs");
    const double re = 0.5 * (z.real() + it->real());
    const double im2 = z.imag() * -it->imag();
    quadratics.push_back(UniPoly{re * re + im2, -2.0 * re, 1.0});
    lower.erase(it);
  }
  // Interior real roots have even multiplicity; neighbours in sorted order
  // belong to the same cluster.
  std::sort(inside.begin(), inside.end());
  if (inside.size() % 2 != 0) throw NumericalError("sos_decompose: odd number of interior roots");
  for (std::size_t i = 0; i < inside.size(); i += 2)
    quadratics.push_back(UniPoly{inside[i] * inside[i + 1], -(inside[i] + inside[i + 1]), 1.0});
  if (scale < 0.0) throw NotNonnegativeError();

  // Odd target: split off one linear factor, preferring the root at 0 so
  // that s2(0) = 0 whenever p(0) = 0.
  std::optional<OddForm> odd;
  if (cert.parity == Parity::Odd) {
    LinearFactor lf{1.0, 1.0};
    if (!linear.empty()) {
      lf = linear.front();
      linear.erase(linear.begin());
    }
    odd = OddForm{UniPoly::constant(std::sqrt(lf.a)), UniPoly::constant(std::sqrt(lf.b))};
  }
  for (std::size_t i = 0; i < linear.size(); i += 2) {
    UniPoly prod = linear[i].poly();
    if (i + 1 < linear.size()) prod = prod * linear[i + 1].poly();
    quadratics.push_back(prod);
  }

  EvenForm acc{UniPoly::constant(std::sqrt(scale)), UniPoly{}};
  for (const auto& quad : quadratics) acc = multiply(acc, quadratic_to_even(quad));

  if (odd) {
    const OddForm res = multiply(acc, *odd);
    cert.s1 = positive_leading(clip_degree(res.f, cert.d));
    cert.s2 = positive_leading(clip_degree(res.g, cert.d));
  } else {
    cert.s1 = positive_leading(clip_degree(acc.f, cert.d));
    cert.s2 = positive_leading(clip_degree(acc.g, cert.d - 1));
  }
  return cert;
}

double GramSystem::residual(std::span<const double> taylor, const Eigen::MatrixXd& A,
                            const Eigen::MatrixXd& B) const {
  double worst = 0.0;
  for (const auto& eq : equations) {
    double s = 0.0;
    for (const auto& t : eq.terms) s += t.coeff * (t.matrix == GramTerm::Matrix::A ? A(t.i, t.j) : B(t.i, t.j));
    const double lhs = eq.power < static_cast<int>(taylor.size()) ? taylor[static_cast<std::size_t>(eq.power)] : 0.0;
    worst = std::max(worst, std::abs(lhs - s));
  }
  return worst;
}

std::pair<GramSystem, std::vector<double>> gram_system(const MultiPoly& g, std::span<const double> xbar,
                                                        std::span<const double> x) {
  const int deg = g.degree();
  if (deg < 1) throw InputError("gram_system: g must have degree >= 1");
  const UniPoly p = g.restrict_to_segment(x, xbar);
  std::vector<double> taylor(static_cast<std::size_t>(deg) + 1, 0.0);
  for (int k = 0; k <= std::min(deg, p.degree()); ++k) taylor[static_cast<std::size_t>(k)] = p.coeff(k);

  using M = GramTerm::Matrix;
  GramSystem sys;
  // Sum of M(i, j) over i + j = total, 0 <= i, j < size.
  auto diagonal_sum = [](std::vector<GramTerm>& out, M m, int total, int size, double coeff) {
    for (int i = 0; i < size; ++i) {
      const int j = total - i;
      if (j >= 0 && j < size) out.push_back({m, i, j, coeff});
    }
  };

  if (deg % 2 == 0) {
    const int d = deg / 2;
    sys.parity = Parity::Even;
    sys.d = d;
    sys.size_a = d;
    sys.size_b = d;
    sys.equations.push_back({1, {{M::B, 0, 0, 1.0}}});
    for (int k = 0; k <= 2 * d - 2; ++k) {
      GramEquation eq{k + 2, {}};
      diagonal_sum(eq.terms, M::A, k, d, 1.0);
      diagonal_sum(eq.terms, M::B, k, d, -1.0);
      diagonal_sum(eq.terms, M::B, k + 1, d, 1.0);
      sys.equations.push_back(std::move(eq));
    }
  } else {
    const int d = (deg - 1) / 2;
    sys.parity = Parity::Odd;
    sys.d = d;
    sys.size_a = d + 1;
    sys.size_b = d;
    sys.equations.push_back({1, {{M::A, 0, 0, 1.0}}});
    if (d >= 1) sys.equations.push_back({2, {{M::A, 0, 1, 2.0}, {M::B, 0, 0, 1.0}}});
    for (int k = 0; k <= 2 * d - 2; ++k) {
      GramEquation eq{k + 3, {}};
      diagonal_sum(eq.terms, M::A, k + 2, d + 1, 1.0);
      diagonal_sum(eq.terms, M::B, k + 1, d, 1.0);
      diagonal_sum(eq.terms, M::B, k, d, -1.0);
      sys.equations.push_back(std::move(eq));
    }
  }
  return {std::move(sys), std::move(taylor)};
}

double GramWitness::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Eigen::MatrixXd* mat : {&A, &B}) {
    if (mat->size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*mat, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return std::isinf(m) ? 0.0 : m;
}

std::optional<GramWitness> gram_witness(const MultiPoly& g, std::span<const double> xbar, std::span<const double> x) {
  const int deg = g.degree();
  if (deg < 1) throw InputError("gram_witness: g must have degree >= 1");
  double scale = 0.0;
  for (const auto& t : g.terms()) {
    double v = std::abs(t.coeff);
    for (std::size_t i = 0; i < x.size(); ++i) v *= std::pow(std::max(1.0, std::abs(x[i])), t.exponents[i]);
    scale += v;
  }
  if (std::abs(g.eval(x)) > 1e-9 * (1.0 + scale)) throw InputError("gram_witness: point is off the surface g = 0");

  std::vector<double> c = g.restrict_to_segment(x, xbar).coeffs();
  if (!c.empty()) c[0] = 0.0;
  const UniPoly p(std::move(c));
  if (!is_nonnegative_on_unit(p)) return std::nullopt;

  const SosCertificate cert = sos_decompose(p, deg);
  // The forced root at 0 sits in s1 (even) or s2 (odd); strip one lambda.
  auto coeff_vector = [](const UniPoly& s, int shift, int size) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
    for (int i = 0; i < size; ++i) v(i) = s.coeff(i + shift);
    return v;
  };
  Eigen::VectorXd c1;
  Eigen::VectorXd c2;
  if (cert.parity == Parity::Even) {
    c1 = coeff_vector(cert.s1, 1, cert.d);
    c2 = coeff_vector(cert.s2, 0, cert.d);
  } else {
    c1 = coeff_vector(cert.s1, 0, cert.d + 1);
    c2 = coeff_vector(cert.s2, 1, cert.d);
  }
  return GramWitness{c1 * c1.transpose(), c2 * c2.transpose()};
}

}  // namespace visicut
