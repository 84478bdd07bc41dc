#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "visicut/error.hpp"
#include "visicut/unipoly.hpp"

using namespace visicut;

namespace {

const UniPoly kClosure{0, 4, -16, 16};

UniPoly random_unipoly(std::mt19937_64& rng, int max_deg, double range) {
  std::uniform_real_distribution<double> c(-range, range);
  const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_deg));
  std::vector<double> cs(static_cast<std::size_t>(d + 1));
  for (auto& v : cs) v = c(rng);
  return UniPoly(cs);
}

}  // namespace

TEST_CASE("derivative") {
  CHECK(kClosure.derivative() == UniPoly({4, -32, 48}));
  CHECK(UniPoly::constant(3).derivative().is_zero());
  CHECK(UniPoly({-1, 1, 1}).derivative() == UniPoly({1, 2}));
}

TEST_CASE("sturm counts on (a, b]") {
  CHECK(sturm_count(kClosure, 0, 1) == 1);
  CHECK(sturm_count(UniPoly({1, 0, 1}), 0, 1) == 0);
  CHECK(sturm_count(UniPoly({-0.25, 0, 1}), 0, 1) == 1);
  CHECK(sturm_count(UniPoly({-0.25, 0, 1}), -1, 1) == 2);
  CHECK_THROWS_AS(sturm_count(UniPoly(), 0, 1), InputError);
  CHECK_THROWS_AS(sturm_count(kClosure, 1, 0), InputError);
}

TEST_CASE("the closure polynomial has a single touching root") {
  // Sign scan cannot see a double root; the factor 4 lambda (2 lambda - 1)^2
  // is checked directly instead.
  for (int k = 0; k <= 10000; ++k) {
    const double t = k / 10000.0;
    CHECK(std::abs(kClosure(t) - 4 * t * (2 * t - 1) * (2 * t - 1)) <= 1e-12);
  }
}

TEST_CASE("deflation at zero") {
  const auto d = deflate_at_zero(kClosure);
  CHECK(d.power == 1);
  CHECK(d.quotient == UniPoly({4, -16, 16}));
  CHECK(deflate_at_zero(UniPoly({0, 0, 1})).power == 2);
  CHECK(deflate_at_zero(UniPoly({0, 0, 1})).quotient == UniPoly({1}));
  CHECK(deflate_at_zero(UniPoly({1, 1})).power == 0);
}

TEST_CASE("deflation round-trips on random polynomials") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    auto q = random_unipoly(rng, 6, 3);
    if (std::abs(q.coeff(0)) < 0.1) continue;
    const int power = static_cast<int>(rng() % 4);
    const auto p = UniPoly::monomial(power) * q;
    const auto d = deflate_at_zero(p);
    REQUIRE(d.power == power);
    const auto back = UniPoly::monomial(d.power) * d.quotient;
    for (int i = 0; i <= p.degree(); ++i)
      CHECK(std::abs(back.coeff(i) - p.coeff(i)) <= 1e-12 * p.max_abs_coeff());
  }
}

TEST_CASE("positivity on (0, 1]") {
  CHECK_FALSE(is_positive_on_unit_halfopen(kClosure));
  CHECK(is_positive_on_unit_halfopen(UniPoly({0, 1})));
  CHECK(is_positive_on_unit_halfopen(UniPoly({0, 2, 1})));
  CHECK_FALSE(is_positive_on_unit_halfopen(UniPoly()));
  // A root exactly at 1 defeats strict positivity.
  CHECK_FALSE(is_positive_on_unit_halfopen(UniPoly({0, 1, -1})));
}

TEST_CASE("nonnegativity on [0, 1]") {
  CHECK(is_nonnegative_on_unit(kClosure));
  const UniPoly p{0, -3, 4};
  CHECK(p(0.1) < 0.0);
  CHECK_FALSE(is_nonnegative_on_unit(p));
  CHECK(is_nonnegative_on_unit(UniPoly({0, 1, -1})));
  CHECK(is_nonnegative_on_unit(UniPoly()));
}

TEST_CASE("positivity agrees with a dense grid") {
  std::mt19937_64 rng(22);
  int compared = 0;
  for (int k = 0; k < 300; ++k) {
    const auto p = random_unipoly(rng, 6, 5);
    const int n = 100000;
    double mn = 1e300;
    for (int j = 1; j <= n; ++j) {
      const double v = p(static_cast<double>(j) / n);
      mn = std::min(mn, v);
    }
    // Skip polynomials with a root close to a grid node: the grid cannot decide them.
    const auto roots = real_roots(p, 0, 1);
    bool close = false;
    for (const auto& r : roots) close = close || std::abs(r.value * n - std::round(r.value * n)) * (1.0 / n) < 1e-6;
    if (close) continue;
    ++compared;
    CHECK(is_positive_on_unit_halfopen(p) == (mn > 0.0));
  }
  CHECK(compared > 250);
}

TEST_CASE("real roots with multiplicities") {
  const auto r = real_roots(kClosure, 0, 1);
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == doctest::Approx(0.0));
  CHECK(r[0].multiplicity == 1);
  CHECK(r[1].value == doctest::Approx(0.5));
  CHECK(r[1].multiplicity == 2);
  CHECK(real_roots(UniPoly({1, 0, 1}), 0, 1).empty());
  const auto q = real_roots(UniPoly({1.0 / 16, -0.5, 1}), 0, 1);
  REQUIRE(q.size() == 1);
  CHECK(q[0].value == doctest::Approx(0.25));
  CHECK(q[0].multiplicity == 2);
}

TEST_CASE("sturm counts agree with sign changes on a grid") {
  std::mt19937_64 rng(23);
  int disagreements = 0;
  for (int k = 0; k < 200; ++k) {
    const auto p = random_unipoly(rng, 8, 5);
    const int s = sturm_count(p, 0, 1);
    int g = oracle::grid_root_count(p.coeffs(), 0, 1, 100000);
    if (g != s) g = oracle::grid_root_count(p.coeffs(), 0, 1, 100000, 0.37);
    if (g != s) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("complex roots reproduce the polynomial") {
  const auto r = complex_roots(UniPoly({1, 0, 1}));
  REQUIRE(r.size() == 2);
  for (const auto& z : r) CHECK(std::abs(z * z + 1.0) <= 1e-10);
}
