#include <doctest.h>

#include <random>

#include "visicut/error.hpp"
#include "visicut/linprog.hpp"

using namespace visicut::lp;

TEST_CASE("small programs") {
  LinearProgram a{{1, 1}, {{{1, 0}, RowSense::GreaterEqual, 1}, {{0, 1}, RowSense::GreaterEqual, 1}}, {}, {}};
  const auto ra = solve(a);
  REQUIRE(ra.status == Status::Optimal);
  CHECK(ra.objective == doctest::Approx(2.0));

  // alpha . (1, 0) >= 1 and alpha . (-1, 0) >= 1, alpha free
  LinearProgram b{{0, 0},
                  {{{1, 0}, RowSense::GreaterEqual, 1}, {{-1, 0}, RowSense::GreaterEqual, 1}},
                  {-kInf, -kInf},
                  {kInf, kInf}};
  CHECK(solve(b).status == Status::Infeasible);

  // min mu s.t. mu (2, 2) = w1 (2, 0) + w2 (0, 2), w1 + w2 = 1
  LinearProgram c{{1, 0, 0},
                  {{{2, -2, 0}, RowSense::Equal, 0}, {{2, 0, -2}, RowSense::Equal, 0}, {{0, 1, 1}, RowSense::Equal, 1}},
                  {}, {}};
  const auto rc = solve(c);
  REQUIRE(rc.status == Status::Optimal);
  CHECK(rc.objective == doctest::Approx(0.5));

  LinearProgram d{{-1}, {}, {}, {}};
  CHECK(solve(d).status == Status::Unbounded);

  LinearProgram bad{{1, 1}, {{{1}, RowSense::LessEqual, 1}}, {}, {}};
  CHECK_THROWS_AS(solve(bad), visicut::InputError);
}

TEST_CASE("bounds and free variables") {
  LinearProgram lp{{1, -1}, {{{1, 1}, RowSense::LessEqual, 3}}, {-2, -kInf}, {kInf, 1}};
  const auto r = solve(lp);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == doctest::Approx(-3.0));
  CHECK(r.x[0] == doctest::Approx(-2.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("strong duality on random programs") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.0, 2.0);
  double worst_gap = 0.0;
  double worst_residual = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t m = 1 + rng() % 12;
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    for (auto& row : A)
      for (auto& v : row) v = u(rng);
    // Feasible primal point and feasible dual point keep both programs bounded.
    std::vector<double> x0(n);
    std::vector<double> y0(m);
    for (auto& v : x0) v = pos(rng);
    for (auto& v : y0) v = pos(rng);
    std::vector<double> b(m);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += A[i][j] * x0[j];
      b[i] = s - pos(rng);
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += A[i][j] * y0[i];
      c[j] = s + pos(rng);
    }

    // min c x  s.t.  A x >= b, x >= 0
    LinearProgram primal{c, {}, {}, {}};
    for (std::size_t i = 0; i < m; ++i) primal.rows.push_back({A[i], RowSense::GreaterEqual, b[i]});
    // max b y  s.t.  A^T y <= c, y >= 0, as min -b y
    std::vector<double> negb(m);
    for (std::size_t i = 0; i < m; ++i) negb[i] = -b[i];
    LinearProgram dual{negb, {}, {}, {}};
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> col(m);
      for (std::size_t i = 0; i < m; ++i) col[i] = A[i][j];
      dual.rows.push_back({col, RowSense::LessEqual, c[j]});
    }

    const auto rp = solve(primal);
    const auto rd = solve(dual);
    REQUIRE(rp.status == Status::Optimal);
    REQUIRE(rd.status == Status::Optimal);
    worst_gap = std::max(worst_gap, std::abs(rp.objective + rd.objective));
    worst_residual = std::max({worst_residual, primal.max_violation(rp.x), dual.max_violation(rd.x)});
  }
  CHECK(worst_gap <= 1e-6);
  CHECK(worst_residual <= 1e-8);
}
