#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "visicut/error.hpp"
#include "visicut/multipoly.hpp"

using namespace visicut;

namespace {

MultiPoly quad_g() {
  return MultiPoly(3, {{-1, {1, 1, 0}}, {1, {1, 0, 1}}, {1, {0, 1, 1}}, {-1, {1, 0, 0}}, {-1, {0, 1, 0}},
                       {-1, {0, 0, 1}}, {1, {0, 0, 0}}});
}

MultiPoly closure_g() { return MultiPoly(2, {{1, {3, 0}}, {1, {1, 2}}, {-1, {1, 0}}}); }

MultiPoly random_poly(std::mt19937_64& rng, std::size_t n, int max_deg, double range) {
  std::uniform_real_distribution<double> coef(-range, range);
  std::uniform_int_distribution<int> terms_d(1, 8);
  std::vector<Monomial> terms;
  const int nt = terms_d(rng);
  for (int t = 0; t < nt; ++t) {
    std::vector<int> e(n, 0);
    std::uniform_int_distribution<int> deg_d(0, max_deg);
    int budget = deg_d(rng);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    while (budget-- > 0) ++e[var(rng)];
    terms.push_back({coef(rng), e});
  }
  return MultiPoly(n, terms);
}

Point random_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_CASE("evaluation of the worked instances") {
  CHECK(quad_g().eval(Point{1, 1, 1}) == doctest::Approx(-1.0));
  CHECK(MultiPoly(3).eval(Point{0.3, -2, 5}) == 0.0);
  CHECK(closure_g().eval(Point{-1, 0}) == 0.0);
}

TEST_CASE("terms are merged and kept canonical") {
  MultiPoly a(2, {{1, {1, 0}}, {2, {0, 1}}, {3, {1, 0}}, {0, {2, 2}}});
  MultiPoly b(2, {{2, {0, 1}}, {4, {1, 0}}});
  CHECK(a == b);
  CHECK(a.terms().size() == 2);
  CHECK((a - b).is_zero());
  CHECK(MultiPoly(2).degree() == -1);
  CHECK_THROWS_AS((void)a.eval(Point{1, 2, 3}), InputError);
}

TEST_CASE("gradient") {
  MultiPoly p(2, {{1, {2, 1}}});
  auto gr = p.gradient();
  CHECK(gr[0] == MultiPoly(2, {{2, {1, 1}}}));
  CHECK(gr[1] == MultiPoly(2, {{1, {2, 0}}}));

  for (const auto& d : MultiPoly::constant(3, 4.0).gradient()) CHECK(d.is_zero());

  const auto gq = quad_g().gradient();
  const Point origin{0, 0, 0};
  const auto fd = oracle::fd_gradient(quad_g(), origin);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(gq[i].eval(origin) == doctest::Approx(-1.0));
    CHECK(std::abs(fd[i] - gq[i].eval(origin)) <= 1e-6);
  }
}

TEST_CASE("gradient matches central differences on random polynomials") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const auto p = random_poly(rng, n, 4, 10.0);
    const auto x = random_point(rng, n, -1.0, 1.0);
    const auto gr = p.gradient();
    const auto fd = oracle::fd_gradient(p, x);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(gr[i].eval(x) - fd[i]));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("segment restriction of the worked instances") {
  const auto pc = closure_g().restrict_to_segment(Point{-1, 0}, Point{1, -2});
  REQUIRE(pc.degree() == 3);
  CHECK(pc.coeff(0) == doctest::Approx(0.0));
  CHECK(pc.coeff(1) == doctest::Approx(4.0));
  CHECK(pc.coeff(2) == doctest::Approx(-16.0));
  CHECK(pc.coeff(3) == doctest::Approx(16.0));

  const auto pq = quad_g().restrict_to_segment(Point{1, 1, 1}, Point{0, 0, 0});
  for (int k = 0; k < 20; ++k) {
    const double l = k / 19.0;
    CHECK(std::abs(pq(l) - (l * l + l - 1.0)) <= 1e-9);
  }

  const Point x{0.4, -0.7, 1.2};
  const auto same = quad_g().restrict_to_segment(x, x);
  CHECK(same.degree() <= 0);
  CHECK(same(0.37) == doctest::Approx(quad_g().eval(x)));
}

TEST_CASE("segment restriction agrees with pointwise evaluation") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const auto p = random_poly(rng, n, 6, 3.0);
    const auto x = random_point(rng, n, -2.0, 2.0);
    const auto xb = random_point(rng, n, -2.0, 2.0);
    const auto u = p.restrict_to_segment(x, xb);
    for (int j = 0; j <= 10; ++j) {
      const double l = j / 10.0;
      const double want = oracle::on_segment(p, x, xb, l);
      CHECK(std::abs(u(l) - want) <= 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("interval evaluation") {
  MultiPoly xy(2, {{1, {1, 1}}});
  const auto r = xy.eval(IntervalVector{{0, 1}, {0, 1}});
  CHECK(r.lo <= 0.0);
  CHECK(r.hi >= 1.0);

  MultiPoly sq(1, {{1, {2}}});
  const auto s = sq.eval(IntervalVector{{-1, 2}});
  CHECK(s.lo <= 0.0);
  CHECK(s.hi >= 4.0);

  const IntervalVector B{{-0.1, 2}, {0, 2}, {0, 2}};
  const auto gr = quad_g().eval(B);
  double mn = 1e300;
  double mx = -1e300;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      for (int k = 0; k <= 20; ++k) {
        const Point x{-0.1 + 2.1 * i / 20, 2.0 * j / 20, 2.0 * k / 20};
        const double v = quad_g().eval(x);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
  CHECK(gr.lo <= mn);
  CHECK(gr.hi >= mx);
}

TEST_CASE("interval evaluation encloses sampled values") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int escapes = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const auto p = random_poly(rng, n, 5, 5.0);
    std::vector<Interval> comps;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = -2.0 + 4.0 * u(rng);
      comps.push_back({a, a + 2.0 * u(rng)});
    }
    const IntervalVector box(comps);
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = comps[i].lo + u(rng) * comps[i].width();
    if (!p.eval(box).contains(p.eval(x))) ++escapes;
  }
  CHECK(escapes == 0);
}

TEST_CASE("quadratic form extraction") {
  const auto q = quadratic_form(quad_g());
  CHECK(q.Q[0][1] == doctest::Approx(-0.5));
  CHECK(q.Q[1][0] == doctest::Approx(-0.5));
  CHECK(q.Q[0][2] == doctest::Approx(0.5));
  CHECK(q.Q[0][0] == 0.0);
  CHECK(q.b == std::vector<double>{-1, -1, -1});
  CHECK(q.c == 1.0);
  CHECK_THROWS_AS(quadratic_form(closure_g()), InputError);
}
