#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "visicut/error.hpp"
#include "visicut/tighten.hpp"

using namespace visicut;

namespace {

ProblemInstance circle(IntervalVector box) {
  return ProblemInstance(MultiPoly(2, {{1, {2, 0}}, {1, {0, 2}}, {-1, {0, 0}}}), ConvexDomain(std::move(box)),
                         Point{2, 0});
}

}  // namespace

TEST_CASE("half-space propagation") {
  const IntervalVector box{{0, 2}, {0, 2}};
  const std::vector<double> up{1, 1};
  const auto same = fbbt_halfspace(box, up, -1);
  REQUIRE(same);
  CHECK(*same == box);

  const std::vector<double> down{-1, -1};
  const auto cut = fbbt_halfspace(box, down, 1);
  REQUIRE(cut);
  CHECK((*cut)[0].lo == 0.0);
  CHECK((*cut)[0].hi == doctest::Approx(1.0));
  CHECK((*cut)[1].hi == doctest::Approx(1.0));

  const std::vector<double> one{1};
  const auto half = fbbt_halfspace(IntervalVector{{-2, 2}}, one, -0.5);
  REQUIRE(half);
  CHECK((*half)[0].lo == doctest::Approx(0.5));
  CHECK((*half)[0].hi == 2.0);

  CHECK_FALSE(fbbt_halfspace(IntervalVector{{-2, 2}}, one, -3));
  CHECK_THROWS_AS(fbbt_halfspace(box, one, 0), InputError);
}

TEST_CASE("circle seen from (2, 0)") {
  const auto enc = prune_enclosure(region_description(circle(IntervalVector{{-2, 2}, {-2, 2}})), {16, 0.0});
  REQUIRE(enc.status == EnclosureStatus::Nonempty);
  const double r3 = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(enc.box[0].lo - 0.5) <= 0.02);
  CHECK(std::abs(enc.box[0].hi - 1.0) <= 0.02);
  CHECK(std::abs(enc.box[1].lo + r3) <= 0.02);
  CHECK(std::abs(enc.box[1].hi - r3) <= 0.02);
  CHECK(enc.box[0].lo <= 0.5);
  CHECK(enc.box[1].hi >= r3);
}

TEST_CASE("an empty region is reported") {
  const auto enc = prune_enclosure(region_description(circle(IntervalVector{{1.5, 3}, {-1, 1}})));
  CHECK(enc.status == EnclosureStatus::ProvedEmpty);
  CHECK_THROWS_AS(prune_enclosure(region_description(circle(IntervalVector{{-2, 2}, {-2, 2}})), {0, 0.0}),
                  InputError);
}

TEST_CASE("enclosures of random quadratics are sound, monotone and inside the propagated half-space") {
  std::mt19937_64 rng(71);
  int escapes = 0;
  int not_nested = 0;
  int outside_fbbt = 0;
  int hits = 0;
  for (int k = 0; k < 100; ++k) {
    const auto inst = oracle::random_quadratic_instance(rng, 1 + rng() % 3);
    const auto region = region_description(inst);
    const auto e10 = prune_enclosure(region, {10, 0.0});
    const auto e12 = prune_enclosure(region, {12, 0.0});

    for (int r = 0; r < 40; ++r) {
      const auto xs = oracle::ray_crossings(inst, oracle::random_direction(rng, inst.dim()), 2000);
      if (xs.empty()) continue;
      const auto& x = xs.front();
      if (!is_visible(inst, x)) continue;
      ++hits;
      for (const auto* e : {&e10, &e12})
        if (e->status != EnclosureStatus::Nonempty || !e->box.contains(x, 1e-9)) ++escapes;
    }

    if (e12.status == EnclosureStatus::Nonempty) {
      if (e10.status != EnclosureStatus::Nonempty || !e10.box.contains(e12.box)) ++not_nested;
    }

    // The enclosure is a fixed point of half-space propagation (a hull of
    // propagated leaves is again propagated) and lies inside the propagated domain.
    if (e12.status == EnclosureStatus::Nonempty) {
      const auto& hs = std::get<Halfspace>(region.extra);
      const auto self = fbbt_halfspace(e12.box, hs.alpha, hs.beta);
      const auto dom = fbbt_halfspace(inst.domain().box(), hs.alpha, hs.beta);
      if (!self || !self->contains(e12.box, 1e-9) || !dom || !dom->contains(e12.box, 1e-9)) ++outside_fbbt;
    }
  }
  CHECK(hits > 1000);
  CHECK(escapes == 0);
  CHECK(not_nested == 0);
  CHECK(outside_fbbt == 0);
}

TEST_CASE("a cubic region encloses the visible points of the surface") {
  MultiPoly g(2, {{-1, {2, 1}}, {5, {1, 2}}, {-1, {0, 2}}, {-1, {0, 1}}, {-2, {1, 0}}, {2, {0, 0}}});
  const ProblemInstance inst(g, ConvexDomain(IntervalVector{{-0.5, 3}, {-0.5, 3}}), Point{0, 0});
  const auto enc = prune_enclosure(region_description(inst), {14, 0.0});
  REQUIRE(enc.status == EnclosureStatus::Nonempty);
  std::mt19937_64 rng(72);
  for (int r = 0; r < 500; ++r) {
    const auto xs = oracle::ray_crossings(inst, oracle::random_direction(rng, 2));
    if (!xs.empty()) CHECK(enc.box.contains(xs.front(), 1e-9));
  }
}
