#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/rearrange.hpp"
#include "core/star_domain.hpp"
#include "test_util.hpp"

using namespace heatshape;
using testutil::kPi;

namespace {

GridField random_field(testutil::Rng& rng, int n, double lo, double hi) {
  Domain2D square{StarDomain::disk(2.0), 0.0, 0.0};  // grid covers the box
  GridField g = rasterize(square, [](double, double) { return 0.0; }, n);
  g.fraction.assign(g.fraction.size(), 1.0);  // full square, equal measures
  for (auto& v : g.value) v = rng.uniform(lo, hi);
  return g;
}

}  // namespace

TEST_CASE("spherical rearrangement basics") {
  // constant on a shifted disk -> constant on the centered disk
  Domain2D shifted{StarDomain::disk(1.0), 0.4, -0.2};
  const GridField g =
      rasterize(shifted, [](double, double) { return 1.0; }, 128);
  const GridField sharp = spherical_rearrangement(g);
  CHECK(std::abs(sharp.total_measure() - g.total_measure()) <=
        2.0 * g.cell_area() + 16.0 * g.cell);
  for (int j = 0; j < sharp.ny; ++j)
    for (int i = 0; i < sharp.nx; ++i)
      if (sharp.frac(i, j) == 1.0) CHECK(sharp.at(i, j) == 1.0);
}

TEST_CASE("rearrangement of a radial decreasing field is the field itself") {
  const auto src = RadialSource::gaussian(0.6, 2);
  Domain2D ball{StarDomain::disk(1.0), 0.0, 0.0};
  const GridField f = rasterize(
      ball, [&](double x, double y) { return src.value(std::hypot(x, y)); },
      192);
  const DecreasingRearrangement dr = decreasing_rearrangement(f);
  const double slope_max = 2.0 * kPi / (0.6 * 0.6) * src.value(0.0);
  const double modulus = 2.0 * slope_max * f.cell * std::sqrt(2.0);
  for (double r : {0.1, 0.3, 0.5, 0.8})
    CHECK(std::abs(dr.value_at_measure(kPi * r * r) - src.value(r)) <=
          modulus);
}

TEST_CASE("equimeasurability within rasterization slack") {
  testutil::Rng rng(31);
  Domain2D dom{StarDomain::ellipse(1.3, 1.0 / 1.3), 0.0, 0.0};
  const auto src = RadialSource::gaussian(0.8, 2);
  const GridField g = rasterize(
      dom, [&](double x, double y) { return src.value(std::hypot(x, y)); },
      192);
  const DecreasingRearrangement din = decreasing_rearrangement(g);
  const GridField sharp = spherical_rearrangement(g);
  const DecreasingRearrangement dout = decreasing_rearrangement(sharp);
  // level-set rasterization slack: O(level-set length * cell)
  const double slack = 8.0 * 2.0 * kPi * 1.3 * sharp.cell;
  for (int i = 1; i <= 9; ++i) {
    const double t = src.value(0.0) * i / 10.0;
    CHECK(std::abs(din.distribution(t) - dout.distribution(t)) <= slack);
  }
}

TEST_CASE("order preservation of the rearrangement") {
  testutil::Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    GridField f = random_field(rng, 64, 0.0, 1.0);
    GridField g = f;
    for (auto& v : g.value) v += rng.uniform(0.0, 0.5);  // g >= f pointwise
    const auto df = decreasing_rearrangement(f);
    const auto dg = decreasing_rearrangement(g);
    for (int i = 0; i < 50; ++i) {
      const double s = rng.uniform(0.0, df.total);
      CHECK(df.value_at_measure(s) <= dg.value_at_measure(s) + 1e-14);
    }
  }
}

TEST_CASE("Hardy-Littlewood on random grid pairs") {
  testutil::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const GridField f = random_field(rng, 48, 0.0, 2.0);
    const GridField g = random_field(rng, 48, 0.0, 3.0);
    const auto hl = hardy_littlewood(f, g);
    CHECK(hl.plain <= hl.rearranged + 1e-12 * std::max(1.0, hl.rearranged));
  }
}

TEST_CASE("lemma domination check") {
  // constant source: both sides equal 1, no violation at all
  const auto one = RadialSource::constant(1.0, 2);
  Domain2D shifted{StarDomain::disk(1.0), 0.3, 0.0};
  const auto rep1 = lemma_domination_check(one, shifted, 1.0, 192);
  CHECK(rep1.ok);
  CHECK(rep1.max_raw_difference <= 1e-12);

  const auto g05 = RadialSource::gaussian(0.5, 2);
  const auto rep2 = lemma_domination_check(g05, shifted, 1.0, 256);
  CHECK(rep2.ok);

  Domain2D ell{StarDomain::ellipse(1.3, 1.0 / 1.3), 0.0, 0.0};
  const auto rep3 = lemma_domination_check(g05, ell, 1.0, 256);
  CHECK(rep3.ok);

  // measure mismatch: |Omega| != pi R^2
  Domain2D big{StarDomain::disk(1.2), 0.0, 0.0};
  CHECK_THROWS_AS(lemma_domination_check(g05, big, 1.0, 128), InvalidArgument);
}

TEST_CASE("two-disk counterexample closed forms") {
  const auto lo = two_disk_counterexample(0.5, 0.5);
  CHECK(lo.c == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK(lo.c == doctest::Approx(1.118034).epsilon(1e-6));
  CHECK(lo.beta0 == doctest::Approx(0.946233).epsilon(1e-6));
  CHECK(lo.linf_domain == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(lo.linf_ball == doctest::Approx(1.200213).epsilon(1e-6));
  CHECK(lo.comparison_fails);

  const auto hi = two_disk_counterexample(0.5, 2.0);
  CHECK(hi.linf_domain == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hi.linf_ball == doctest::Approx(0.529393).epsilon(1e-6));
  CHECK(!hi.comparison_fails);

  // degenerate second disk: delta -> 0
  const auto tiny = two_disk_counterexample(1e-8, 1.0);
  CHECK(std::abs(tiny.delta) <= 1e-15);

  // verdict boundary: evaluating at beta0 gives |delta| <= 1e-12
  const auto at0 = two_disk_counterexample(0.5, lo.beta0);
  CHECK(std::abs(at0.delta) <= 1e-12);

  CHECK_THROWS_AS(two_disk_counterexample(-0.1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(two_disk_counterexample(0.5, 0.0), InvalidArgument);
}

TEST_CASE("talenti experiments") {
  TalentiOptions opts;
  opts.fem_h = 0.03;
  opts.grid_n = 96;

  // the centered disk compares with itself: margins at solver tolerance
  const auto g05 = RadialSource::gaussian(0.5, 2);
  Domain2D disk{StarDomain::disk(1.0), 0.0, 0.0};
  const auto self = talenti_experiments(disk, g05, 1.0, opts);
  CHECK(std::abs(self.j_margin) <= 1e-9);
  CHECK(std::abs(self.a_margin) <= 1e-9);

  // Saint-Venant instance: the ellipse has strictly larger Dirichlet energy
  const auto one = RadialSource::constant(1.0, 2);
  Domain2D ell{StarDomain::ellipse(1.2, 1.0 / 1.2), 0.0, 0.0};
  const auto sv = talenti_experiments(ell, one, std::nullopt, opts);
  CHECK(sv.j_margin > 5e-3);
  CHECK(sv.hl.plain <= sv.hl.rearranged + sv.hl.slack);

  // averaged-temperature ordering for a shifted disk, Robin beta = 1
  Domain2D shifted{StarDomain::disk(1.0), 0.3, 0.0};
  const auto av = talenti_experiments(shifted, g05, 1.0, opts);
  CHECK(av.a_margin > 0.0);
  CHECK(av.hl.plain <= av.hl.rearranged + av.hl.slack);
}
