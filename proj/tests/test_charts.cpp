#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv4/charts.hpp"

using namespace kdv4;

namespace {

// Random chart coordinates that stay clear of the loci where the chart
// transition formulas degenerate (pivot shifted away from 0, denominators
// nonzero is checked by the evaluators themselves).
std::array<Rat, 4> randomCoords(Rng& rng) {
  return {rng.nonzeroRat(), rng.nonzeroRat(), rng.nonzeroRat(), rng.nonzeroRat()};
}

}  // namespace

TEST_CASE("toParent and fromParent are mutually inverse") {
  Rng rng(20240711);
  for (int i = 1; i <= kNumCharts; ++i) {
    int done = 0;
    while (done < 5) {
      std::array<Rat, 4> c = randomCoords(rng);
      Rat h = rng.nonzeroRat();
      try {
        auto p = chartToParentVals<Rat>(i, c, h);
        auto back = parentToChartVals<Rat>(i, p, h);
        for (int k = 0; k < 4; ++k) CHECK(back[k] == c[k]);
        auto p2 = chartToParentVals<Rat>(i, back, h);
        for (int k = 0; k < 4; ++k) CHECK(p2[k] == p[k]);
      } catch (const DegenerateSubstitutionError&) {
        continue;  // unlucky sample hit a transition pole; resample
      }
      ++done;
    }
  }
}

TEST_CASE("chart to affine round trip") {
  Rng rng(987123);
  for (int i = 1; i <= kNumCharts; ++i) {
    int done = 0;
    while (done < 5) {
      std::array<Rat, 4> c = randomCoords(rng);
      Rat h = rng.nonzeroRat();
      try {
        auto x = chartToAffineVals<Rat>(i, c, h);
        auto back = affineToChartVals<Rat>(i, x, h);
        for (int k = 0; k < 4; ++k) CHECK(back[k] == c[k]);
      } catch (const DegenerateSubstitutionError&) {
        continue;
      }
      ++done;
    }
  }
}

TEST_CASE("points of the exceptional divisor lie over the center") {
  // On {pivot coordinate = 0} the image in the parent chart must satisfy all
  // center generator equations; h stays symbolic so this holds identically.
  Rng rng(5551212);
  for (int i = 1; i <= kNumCharts; ++i) {
    int done = 0;
    while (done < 3) {
      std::array<QH, 4> c;
      for (int k = 0; k < 4; ++k) c[k] = qh(rng.nonzeroRat());
      c[chart(i).pivot] = QH(0);
      try {
        auto p = chartToParentVals<QH>(i, c, qh_h());
        auto gens = centerGeneratorVals<QH>(i, p, qh_h());
        for (const auto& g : gens) CHECK(isZeroVal(g));
      } catch (const DegenerateSubstitutionError&) {
        continue;
      }
      ++done;
    }
  }
}

TEST_CASE("center generators cut out the expected codimension") {
  // A generic point of the parent chart does not satisfy every generator.
  Rng rng(424242);
  for (int i = 1; i <= kNumCharts; ++i) {
    std::array<QH, 4> p;
    for (int k = 0; k < 4; ++k) p[k] = qh(rng.nonzeroRat());
    auto gens = centerGeneratorVals<QH>(i, p, qh_h());
    bool allZero = true;
    for (const auto& g : gens) allZero = allZero && isZeroVal(g);
    CHECK(!allZero);
  }
}

TEST_CASE("symbolic pull of affine functions into charts") {
  static const std::vector<std::string> xv{"x0", "x1", "x2", "x3", "h"};
  auto xpf = [&](const std::string& n) {
    return PolyFrac(MultiPoly::parse(xv, n), MultiPoly::parse(xv, "1"));
  };
  auto spf = [&](const std::string& n, const std::string& d = "1") {
    return PolyFrac(MultiPoly::parse(chartVars(), n), MultiPoly::parse(chartVars(), d));
  };

  // The local equation of the strict transform of {x0 = 1} in the first
  // chart over it is s, and likewise for {x2 = 1} in the sixth.
  CHECK(eqFrac(pullToChart(xpf("x0 - 1"), 1), spf("s")));
  CHECK(eqFrac(pullToChart(xpf("x2 - 1"), 6), spf("s")));

  // In the first chart x1 stays t and x3 = 1/z3 = 1/(s*v).
  CHECK(eqFrac(pullToChart(xpf("x1"), 1), spf("t")));
  CHECK(eqFrac(pullToChart(xpf("x3"), 1), spf("1", "s*v")));

  // In the eleventh chart x0 = z0/z1 = 1/t and x1 = 1/z1 = 1/(s*t).
  CHECK(eqFrac(pullToChart(xpf("x0"), 11), spf("1", "t")));
  CHECK(eqFrac(pullToChart(xpf("x1"), 11), spf("1", "s*t")));
}

TEST_CASE("symbolic and value evaluation agree") {
  Rng rng(777);
  for (int i : {3, 5, 10, 13, 14, 17}) {
    auto exprs = affineExprsInChart(i);
    int done = 0;
    while (done < 3) {
      std::array<Rat, 4> c = randomCoords(rng);
      Rat h = rng.nonzeroRat();
      try {
        auto x = chartToAffineVals<Rat>(i, c, h);
        for (int k = 0; k < 4; ++k) CHECK(evalFracVals<Rat>(exprs[k], c, h) == x[k]);
      } catch (const DegenerateSubstitutionError&) {
        continue;
      }
      ++done;
    }
  }
}

TEST_CASE("pole orders of affine coordinates along exceptional divisors") {
  // Germ of a generic point of E_i: pivot coordinate = eps, the rest generic
  // constants, h symbolic.
  Rng rng(31337);
  auto germOrders = [&](int i) {
    std::array<Eps, 4> c;
    for (int k = 0; k < 4; ++k) c[k] = eps_rat(rng.nonzeroRat());
    c[chart(i).pivot] = eps_var();
    auto x = chartToAffineVals<Eps>(i, c, eps_h());
    std::array<int, 4> ords{};
    for (int k = 0; k < 4; ++k) ords[k] = x[k].ord().value();
    return ords;
  };
  CHECK(germOrders(1) == std::array<int, 4>{0, 0, 0, -1});
  CHECK(germOrders(6) == std::array<int, 4>{0, -1, 0, 0});
  CHECK(germOrders(11) == std::array<int, 4>{0, -1, 0, -1});
  CHECK(germOrders(14) == std::array<int, 4>{-1, -2, -1, -2});
}

TEST_CASE("tower report mentions every chart") {
  auto rep = towerReport();
  for (int i = 1; i <= kNumCharts; ++i)
    CHECK(rep.find("chart C" + std::to_string(i)) != std::string::npos);
}
