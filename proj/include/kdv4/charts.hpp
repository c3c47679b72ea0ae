#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "kdv4/polyfrac.hpp"
#include "kdv4/ratfunc.hpp"

namespace kdv4 {

// The three base coordinate systems used by the blow-up charts, read off the
// P2xP2 compactification: x-coordinates are affine, z-coordinates are the
// reciprocal pair z_even = x_even/x_odd, z_odd = 1/x_odd of a factor.
enum class BaseKind {
  XZ,  // (x0, x1, z2, z3)
  ZX,  // (z0, z1, x2, x3)
  ZZ,  // (z0, z1, z2, z3)
};

// One blow-up chart C_i. Coordinates are always written (s,t,u,v); the
// substitution chain to the base is the composition of toParent maps up the
// parent chain. centerGens generate the ideal of the blow-up center inside
// the parent chart, and pivot is the index of the coordinate whose vanishing
// is the local equation of the exceptional divisor E_i in this chart.
struct ChartInfo {
  int index = 0;
  std::string name;
  int parent = 0;  // 0 means the base chart of `base`
  BaseKind base = BaseKind::XZ;
  int pivot = 0;  // 0..3 into (s,t,u,v)
  std::array<PolyFrac, 4> toParent;
  std::array<PolyFrac, 4> fromParent;
  std::vector<PolyFrac> centerGens;
};

// Common variable list for all chart-local expressions: the four chart (or
// positional parent/base) coordinates plus the parameter h.
const std::vector<std::string>& chartVars();

const ChartInfo& chart(int i);  // i = 1..17
inline constexpr int kNumCharts = 17;

// Embedding of exact rationals into the value field used for evaluation.
template <class F>
F embedRat(const Rat& r);
template <>
inline Rat embedRat<Rat>(const Rat& r) {
  return r;
}
template <>
inline QH embedRat<QH>(const Rat& r) {
  return qh(r);
}
template <>
inline Eps embedRat<Eps>(const Rat& r) {
  return eps_rat(r);
}

template <class F>
F evalFracVals(const PolyFrac& f, const std::array<F, 4>& c, const F& h) {
  std::array<F, 5> vals{c[0], c[1], c[2], c[3], h};
  auto embed = [](const Rat& r) { return embedRat<F>(r); };
  F d = f.den().template eval<F>(std::span<const F>(vals), embed);
  if (isZeroVal(d)) throw DegenerateSubstitutionError("chart substitution denominator vanished");
  F n = f.num().template eval<F>(std::span<const F>(vals), embed);
  return n / d;
}

template <class F>
std::array<F, 4> chartToParentVals(int i, const std::array<F, 4>& c, const F& h) {
  const auto& ch = chart(i);
  return {evalFracVals(ch.toParent[0], c, h), evalFracVals(ch.toParent[1], c, h),
          evalFracVals(ch.toParent[2], c, h), evalFracVals(ch.toParent[3], c, h)};
}

template <class F>
std::array<F, 4> parentToChartVals(int i, const std::array<F, 4>& p, const F& h) {
  const auto& ch = chart(i);
  return {evalFracVals(ch.fromParent[0], p, h), evalFracVals(ch.fromParent[1], p, h),
          evalFracVals(ch.fromParent[2], p, h), evalFracVals(ch.fromParent[3], p, h)};
}

template <class F>
std::vector<F> centerGeneratorVals(int i, const std::array<F, 4>& parentCoords, const F& h) {
  std::vector<F> out;
  for (const auto& g : chart(i).centerGens) out.push_back(evalFracVals(g, parentCoords, h));
  return out;
}

template <class F>
std::array<F, 4> baseToAffineVals(BaseKind b, const std::array<F, 4>& c) {
  auto invOf = [](const F& d) -> F {
    if (isZeroVal(d)) throw DegenerateSubstitutionError("base chart at infinity");
    return F(1) / d;
  };
  switch (b) {
    case BaseKind::XZ:
      return {c[0], c[1], c[2] * invOf(c[3]), invOf(c[3])};
    case BaseKind::ZX:
      return {c[0] * invOf(c[1]), invOf(c[1]), c[2], c[3]};
    case BaseKind::ZZ:
      return {c[0] * invOf(c[1]), invOf(c[1]), c[2] * invOf(c[3]), invOf(c[3])};
  }
  throw std::logic_error("bad BaseKind");
}

template <class F>
std::array<F, 4> affineToBaseVals(BaseKind b, const std::array<F, 4>& x) {
  auto invOf = [](const F& d) -> F {
    if (isZeroVal(d)) throw DegenerateSubstitutionError("affine point not in base chart");
    return F(1) / d;
  };
  switch (b) {
    case BaseKind::XZ:
      return {x[0], x[1], x[2] * invOf(x[3]), invOf(x[3])};
    case BaseKind::ZX:
      return {x[0] * invOf(x[1]), invOf(x[1]), x[2], x[3]};
    case BaseKind::ZZ:
      return {x[0] * invOf(x[1]), invOf(x[1]), x[2] * invOf(x[3]), invOf(x[3])};
  }
  throw std::logic_error("bad BaseKind");
}

template <class F>
std::array<F, 4> chartToAffineVals(int i, const std::array<F, 4>& c, const F& h) {
  std::array<F, 4> cur = c;
  int at = i;
  while (at != 0) {
    cur = chartToParentVals(at, cur, h);
    at = chart(at).parent;
  }
  return baseToAffineVals(chart(i).base, cur);
}

template <class F>
std::array<F, 4> affineToChartVals(int i, const std::array<F, 4>& x, const F& h) {
  std::vector<int> chain;
  for (int at = i; at != 0; at = chart(at).parent) chain.push_back(at);
  std::array<F, 4> cur = affineToBaseVals(chart(i).base, x);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    cur = parentToChartVals(*it, cur, h);
  return cur;
}

// Symbolic composition: substitutes PolyFrac values for (s,t,u,v), leaving h.
PolyFrac evalFracSym(const PolyFrac& f, const std::array<PolyFrac, 4>& c);

// The affine coordinates x0..x3 as exact fractions of chart i's coordinates.
std::array<PolyFrac, 4> affineExprsInChart(int i);

// Pulls a rational function of (x0,x1,x2,x3,h) into chart i's coordinates.
PolyFrac pullToChart(const PolyFrac& f, int i);

// Audit export: chart id, coordinates, substitution chain, center,
// exceptional local equation.
std::string chartReport(int i);
std::string towerReport();

}  // namespace kdv4
