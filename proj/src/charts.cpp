#include "kdv4/charts.hpp"

#include <sstream>

namespace kdv4 {

const std::vector<std::string>& chartVars() {
  static const std::vector<std::string> v{"s", "t", "u", "v", "h"};
  return v;
}

namespace {

PolyFrac pf(const std::string& num, const std::string& den = "1") {
  return PolyFrac(MultiPoly::parse(chartVars(), num), MultiPoly::parse(chartVars(), den));
}

std::array<PolyFrac, 4> frs(const std::array<std::pair<std::string, std::string>, 4>& a) {
  return {pf(a[0].first, a[0].second), pf(a[1].first, a[1].second), pf(a[2].first, a[2].second),
          pf(a[3].first, a[3].second)};
}

ChartInfo makeChart(int index, int parent, BaseKind base, int pivot,
                    std::array<std::pair<std::string, std::string>, 4> toParent,
                    std::array<std::pair<std::string, std::string>, 4> fromParent,
                    std::vector<std::pair<std::string, std::string>> centerGens) {
  ChartInfo c;
  c.index = index;
  c.name = "C" + std::to_string(index);
  c.parent = parent;
  c.base = base;
  c.pivot = pivot;
  c.toParent = frs(toParent);
  c.fromParent = frs(fromParent);
  for (const auto& [n, d] : centerGens) c.centerGens.push_back(pf(n, d));
  return c;
}

// First exceptional chart over a base chart whose center is the curve
// {first coordinate = 1, last two (reciprocal) coordinates = 0}: shared by
// C1 (over (x0,x1,z2,z3)) and C6 (over (z0,z1,x2,x3)) up to slot order.
std::vector<ChartInfo> buildCharts() {
  std::vector<ChartInfo> cs;
  cs.reserve(kNumCharts);

  auto tail_chain = [&](int first, BaseKind base) {
    // charts first+1 .. first+4 over the chart `first`, identical formulas
    // for the two five-chart towers
    cs.push_back(makeChart(first + 1, first, base, 0,
                           {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"s*v", "1"}}},
                           {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"v", "s"}}},
                           {{"s", "1"}, {"v", "1"}}));
    cs.push_back(makeChart(first + 2, first + 1, base, 0,
                           {{{"s", "1"}, {"t", "1"}, {"s*u*(1+h*t) - h", "1+h*t"}, {"v", "1"}}},
                           {{{"s", "1"}, {"t", "1"}, {"u*(1+h*t) + h", "s*(1+h*t)"}, {"v", "1"}}},
                           {{"s", "1"}, {"u*(1+h*t) + h", "1+h*t"}}));
    cs.push_back(makeChart(first + 3, first + 2, base, 0,
                           {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"s*v*(1+h*t) + 1", "1+h*t"}}},
                           {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"v*(1+h*t) - 1", "s*(1+h*t)"}}},
                           {{"s", "1"}, {"v*(1+h*t) - 1", "1+h*t"}}));
    cs.push_back(makeChart(
        first + 4, first + 3, base, 0,
        {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"s*v*(1+h*t)^2 + 1", "(1+h*t)^2"}}},
        {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"v*(1+h*t)^2 - 1", "s*(1+h*t)^2"}}},
        {{"s", "1"}, {"v*(1+h*t)^2 - 1", "(1+h*t)^2"}}));
  };

  // C1: center (x0,x1,z2,z3) = (1,P,0,0)
  cs.push_back(makeChart(1, 0, BaseKind::XZ, 0,
                         {{{"1+s", "1"}, {"t", "1"}, {"s*u", "1"}, {"s*v", "1"}}},
                         {{{"s-1", "1"}, {"t", "1"}, {"u", "s-1"}, {"v", "s-1"}}},
                         {{"s-1", "1"}, {"u", "1"}, {"v", "1"}}));
  tail_chain(1, BaseKind::XZ);

  // C6: center (z0,z1,x2,x3) = (0,0,1,P)
  cs.push_back(makeChart(6, 0, BaseKind::ZX, 0,
                         {{{"s*u", "1"}, {"s*v", "1"}, {"1+s", "1"}, {"t", "1"}}},
                         {{{"u-1", "1"}, {"v", "1"}, {"s", "u-1"}, {"t", "u-1"}}},
                         {{"u-1", "1"}, {"s", "1"}, {"t", "1"}}));
  tail_chain(6, BaseKind::ZX);

  // C11: center (z0,z1,z2,z3) = (0,0,0,0)
  cs.push_back(makeChart(11, 0, BaseKind::ZZ, 0,
                         {{{"s", "1"}, {"s*t", "1"}, {"s*u", "1"}, {"s*v", "1"}}},
                         {{{"s", "1"}, {"t", "s"}, {"u", "s"}, {"v", "s"}}},
                         {{"s", "1"}, {"t", "1"}, {"u", "1"}, {"v", "1"}}));
  // C12: center (s11,t11,u11,v11) = (P,0,1,0)
  cs.push_back(makeChart(12, 11, BaseKind::ZZ, 1,
                         {{{"s", "1"}, {"t", "1"}, {"1 + t*u", "1"}, {"t*v", "1"}}},
                         {{{"s", "1"}, {"t", "1"}, {"u - 1", "t"}, {"v", "t"}}},
                         {{"t", "1"}, {"u - 1", "1"}, {"v", "1"}}));
  // C13: center (s12,t12,u12,v12) = (P,0,Q,-1)
  cs.push_back(makeChart(13, 12, BaseKind::ZZ, 1,
                         {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"t*v - 1", "1"}}},
                         {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"v + 1", "t"}}},
                         {{"t", "1"}, {"v + 1", "1"}}));
  // C14: center (s13,t13,u13,v13) = (0,0,1+h,0). The exceptional local
  // equation here is t = 0 (s is a ratio of two center generators).
  cs.push_back(makeChart(14, 13, BaseKind::ZZ, 1,
                         {{{"s*t", "1"}, {"t", "1"}, {"1 + h + t*u", "1"}, {"t*v", "1"}}},
                         {{{"s", "t"}, {"t", "1"}, {"u - 1 - h", "t"}, {"v", "t"}}},
                         {{"s", "1"}, {"t", "1"}, {"u - 1 - h", "1"}, {"v", "1"}}));
  // C15: center (s14,t14,u14,v14) = (P,0,-2Q-P/h,Q)
  cs.push_back(makeChart(15, 14, BaseKind::ZZ, 1,
                         {{{"s", "1"}, {"t", "1"}, {"h*t*v - 2*h*u - s", "h"}, {"u", "1"}}},
                         {{{"s", "1"}, {"t", "1"}, {"v", "1"}, {"h*u + 2*h*v + s", "h*t"}}},
                         {{"t", "1"}, {"h*u + 2*h*v + s", "h"}}));
  // C16: center (s15,t15,u15,v15) = (P,0,-P/h,Q)
  cs.push_back(makeChart(16, 15, BaseKind::ZZ, 1,
                         {{{"s", "1"}, {"t", "1"}, {"h*t*u - s", "h"}, {"v", "1"}}},
                         {{{"s", "1"}, {"t", "1"}, {"h*u + s", "h*t"}, {"v", "1"}}},
                         {{"t", "1"}, {"h*u + s", "h"}}));
  // C17: center (s16,t16,u16,v16) = (P,0,Q,Q/2+(1+h)P/h)
  cs.push_back(makeChart(
      17, 16, BaseKind::ZZ, 1,
      {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"2*h*t*v + h*u + 2*(1+h)*s", "2*h"}}},
      {{{"s", "1"}, {"t", "1"}, {"u", "1"}, {"2*h*v - h*u - 2*(1+h)*s", "2*h*t"}}},
      {{"t", "1"}, {"2*h*v - h*u - 2*(1+h)*s", "2*h"}}));

  // reorder into index order 1..17 (tail chains were appended out of order)
  std::vector<ChartInfo> ordered(kNumCharts);
  for (auto& c : cs) ordered[c.index - 1] = std::move(c);
  return ordered;
}

const std::vector<ChartInfo>& allCharts() {
  static const std::vector<ChartInfo> cs = buildCharts();
  return cs;
}

}  // namespace

const ChartInfo& chart(int i) {
  if (i < 1 || i > kNumCharts) throw std::out_of_range("chart index");
  return allCharts()[i - 1];
}

PolyFrac evalFracSym(const PolyFrac& f, const std::array<PolyFrac, 4>& c) {
  std::map<std::string, PolyFrac> bind;
  const auto& vars = chartVars();
  for (int i = 0; i < 4; ++i) bind.emplace(vars[i], c[i]);
  auto [nn, nd] = substitute(f.num(), bind, vars);
  auto [dn, dd] = substitute(f.den(), bind, vars);
  return PolyFrac(nn, nd) / PolyFrac(dn, dd);
}

std::array<PolyFrac, 4> affineExprsInChart(int i) {
  std::array<PolyFrac, 4> cur{pf("s"), pf("t"), pf("u"), pf("v")};
  int at = i;
  while (at != 0) {
    const auto& ch = chart(at);
    std::array<PolyFrac, 4> next;
    for (int k = 0; k < 4; ++k) next[k] = evalFracSym(ch.toParent[k], cur);
    cur = next;
    at = ch.parent;
  }
  auto inv = [](const PolyFrac& f) { return pf("1") / f; };
  switch (chart(i).base) {
    case BaseKind::XZ:
      return {cur[0], cur[1], cur[2] / cur[3], inv(cur[3])};
    case BaseKind::ZX:
      return {cur[0] / cur[1], inv(cur[1]), cur[2], cur[3]};
    case BaseKind::ZZ:
      return {cur[0] / cur[1], inv(cur[1]), cur[2] / cur[3], inv(cur[3])};
  }
  throw std::logic_error("bad BaseKind");
}

PolyFrac pullToChart(const PolyFrac& f, int i) {
  static const std::vector<std::string> xvars{"x0", "x1", "x2", "x3", "h"};
  auto xs = affineExprsInChart(i);
  std::map<std::string, PolyFrac> bind;
  for (int k = 0; k < 4; ++k) bind.emplace(xvars[k], xs[k]);
  auto fn = f.num().withVars(xvars);
  auto fd = f.den().withVars(xvars);
  auto [nn, nd] = substitute(fn, bind, chartVars());
  auto [dn, dd] = substitute(fd, bind, chartVars());
  return PolyFrac(nn, nd) / PolyFrac(dn, dd);
}

std::string chartReport(int i) {
  const auto& ch = chart(i);
  std::ostringstream os;
  os << "chart " << ch.name << "\n";
  os << "  coordinates (s_" << i << ", t_" << i << ", u_" << i << ", v_" << i << ")\n";
  os << "  parent " << (ch.parent == 0 ? std::string("base") : chart(ch.parent).name);
  switch (ch.base) {
    case BaseKind::XZ: os << " [(x0,x1,z2,z3)]"; break;
    case BaseKind::ZX: os << " [(z0,z1,x2,x3)]"; break;
    case BaseKind::ZZ: os << " [(z0,z1,z2,z3)]"; break;
  }
  os << "\n  center in parent coordinates:";
  for (const auto& g : ch.centerGens) os << " (" << g.str() << ")=0";
  os << "\n  substitution to parent: (";
  for (int k = 0; k < 4; ++k) os << (k ? ", " : "") << ch.toParent[k].str();
  os << ")\n  exceptional divisor E" << i << ": "
     << std::string{"stuv"[ch.pivot]} << "_" << i << " = 0\n";
  return os.str();
}

std::string towerReport() {
  std::string out;
  for (int i = 1; i <= kNumCharts; ++i) out += chartReport(i);
  return out;
}

}  // namespace kdv4
