#include "kdv4/dynamics.hpp"

#include <sstream>

namespace kdv4 {

namespace {

RationalMapDef makeDef(std::vector<std::string> vars, std::string ambient,
                       const std::vector<std::pair<std::string, std::string>>& texts) {
  RationalMapDef d;
  d.vars = std::move(vars);
  d.ambient = std::move(ambient);
  for (const auto& [n, dn] : texts)
    d.comps.emplace_back(MultiPoly::parse(d.vars, n), MultiPoly::parse(d.vars, dn));
  return d;
}

}  // namespace

std::string RationalMapDef::serialize() const {
  std::ostringstream os;
  os << "ambient " << ambient << "\nvars";
  for (const auto& v : vars) os << ' ' << v;
  os << '\n';
  for (size_t i = 0; i < comps.size(); ++i)
    os << "comp" << i << " (" << comps[i].first.str() << ") / (" << comps[i].second.str() << ")\n";
  return os.str();
}

const RationalMapDef& phiDef() {
  static const RationalMapDef d = makeDef(
      phaseVars(), "(P1)^4",
      {{"x2", "1"},
       {"x3", "1"},
       {"-x2 + x2^2 - x0 + x0*x2 + h*x2", "1 - x2"},
       {"(-x1 - x3)*(1 - x2)^2 + 2 - x2 + h*x3", "(1 - x2)^2"}});
  return d;
}

const RationalMapDef& phiInverseDef() {
  static const RationalMapDef d = makeDef(
      phaseVars(), "(P1)^4",
      {{"-x2 + x0*x2 - x0 + x0^2 + h*x0", "1 - x0"},
       {"(-x1 - x3)*(1 - x0)^2 + 2 - x0 + h*x1", "(1 - x0)^2"},
       {"x0", "1"},
       {"x1", "1"}});
  return d;
}

const RationalMapDef& psiDef() {
  static const RationalMapDef d = makeDef(
      {"x0", "x1", "x2", "h", "i2"}, "A3",
      {{"x2", "1"},
       {"i2 - x0^2 - x0*x2 - x2^2 - 2*h*x0 + 2*h*x0*x1 - 2*h*x2 - 2*h*x0*x1*x2 - h*x1*x2^2 + "
        "h*x1*x2 - h^2*x1*x2",
        "h*(-x0 + h*x0 + x0^2 - 2*x2 + 2*x0*x2)"},
       {"-x2 + x2^2 - x0 + x0*x2 + h*x2", "1 - x2"}});
  return d;
}

const MultiPoly& invariantI1() {
  static const MultiPoly p = MultiPoly::parse(
      phaseVars(), "-h*x0^2 - h*x0*x2 + h^2*x0*x2 + h*x0^2*x2 - h*x2^2 + h*x0*x2^2");
  return p;
}

const MultiPoly& invariantI2() {
  static const MultiPoly p = MultiPoly::parse(
      phaseVars(),
      "2*h*x0 + x0^2 - 2*h*x0*x1 + 2*h*x2 + x0*x2 - h*x1*x2 + h^2*x1*x2 + 2*h*x0*x1*x2 + x2^2 + "
      "h*x1*x2^2 - h*x0*x3 + h^2*x0*x3 + h*x0^2*x3 - 2*h*x2*x3 + 2*h*x0*x2*x3");
  return p;
}

AffinePoint4 applyPhi(const AffinePoint4& p) {
  auto r = applyPhiVals<Rat>(p.x, p.h);
  return {r, p.h};
}

AffinePoint4 applyPhiInverse(const AffinePoint4& p) {
  auto r = applyPhiInverseVals<Rat>(p.x, p.h);
  return {r, p.h};
}

std::pair<Rat, Rat> evalInvariants(const AffinePoint4& p) {
  std::vector<Rat> vals{p.x[0], p.x[1], p.x[2], p.x[3], p.h};
  return {invariantI1().evalRat(vals), invariantI2().evalRat(vals)};
}

bool checkInvariantIdentity(const RationalMapDef& map, const MultiPoly& inv) {
  std::map<std::string, PolyFrac> bind;
  for (size_t i = 0; i < 4; ++i)
    bind.emplace(map.vars[i], PolyFrac(map.comps[i].first, map.comps[i].second));
  auto [num, den] = substitute(inv, bind, map.vars);
  // inv(phi(x)) - inv(x) == 0  <=>  num - inv*den == 0
  MultiPoly diff = num - inv.withVars(map.vars) * den;
  return diff.isZero();
}

bool checkComposesToIdentity(const RationalMapDef& first, const RationalMapDef& second) {
  std::map<std::string, PolyFrac> bind;
  for (size_t i = 0; i < 4; ++i)
    bind.emplace(first.vars[i], PolyFrac(first.comps[i].first, first.comps[i].second));
  for (size_t i = 0; i < 4; ++i) {
    auto [nn, nd] = substitute(second.comps[i].first, bind, first.vars);
    auto [dn, dd] = substitute(second.comps[i].second, bind, first.vars);
    // (nn/nd) / (dn/dd) should equal the coordinate variable x_i.
    PolyFrac composed = PolyFrac(nn, nd) / PolyFrac(dn, dd);
    PolyFrac xi(MultiPoly::variable(first.vars, first.vars[i]), MultiPoly::constant(first.vars, Rat(1)));
    if (!eqFrac(composed, xi)) return false;
  }
  return true;
}

}  // namespace kdv4
