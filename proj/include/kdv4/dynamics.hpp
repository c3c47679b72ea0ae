#pragma once

#include <array>
#include <string>
#include <vector>

#include "kdv4/polyfrac.hpp"
#include "kdv4/ratfunc.hpp"

namespace kdv4 {

struct PoleError : std::domain_error {
  std::string where;
  explicit PoleError(std::string w) : std::domain_error("pole: " + w + " vanishes"), where(std::move(w)) {}
};

// Rational self-map given by exact component fractions over an explicit
// variable list. Ambient is "(P1)^4" or "P2xP2" for the 4D map, "A3" for the
// reduced 3D map.
struct RationalMapDef {
  std::vector<std::string> vars;
  std::vector<std::pair<MultiPoly, MultiPoly>> comps;
  std::string ambient;

  std::string serialize() const;
};

inline const std::vector<std::string>& phaseVars() {
  static const std::vector<std::string> v{"x0", "x1", "x2", "x3", "h"};
  return v;
}

const RationalMapDef& phiDef();
const RationalMapDef& phiInverseDef();
const RationalMapDef& psiDef();  // vars x0,x1,x2,h,i2

const MultiPoly& invariantI1();
const MultiPoly& invariantI2();

struct AffinePoint4 {
  std::array<Rat, 4> x;
  Rat h;
};

// Forward map: shifts (x0,x1) <- (x2,x3) and applies the coupled step.
// Generic over the coordinate ring: exact rationals, line germs in Q(s),
// Laurent germs in eps over Q(h).
template <class F>
std::array<F, 4> applyPhiVals(const std::array<F, 4>& x, const F& h) {
  F one_minus = F(1) - x[2];
  if (isZeroVal(one_minus)) throw PoleError("1-x2");
  std::array<F, 4> r{x[2], x[3], F(0), F(0)};
  r[2] = F(0) - x[2] - x[0] + h * x[2] / one_minus;
  r[3] = F(0) - x[1] - x[3] + (F(2) - x[2] + h * x[3]) / (one_minus * one_minus);
  return r;
}

template <class F>
std::array<F, 4> applyPhiInverseVals(const std::array<F, 4>& xb, const F& h) {
  F one_minus = F(1) - xb[0];
  if (isZeroVal(one_minus)) throw PoleError("1-x0bar");
  std::array<F, 4> r;
  r[2] = xb[0];
  r[3] = xb[1];
  r[0] = F(0) - xb[2] - xb[0] + h * xb[0] / one_minus;
  r[1] = F(0) - xb[1] - xb[3] + (F(2) - xb[0] + h * xb[1]) / (one_minus * one_minus);
  return r;
}

// Reduced 3D step with the value of I2 as a fixed parameter.
template <class F>
std::array<F, 3> applyPsiVals(const std::array<F, 3>& x, const F& i2, const F& h) {
  F one_minus = F(1) - x[2];
  if (isZeroVal(one_minus)) throw PoleError("1-x2");
  F lin = h * (F(0) - x[0] + h * x[0] + x[0] * x[0] - F(2) * x[2] + F(2) * x[0] * x[2]);
  if (isZeroVal(lin)) throw PoleError("h*(-x0+h*x0+x0^2-2*x2+2*x0*x2)");
  std::array<F, 3> r;
  r[0] = x[2];
  F no_x3 = x[0] * x[0] + x[0] * x[2] + x[2] * x[2] + F(2) * h * (x[0] - x[0] * x[1] + x[2]) +
            h * x[1] * x[2] * (F(2) * x[0] + x[2] - F(1) + h);
  r[1] = (i2 - no_x3) / lin;
  r[2] = F(0) - x[2] - x[0] + h * x[2] / one_minus;
  return r;
}

AffinePoint4 applyPhi(const AffinePoint4& p);
AffinePoint4 applyPhiInverse(const AffinePoint4& p);
std::pair<Rat, Rat> evalInvariants(const AffinePoint4& p);

// Exact symbolic check that inv(map(x)) - inv(x) == 0 after clearing
// denominators. No sampling.
bool checkInvariantIdentity(const RationalMapDef& map, const MultiPoly& inv);

// Symbolic check that the composition of the two maps is the identity
// 4-tuple (used to validate the hand-derived inverse).
bool checkComposesToIdentity(const RationalMapDef& first, const RationalMapDef& second);

}  // namespace kdv4
