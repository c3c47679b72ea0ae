#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kdv4/rational.hpp"

namespace kdv4 {

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Bidegree {
  long a = 0;
  long b = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

// Measured bidegrees of phi^n for n = 0..nMax, independent of any Picard
// machinery: restrict to a random affine line in one factor at a time (the
// other factor frozen at random rationals), iterate with canonical univariate
// reduction after every step, and read off max(deg num, deg den) of the
// second-factor components. Entry n is the bidegree of the pullback of the
// second-factor hyperplane, so n=0 gives (0,1). `trials` independent lines
// are compared; all agreeing is the genericity check, disagreement triggers
// one extra round and a majority vote recorded in `warning`.
struct DegreeSequenceResult {
  std::vector<Bidegree> degrees;
  std::string warning;  // empty when every trial agreed
};
DegreeSequenceResult degreeSequence(int nMax, int trials, unsigned long seed);

// Quadratic-growth detection robust to quasi-polynomial sequences: searches
// for the smallest period p (up to 4) and onset such that along every residue
// class mod p the second differences are one and the same positive constant
// c from the onset onward; the leading coefficient is then c/(2p^2). Pure
// quadratics are the p = 1 case. Throws InsufficientDataError below length 6.
struct QuadFit {
  bool eventuallyQuadratic = false;
  Rat leadingCoefficient = 0;
  int onset = -1;
  int period = 0;
};
QuadFit quadraticFit(const std::vector<long>& seq);

// Degrees of psi^n (the three-dimensional reduction with the second invariant
// frozen at i2) along a random line in (x0,x1,x2), n = 0..nMax.
struct PsiDegreeResult {
  std::vector<long> degrees;
  std::string warning;
};
PsiDegreeResult psiDegreeSequence(const Rat& i2, int nMax, int trials, unsigned long seed);

}  // namespace kdv4
