#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdv4/charts.hpp"
#include "kdv4/dynamics.hpp"

namespace kdv4 {

// Raised when randomized generic-germ sampling cannot produce a consistent
// answer (samples disagree or every sample hits a forbidden locus).
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the Picard lattice in the basis (Ha, Hb, E1..E17).
struct DivisorClass {
  std::array<long, 19> c{};

  long& ha() { return c[0]; }
  long& hb() { return c[1]; }
  long& e(int i) { return c.at(1 + i); }  // i = 1..17
  long ha() const { return c[0]; }
  long hb() const { return c[1]; }
  long e(int i) const { return c.at(1 + i); }

  static DivisorClass Ha();
  static DivisorClass Hb();
  static DivisorClass E(int i);

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(long k, DivisorClass a);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  std::string str() const;
};

// Class of the strict (proper) transform of the exceptional divisor E_i.
DivisorClass primeExceptionalClass(int i);

// A section of O(da, db) is represented by its affine polynomial in
// (x0,x1,x2,x3,h) together with the declared bidegree. The declared bidegree
// may exceed the polynomial's measured degree: the constant 1 with bidegree
// (1,0) is the section cut out by the hyperplane at infinity of the first
// factor (z1 = 0), and likewise (0,1) gives z3 = 0.
struct Section {
  MultiPoly poly;
  int da = 0;
  int db = 0;
};

// Wraps an affine polynomial with its measured bidegree.
Section sectionOf(const MultiPoly& f);
Section sectionOf(const std::string& f);
Section infinitySectionA();  // divisor z1 = 0
Section infinitySectionB();  // divisor z3 = 0

// One-parameter family of points approaching a generic point of a prime
// divisor: affine coordinates as exact rational functions of the local
// parameter eps, with the parameter h specialized to a sampled rational (a
// symbolic h makes the coefficient field Q(h) and deep-chart reductions
// intractable; specializing can only raise an order, never lower it, and the
// multi-seed consensus guards against unlucky samples). The divisor is
// reached as eps -> 0. The value field QH is reused here as Q(eps).
struct Germ {
  std::array<QH, 4> x;
  Rat h;
  std::string label;
};

// Generic germ of the exceptional divisor E_i (pivot chart coordinate = eps,
// remaining chart coordinates and h sampled).
Germ exceptionalGerm(int i, Rng& rng);
// Same, but with a caller-prescribed value of h (used when several germs must
// share one specialization, e.g. when assembling a linear system at fixed h).
Germ exceptionalGerm(int i, Rng& rng, const Rat& h);

// Evaluates a section's polynomial on a germ.
QH evalSection(const Section& f, const Germ& g);

// Valuation of a section along the divisor carrying the germ:
//   ord_eps(f(germ)) - da*min(0, ord x0, ord x1) - db*min(0, ord x2, ord x3).
// The subtracted terms are the pole orders a generic section of O(da,db)
// acquires along the divisor, so the result is the vanishing order of the
// section's zero divisor.
int ordAlongGerm(const Section& f, const Germ& g);

// Multiplicity of the section's divisor along E_i with multi-seed consensus.
int multAlong(const Section& f, int i, std::span<const unsigned long> seeds);
std::array<int, 17> multTable(const Section& f, std::span<const unsigned long> seeds);

// Default seed triple used by the consensus routines.
std::span<const unsigned long> defaultSeeds();

// Class of the strict transform of the section's divisor:
//   da*Ha + db*Hb - sum_i m_i * primeExceptionalClass(i).
DivisorClass properClassOf(const Section& f, std::span<const unsigned long> seeds);

// Inverse of properClassOf on the multiplicity data: recovers (m_1..m_17)
// from a class by back-substitution through the triangular prime-class basis.
std::array<int, 17> classToMults(const DivisorClass& cls);

// Generic germ of a prime divisor other than the exceptionals:
//   "x2-1"  the hypersurface x2 = 1 (the one contracted by the map)
//   "x0-1"  the hypersurface x0 = 1
//   "inf-a" the hyperplane at infinity of the first factor (z1 = 0)
//   "inf-b" the hyperplane at infinity of the second factor (z3 = 0)
Germ namedHypersurfaceGerm(const std::string& name, Rng& rng);

// A prime divisor that can appear in valuation decompositions: germ sampler
// plus the divisor's strict-transform class.
struct Candidate {
  std::string label;
  int exceptionalIndex = 0;  // 1..17 for E_i, 0 for named hypersurfaces
  DivisorClass cls;
};

// The 17 exceptional divisors followed by x2-1, inf-a, inf-b. The named
// hypersurface classes are computed once via properClassOf.
const std::vector<Candidate>& candidateTable();
Germ candidateGerm(const Candidate& cand, Rng& rng);

}  // namespace kdv4
