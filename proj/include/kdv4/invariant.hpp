#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "kdv4/tower.hpp"

namespace kdv4 {

// One monomial x0^e0 x1^e1 x2^e2 x3^e3 of the search ansatz.
struct AnsatzMonomial {
  std::array<int, 4> e{};
  std::string str() const;
  friend bool operator==(const AnsatzMonomial&, const AnsatzMonomial&) = default;
};

// The working ansatz: all monomials of bidegree (<=2, <=2), i.e. e0+e1 <= 2
// and e2+e3 <= 2. 36 monomials. This is the ansatz consistent with the target
// classes 2Ha + 2Hb (the known conserved quantities contain monomials such as
// x0^2*x2^2 of total degree 4).
const std::vector<AnsatzMonomial>& bidegreeAnsatz();

// The literal total-degree-<=2 ansatz (15 monomials). Kept only as an audit
// variant: it cannot contain the conserved quantities and its kernel under the
// same vanishing constraints is recorded for comparison.
const std::vector<AnsatzMonomial>& totalDegreeAnsatz();

// A target divisor class together with the derived data the linear system
// needs: the bidegree (da, db) of the ansatz hypersurface and the required
// vanishing multiplicities m1..m17 along the exceptional divisors (recovered
// from the class by back-substitution through the prime-class basis).
struct ClassConstraint {
  DivisorClass target;
  int da = 0;
  int db = 0;
  std::array<int, 17> mults{};
};
ClassConstraint constraintFromClass(const DivisorClass& target);

// Strict-transform classes of the two conserved-quantity hypersurfaces,
// computed once from their defining polynomials via the valuation tower.
const DivisorClass& invariantClassI1();
const DivisorClass& invariantClassI2();

// The vanishing constraints assembled as exact linear conditions on the
// ansatz coefficients. h is specialized to a sampled rational (symbolic h
// makes the deep-chart germ arithmetic intractable; the kernel at a generic
// rational h has the same dimension, and the multi-sample consensus in
// findInvariants guards against unlucky values). Each seed contributes an
// independent choice of transverse germ constants; a true identity in those
// constants must satisfy every row.
struct VanishingSystem {
  Rat h;
  std::size_t unknowns = 0;
  std::vector<std::vector<Rat>> rows;
};
VanishingSystem vanishingSystem(const ClassConstraint& constraint,
                                const std::vector<AnsatzMonomial>& ansatz,
                                const Rat& h,
                                std::span<const unsigned long> seeds);

// Exact kernel basis (reduced echelon form over Q) of the row system.
std::vector<std::vector<Rat>> kernelBasis(const std::vector<std::vector<Rat>>& rows,
                                          std::size_t unknowns);

// Compares the kernel with the span of the candidate solutions
// {1, I1, I2} specialized at the system's h value.
struct MatchReport {
  std::size_t kernelDimension = 0;
  bool matched = false;
  // Candidates (subset of "1", "I1", "I2") that satisfy every row.
  std::vector<std::string> names;
  // Coordinates of each kernel basis vector in the matched candidates.
  std::vector<std::vector<Rat>> changeOfBasis;
  std::string note;
};
MatchReport matchInvariants(const VanishingSystem& sys,
                            const std::vector<std::vector<Rat>>& kernel,
                            const std::vector<AnsatzMonomial>& ansatz);

// Coefficient vector of a conserved quantity (or any polynomial in
// x0..x3, h) in the ansatz monomial basis, with h specialized.
std::vector<Rat> ansatzVector(const MultiPoly& poly, const Rat& h,
                              const std::vector<AnsatzMonomial>& ansatz);

// Renders a coefficient vector as a polynomial in x0..x3.
std::string ansatzVectorStr(const std::vector<Rat>& v,
                            const std::vector<AnsatzMonomial>& ansatz);

// End-to-end search with consensus over several sampled h values. Throws
// InconclusiveError if the samples disagree on the kernel dimension or on the
// matched candidate set.
struct InvariantSearch {
  std::size_t kernelDimension = 0;
  bool matched = false;
  // Matched candidates rendered symbolically over Q(h) ("1" plus the
  // conserved-quantity polynomials).
  std::vector<std::string> recovered;
  std::string note;
};
InvariantSearch findInvariants(const DivisorClass& target, unsigned long seed,
                               int hSamples = 3,
                               const std::vector<AnsatzMonomial>* ansatz = nullptr);

}  // namespace kdv4
