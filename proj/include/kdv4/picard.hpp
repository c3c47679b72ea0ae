#pragma once

#include <optional>

#include "kdv4/tower.hpp"
#include "kdv4/unipoly.hpp"

namespace kdv4 {

// Where each column of the pull-back matrix comes from: computed by the
// valuation machinery, taken from the documented reference table because the
// computation was inconclusive, or both sources in exact agreement.
enum class ColumnProvenance { Computed, ReferenceAsserted, BothAgree };

struct PullbackColumn {
  DivisorClass cls;
  ColumnProvenance provenance = ColumnProvenance::Computed;
  std::string note;
};

// Class of the pull-back of a generic section class of O(da, db); only the
// basis cases (1,0) and (0,1) are used. Computed as the strict-transform
// class of the cleared numerator of (generic linear section) o phi plus the
// valuation of the pulled section along every candidate prime divisor.
DivisorClass pullbackSectionClass(int da, int db, std::span<const unsigned long> seeds);

// Class of the pull-back of the basis class E_j: for every candidate prime
// divisor, the minimum valuation of the pulled-back generators of the j-th
// blow-up center, times the candidate's strict class. If a candidate's image
// leaves the coordinate patch the generators live in (a generator acquires a
// pole), its contribution is taken as zero and *sawOffChart is set; such a
// column is only trusted when it also matches the reference table.
DivisorClass pullbackExceptional(int j, std::span<const unsigned long> seeds,
                                 bool* sawOffChart = nullptr);

// Documented images of the basis (Ha, Hb, E1..E17) under the pull-back.
const std::array<DivisorClass, 19>& referenceActionColumns();

// The pull-back action on the Picard lattice; column c holds the image of
// the c-th basis class.
struct ActionMatrix {
  std::array<PullbackColumn, 19> cols;

  long entry(int r, int c) const { return cols[c].cls.c[r]; }
  DivisorClass apply(const DivisorClass& v) const;
  std::string str() const;
};

// Computes every column and reconciles it against the reference table:
// agreement -> BothAgree; inconclusive computation -> ReferenceAsserted; a
// cleanly computed column that contradicts the reference is a hard error.
ActionMatrix computeActionMatrix(std::span<const unsigned long> seeds);

// Exact monic characteristic polynomial of the 19x19 action.
UniPoly<Rat> charPoly(const ActionMatrix& m);

// One factor of the characteristic polynomial. cyclotomicOrder is d when the
// factor is the d-th cyclotomic polynomial, -1 for the factor t, and 0 for a
// residual factor that is neither (spectral radius then uncertified).
struct FactorPower {
  UniPoly<Rat> factor;
  int power = 0;
  int cyclotomicOrder = 0;
};

std::vector<FactorPower> factorIntoCyclotomics(const UniPoly<Rat>& p);

// The d-th cyclotomic polynomial.
UniPoly<Rat> cyclotomic(int d);

// Jordan block sizes for each irreducible factor, from the rank sequence of
// its powers evaluated on the matrix.
struct JordanData {
  FactorPower factor;
  std::vector<int> blockSizes;  // descending
};
std::vector<JordanData> jordanStructure(const ActionMatrix& m,
                                        const std::vector<FactorPower>& factors);

// Degree-growth certificate: all eigenvalues are zero or roots of unity and
// the largest Jordan block at a modulus-one eigenvalue has size k, so the
// degrees of the iterates grow like n^(k-1).
struct GrowthReport {
  UniPoly<Rat> charpoly;
  std::vector<FactorPower> factors;
  std::vector<JordanData> jordan;
  bool allEigenvaluesZeroOrRootsOfUnity = false;
  int maxUnitCircleBlock = 0;
  int degreeGrowthExponent = -1;  // -1 when uncertified
  std::string summary() const;
};
GrowthReport growthCertificate(const ActionMatrix& m);

// (Ha, Hb) coefficients of M^n applied to the hyperplane class of the given
// factor ('a' or 'b'): the predicted bidegree of the n-th iterate's pull-back
// of that hyperplane class.
std::pair<long, long> predictedBidegree(const ActionMatrix& m, int n, char factor);

// Integer basis of the fixed sublattice ker(M - I) (primitive vectors).
std::vector<DivisorClass> fixedClasses(const ActionMatrix& m);

}  // namespace kdv4
