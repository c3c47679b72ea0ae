#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "kdv4/dynamics.hpp"
#include "kdv4/invariant.hpp"

using namespace kdv4;

namespace {

// Value of a coefficient vector (in ansatz monomial basis) at an affine point.
Rat evalVector(const std::vector<Rat>& v, const std::vector<AnsatzMonomial>& mons,
               const std::array<Rat, 4>& x) {
  Rat s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    Rat t = v[j];
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < mons[j].e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("ansatz monomial families") {
  CHECK(bidegreeAnsatz().size() == 36);
  CHECK(totalDegreeAnsatz().size() == 15);
  for (const auto& m : bidegreeAnsatz()) {
    CHECK(m.e[0] + m.e[1] <= 2);
    CHECK(m.e[2] + m.e[3] <= 2);
  }
  for (const auto& m : totalDegreeAnsatz())
    CHECK(m.e[0] + m.e[1] + m.e[2] + m.e[3] <= 2);
  CHECK(bidegreeAnsatz().front().str() == "1");
  CHECK(bidegreeAnsatz().back().str() == "x0^2*x2^2");
}

TEST_CASE("conserved-quantity classes and derived constraints") {
  CHECK(invariantClassI1().str() ==
        "2*Ha+2*Hb-2*E1-E2-E4-2*E6-E7-E9-4*E11-E12-E13-E14-E16");
  CHECK(invariantClassI2().str() ==
        "2*Ha+2*Hb-E1-E2-E4-E5-E6-E7-E9-E10-3*E11-E12-E13-E14-E16-E17");
  auto cc1 = constraintFromClass(invariantClassI1());
  CHECK(cc1.da == 2);
  CHECK(cc1.db == 2);
  CHECK(cc1.mults ==
        std::array<int, 17>{2, 3, 3, 4, 4, 2, 3, 3, 4, 4, 4, 1, 2, 7, 7, 8, 8});
  auto cc2 = constraintFromClass(invariantClassI2());
  CHECK(cc2.mults ==
        std::array<int, 17>{1, 2, 2, 3, 4, 1, 2, 2, 3, 4, 3, 1, 2, 6, 6, 7, 8});
}

TEST_CASE("first conserved quantity is recovered from its class") {
  Rat h = rat(5, 7);
  auto cc = constraintFromClass(invariantClassI1());
  auto sys = vanishingSystem(cc, bidegreeAnsatz(), h, defaultSeeds());
  CHECK(sys.rows.size() >= 36);  // genuinely over-determined sampling
  auto kernel = kernelBasis(sys.rows, sys.unknowns);
  REQUIRE(kernel.size() == 2);
  auto rep = matchInvariants(sys, kernel, bidegreeAnsatz());
  CHECK(rep.matched);
  CHECK(rep.names == std::vector<std::string>{"1", "I1"});
  CHECK(rep.changeOfBasis.size() == 2);
  // The specialized conserved quantity itself solves every row.
  auto v1 = ansatzVector(invariantI1(), h, bidegreeAnsatz());
  for (const auto& row : sys.rows) {
    Rat s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v1[j];
    CHECK(s == 0);
  }
}

TEST_CASE("second conserved quantity class yields the full three-dimensional kernel") {
  Rat h = rat(5, 7);
  auto cc = constraintFromClass(invariantClassI2());
  auto sys = vanishingSystem(cc, bidegreeAnsatz(), h, defaultSeeds());
  auto kernel = kernelBasis(sys.rows, sys.unknowns);
  REQUIRE(kernel.size() == 3);
  auto rep = matchInvariants(sys, kernel, bidegreeAnsatz());
  CHECK(rep.matched);
  CHECK(rep.names == std::vector<std::string>{"1", "I1", "I2"});

  // Every kernel element is conserved along orbits at the specialized h.
  AffinePoint4 p{{rat(1, 3), rat(-2), rat(3), rat(1, 2)}, h};
  auto q = applyPhi(p);
  for (const auto& kv : kernel)
    CHECK(evalVector(kv, bidegreeAnsatz(), q.x) == evalVector(kv, bidegreeAnsatz(), p.x));
}

TEST_CASE("degenerate and over-constrained systems") {
  Rat h = rat(5, 7);
  // No conditions at all: every coefficient is free.
  auto free = constraintFromClass(2 * DivisorClass::Ha() + 2 * DivisorClass::Hb());
  auto sysFree = vanishingSystem(free, bidegreeAnsatz(), h, defaultSeeds());
  CHECK(sysFree.rows.empty());
  CHECK(kernelBasis(sysFree.rows, sysFree.unknowns).size() == 36);
  // One extra vanishing order along every divisor kills the kernel entirely.
  auto cc = constraintFromClass(invariantClassI1());
  for (auto& m : cc.mults) m += 1;
  auto sys = vanishingSystem(cc, bidegreeAnsatz(), h, defaultSeeds());
  CHECK(kernelBasis(sys.rows, sys.unknowns).empty());
}

TEST_CASE("literal total-degree ansatz audit: constants only") {
  Rat h = rat(5, 7);
  auto cc = constraintFromClass(invariantClassI1());
  auto sys = vanishingSystem(cc, totalDegreeAnsatz(), h, defaultSeeds());
  auto kernel = kernelBasis(sys.rows, sys.unknowns);
  REQUIRE(kernel.size() == 1);
  CHECK(ansatzVectorStr(kernel[0], totalDegreeAnsatz()) == "1");
  auto rep = matchInvariants(sys, kernel, totalDegreeAnsatz());
  CHECK(rep.note.find("not representable") != std::string::npos);
}

TEST_CASE("generic subspace is reported as a mismatch") {
  Rat h = rat(5, 7);
  auto cc = constraintFromClass(invariantClassI1());
  auto sys = vanishingSystem(cc, bidegreeAnsatz(), h, defaultSeeds());
  std::vector<std::vector<Rat>> fake(2, std::vector<Rat>(36, Rat(0)));
  fake[0][1] = 1;
  fake[1][2] = 1;
  auto rep = matchInvariants(sys, fake, bidegreeAnsatz());
  CHECK_FALSE(rep.matched);
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("end-to-end search with h-sample and seed consensus") {
  auto r1 = findInvariants(invariantClassI1(), 101);
  CHECK(r1.kernelDimension == 2);
  CHECK(r1.matched);
  REQUIRE(r1.recovered.size() == 2);
  CHECK(r1.recovered[0] == "1");
  CHECK(r1.recovered[1] == invariantI1().str());
  auto r2 = findInvariants(invariantClassI2(), 101);
  CHECK(r2.kernelDimension == 3);
  CHECK(r2.matched);
  REQUIRE(r2.recovered.size() == 3);
  CHECK(r2.recovered[2] == invariantI2().str());
  // Independent master seed reaches the same conclusion.
  auto r1b = findInvariants(invariantClassI1(), 424243);
  CHECK(r1b.kernelDimension == 2);
  CHECK(r1b.matched);
  CHECK(r1b.recovered == r1.recovered);
}
