#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv4/dynamics.hpp"

using namespace kdv4;

TEST_CASE("forward map at frozen points") {
  AffinePoint4 p{{rat(0), rat(0), rat(2), rat(0)}, rat(1)};
  auto q = applyPhi(p);
  CHECK(q.x[0] == rat(2));
  CHECK(q.x[1] == rat(0));
  CHECK(q.x[2] == rat(-4));
  CHECK(q.x[3] == rat(0));

  AffinePoint4 o{{rat(0), rat(0), rat(0), rat(0)}, rat(1)};
  auto qo = applyPhi(o);
  CHECK(qo.x[0] == rat(0));
  CHECK(qo.x[1] == rat(0));
  CHECK(qo.x[2] == rat(0));
  CHECK(qo.x[3] == rat(2));
}

TEST_CASE("pole detection") {
  AffinePoint4 p{{rat(3), rat(5), rat(1), rat(7)}, rat(1)};
  CHECK_THROWS_AS(applyPhi(p), PoleError);
  AffinePoint4 q{{rat(1), rat(5), rat(2), rat(7)}, rat(1)};
  CHECK_THROWS_AS(applyPhiInverse(q), PoleError);
}

TEST_CASE("inverse composes to identity, symbolically") {
  CHECK(checkComposesToIdentity(phiDef(), phiInverseDef()));
  CHECK(checkComposesToIdentity(phiInverseDef(), phiDef()));
}

TEST_CASE("both conserved quantities are exactly invariant, symbolically") {
  CHECK(checkInvariantIdentity(phiDef(), invariantI1()));
  CHECK(checkInvariantIdentity(phiDef(), invariantI2()));
  CHECK(checkInvariantIdentity(phiInverseDef(), invariantI1()));
  CHECK(checkInvariantIdentity(phiInverseDef(), invariantI2()));
}

TEST_CASE("frozen invariant values") {
  AffinePoint4 p{{rat(0), rat(0), rat(2), rat(0)}, rat(1)};
  auto [i1, i2] = evalInvariants(p);
  CHECK(i1 == rat(-4));
  CHECK(i2 == rat(8));
}

TEST_CASE("invariants are constant along random orbits") {
  Rng rng(4242);
  int orbits = 0;
  while (orbits < 5) {
    AffinePoint4 p{{rng.smallRat(4), rng.smallRat(4), rng.smallRat(4), rng.smallRat(4)},
                   rng.nonzeroRat(4)};
    auto [i1, i2] = evalInvariants(p);
    try {
      AffinePoint4 q = p;
      for (int n = 0; n < 20; ++n) {
        q = applyPhi(q);
        auto [j1, j2] = evalInvariants(q);
        CHECK(j1 == i1);
        CHECK(j2 == i2);
      }
      // walk back to the start
      for (int n = 0; n < 20; ++n) q = applyPhiInverse(q);
      CHECK(q.x == p.x);
      ++orbits;
    } catch (const PoleError&) {
      // orbit hit the indeterminacy locus; resample
    }
  }
}

TEST_CASE("reduced 3D step agrees with the 4D map on its level set") {
  Rng rng(555);
  int checked = 0;
  while (checked < 10) {
    AffinePoint4 p{{rng.smallRat(5), rng.smallRat(5), rng.smallRat(5), rng.smallRat(5)},
                   rng.nonzeroRat(5)};
    auto [i1, i2] = evalInvariants(p);
    try {
      auto q = applyPhiVals<Rat>(p.x, p.h);
      auto r = applyPsiVals<Rat>({p.x[0], p.x[1], p.x[2]}, i2, p.h);
      CHECK(r[0] == q[0]);
      CHECK(r[1] == q[1]);
      CHECK(r[2] == q[2]);
      ++checked;
    } catch (const PoleError&) {
      // resample on poles of either map
    }
  }
}

TEST_CASE("maps evaluate over the symbolic coefficient field") {
  // run the map on a line germ x(s) with exact Q(s) coordinates and check the
  // first conserved quantity stays literally constant in s
  using F = RatFunc<Rat>;
  F s = F::variable();
  std::array<F, 4> x{F(2) + s, F(1) - s, F(3) * s, F(5)};
  F h(rat(1, 2));
  auto inv = [&](const std::array<F, 4>& v) {
    // -h*x0^2 - h*x0*x2 + h^2*x0*x2 + h*x0^2*x2 - h*x2^2 + h*x0*x2^2
    const F &a = v[0], &c = v[2];
    return F(0) - h * a * a - h * a * c + h * h * a * c + h * a * a * c - h * c * c + h * a * c * c;
  };
  F before = inv(x);
  auto y = applyPhiVals<F>(x, h);
  CHECK(inv(y) == before);
  auto back = applyPhiInverseVals<F>(y, h);
  CHECK(back == x);
}

TEST_CASE("map definitions serialize with exact fractions") {
  auto text = phiDef().serialize();
  CHECK(text.find("ambient (P1)^4") != std::string::npos);
  CHECK(text.find("x0") != std::string::npos);
  CHECK(psiDef().serialize().find("ambient A3") != std::string::npos);
}
