#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv4/multipoly.hpp"
#include "kdv4/polyfrac.hpp"
#include "kdv4/ratfunc.hpp"

using namespace kdv4;

namespace {

UniPoly<Rat> randPoly(Rng& rng, int maxDeg) {
  UniPoly<Rat> p;
  int d = static_cast<int>(rng.intIn(0, maxDeg));
  for (int i = 0; i <= d; ++i)
    p = p + UniPoly<Rat>::monomial(i, rng.smallRat(6));
  return p;
}

UniPoly<Rat> randNonzeroPoly(Rng& rng, int maxDeg) {
  for (;;) {
    auto p = randPoly(rng, maxDeg);
    if (!p.isZero()) return p;
  }
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parseRat("3/6") == rat(1, 2));
  CHECK(parseRat("-7") == rat(-7));
  CHECK(ratStr(rat(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(parseRat("1/0"), std::invalid_argument);
}

TEST_CASE("univariate polynomial ring axioms on random samples") {
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = randPoly(rng, 5), b = randPoly(rng, 5), c = randPoly(rng, 5);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a - a == UniPoly<Rat>());
  }
}

TEST_CASE("univariate division and gcd") {
  // (x-1)^2 (x+2), (x-1)(x-3) over Q: gcd is the monic x-1
  auto x = UniPoly<Rat>::variable();
  auto one = UniPoly<Rat>(1);
  auto a = (x - one) * (x - one) * (x + UniPoly<Rat>(2));
  auto b = (x - one) * (x - UniPoly<Rat>(3));
  CHECK(gcd(a, b) == x - one);
  CHECK(a / (x - one) == (x - one) * (x + UniPoly<Rat>(2)));
  CHECK_THROWS_AS(gcd(UniPoly<Rat>(), UniPoly<Rat>()), UndefinedGcdError);

  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = randNonzeroPoly(rng, 3);
    auto p = randNonzeroPoly(rng, 4);
    auto q = randNonzeroPoly(rng, 4);
    auto d = gcd(p * g, q * g);
    // g divides the gcd of p*g, q*g exactly
    CHECK((d * (p * g / d)) == p * g);
    UniPoly<Rat> r = d;
    CHECK_NOTHROW(r = d / g.monic() * g.monic());
    CHECK(r == d);
  }
}

TEST_CASE("gcd over the coefficient field Q(h)") {
  // (e-1)^2 (e+h) and (e-1)(e-h) in Q(h)[e]: gcd is e-1
  auto e = UniPoly<QH>::variable();
  auto one = UniPoly<QH>(1);
  auto h = UniPoly<QH>(qh_h());
  auto a = (e - one) * (e - one) * (e + h);
  auto b = (e - one) * (e - h);
  CHECK(gcd(a, b) == e - one);
}

TEST_CASE("rational function reduction is canonical") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = randNonzeroPoly(rng, 4);
    auto b = randNonzeroPoly(rng, 4);
    auto g = randNonzeroPoly(rng, 3);
    RatFunc<Rat> f1(a * g, b * g), f2(a, b);
    CHECK(f1 == f2);
    CHECK(f1.den.lead() == Rat(1));
  }
  CHECK_THROWS_AS(RatFunc<Rat>(UniPoly<Rat>(1), UniPoly<Rat>()), DivideByZeroError);
}

TEST_CASE("valuation at the origin") {
  auto e = UniPoly<QH>::variable();
  // (e^2 + e^3) / e^5 has valuation -3
  Eps f(e * e + e * e * e, e * e * e * e * e);
  CHECK(f.ord() == -3);
  CHECK(f.lead() == qh(Rat(1)));
  CHECK(!Eps().ord().has_value());

  // 1/(1-e): Laurent coefficients are all 1
  Eps g(UniPoly<QH>(1), UniPoly<QH>(1) - e);
  CHECK(g.ord() == 0);
  CHECK(g.laurentCoeff(0) == qh(Rat(1)));
  CHECK(g.laurentCoeff(3) == qh(Rat(1)));

  // h*(1+e)/e has a simple pole with principal coefficient h
  Eps p(UniPoly<QH>(qh_h()) * (UniPoly<QH>(1) + e), e);
  CHECK(p.ord() == -1);
  CHECK(p.lead() == qh_h());
  CHECK(p.laurentCoeff(-1) == qh_h());
  CHECK(p.laurentCoeff(0) == qh_h());
  CHECK(p.laurentCoeff(1) == qh(Rat(0)));
}

TEST_CASE("valuation is additive on random samples") {
  Rng rng(2024);
  auto randQH = [&](long h) { return qh(rng.smallRat(h)); };
  for (int trial = 0; trial < 60; ++trial) {
    UniPoly<QH> na, nb;
    int la = static_cast<int>(rng.intIn(0, 3)), lb = static_cast<int>(rng.intIn(0, 3));
    na = UniPoly<QH>::monomial(la, qh(rng.nonzeroRat(5))) +
         UniPoly<QH>::monomial(la + 2, randQH(5));
    nb = UniPoly<QH>::monomial(lb, qh(rng.nonzeroRat(5))) +
         UniPoly<QH>::monomial(lb + 1, randQH(5));
    auto da = UniPoly<QH>::monomial(static_cast<int>(rng.intIn(0, 2)), qh(rng.nonzeroRat(5)));
    auto db = UniPoly<QH>::monomial(static_cast<int>(rng.intIn(0, 2)), qh(rng.nonzeroRat(5)));
    Eps f(na, da), g(nb, db);
    auto fg = f * g;
    REQUIRE(f.ord().has_value());
    REQUIRE(g.ord().has_value());
    CHECK(fg.ord() == *f.ord() + *g.ord());
    CHECK(fg.lead() == f.lead() * g.lead());
  }
}

TEST_CASE("multivariate polynomial parse, arithmetic, degrees") {
  std::vector<std::string> vars{"x0", "x1", "x2", "x3", "h"};
  auto p = MultiPoly::parse(vars, "-h*x0^2 - h*x0*x2 + h^2*x0*x2 + h*x0^2*x2 - h*x2^2 + h*x0*x2^2");
  CHECK(p.terms().size() == 6);
  // same polynomial assembled from factors
  auto q = MultiPoly::parse(vars, "-h*(x0^2 + x0*x2 - h*x0*x2 - x0^2*x2 + x2^2 - x0*x2^2)");
  CHECK(p == q);
  CHECK(p.degreeIn({"x0", "x1"}) == 2);
  CHECK(p.degreeIn({"x2", "x3"}) == 2);
  CHECK(p.degreeInVar("h") == 2);
  CHECK(MultiPoly::parse(vars, p.str()) == p);

  std::vector<Rat> at{rat(0), rat(0), rat(2), rat(0), rat(1)};
  CHECK(p.evalRat(at) == rat(-4));
}

TEST_CASE("multivariate ring axioms on random samples") {
  std::vector<std::string> vars{"a", "b", "c"};
  Rng rng(31337);
  auto randMP = [&]() {
    MultiPoly p(vars);
    int nterms = static_cast<int>(rng.intIn(0, 5));
    for (int t = 0; t < nterms; ++t) {
      MultiPoly m = MultiPoly::constant(vars, rng.smallRat(5));
      for (const auto& v : vars)
        m = m * MultiPoly::variable(vars, v).pow(static_cast<unsigned>(rng.intIn(0, 2)));
      p = p + m;
    }
    return p;
  };
  for (int trial = 0; trial < 100; ++trial) {
    auto a = randMP(), b = randMP(), c = randMP();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == MultiPoly(vars));
  }
}

TEST_CASE("fraction substitution") {
  std::vector<std::string> vars{"x2", "h"};
  std::vector<std::string> outVars{"e", "h"};
  auto f = MultiPoly::parse(vars, "h*x2");
  auto den = MultiPoly::parse(vars, "1 - x2");

  // substitute x2 = 1 + e into h*x2/(1-x2): expect -h*(1+e)/e
  std::map<std::string, PolyFrac> bind;
  bind.emplace("x2", PolyFrac(MultiPoly::parse(outVars, "1 + e")));
  auto [fn, fd] = substitute(f, bind, outVars);
  auto [dn, dd] = substitute(den, bind, outVars);
  PolyFrac result = PolyFrac(fn, fd) / PolyFrac(dn, dd);
  PolyFrac expected(MultiPoly::parse(outVars, "-h - h*e"), MultiPoly::parse(outVars, "e"));
  CHECK(eqFrac(result, expected));

  // projective-chart substitution x2 = z2/z3
  std::vector<std::string> zvars{"z2", "z3", "h"};
  std::map<std::string, PolyFrac> zbind;
  zbind.emplace("x2", PolyFrac(MultiPoly::parse(zvars, "z2"), MultiPoly::parse(zvars, "z3")));
  auto [zn, zd] = substitute(f, zbind, zvars);
  CHECK(eqFrac(PolyFrac(zn, zd),
               PolyFrac(MultiPoly::parse(zvars, "h*z2"), MultiPoly::parse(zvars, "z3"))));
}

TEST_CASE("fraction arithmetic and equality") {
  std::vector<std::string> vars{"x", "y"};
  PolyFrac a(MultiPoly::parse(vars, "x^2 - y^2"), MultiPoly::parse(vars, "x - y"));
  PolyFrac b(MultiPoly::parse(vars, "x + y"), MultiPoly::parse(vars, "1"));
  CHECK(eqFrac(a, b));          // equal as fractions despite uncancelled factor
  CHECK(eqFrac(a - b, PolyFrac(MultiPoly(vars), MultiPoly::parse(vars, "1"))));
  CHECK(eqFrac(a * b, b * b));
  CHECK_THROWS_AS(b / PolyFrac(MultiPoly(vars), MultiPoly::parse(vars, "1")),
                  DegenerateSubstitutionError);
}
