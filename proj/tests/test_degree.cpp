#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv4/degree.hpp"
#include "kdv4/picard.hpp"
#include "kdv4/tower.hpp"

using namespace kdv4;

namespace {

const ActionMatrix& actionMatrix() {
  static const ActionMatrix m = computeActionMatrix(defaultSeeds());
  return m;
}

}  // namespace

TEST_CASE("measured bidegrees match the frozen table for n <= 10") {
  auto res = degreeSequence(10, 3, 101);
  CHECK(res.warning.empty());
  std::vector<Bidegree> expect = {{0, 1},   {1, 3},   {3, 6},   {6, 11},
                                  {11, 17}, {17, 24}, {24, 33}, {33, 43},
                                  {43, 54}, {54, 67}, {67, 81}};
  CHECK(res.degrees == expect);
}

TEST_CASE("measured bidegrees equal the lattice-action predictions") {
  auto res = degreeSequence(10, 3, 424243);
  const ActionMatrix& m = actionMatrix();
  for (int n = 0; n <= 10; ++n) {
    auto [pa, pb] = predictedBidegree(m, n, 'b');
    CHECK(res.degrees[static_cast<std::size_t>(n)].a == pa);
    CHECK(res.degrees[static_cast<std::size_t>(n)].b == pb);
  }
}

TEST_CASE("degree sequence is monotone non-decreasing") {
  auto res = degreeSequence(10, 3, 7);
  for (std::size_t n = 1; n < res.degrees.size(); ++n) {
    CHECK(res.degrees[n].a >= res.degrees[n - 1].a);
    CHECK(res.degrees[n].b >= res.degrees[n - 1].b);
  }
}

TEST_CASE("quadratic fit: textbook cases") {
  CHECK_THROWS_AS(quadraticFit({0, 1, 4, 9, 16}), InsufficientDataError);

  auto sq = quadraticFit({0, 1, 4, 9, 16, 25, 36});
  CHECK(sq.eventuallyQuadratic);
  CHECK(sq.leadingCoefficient == rat(1));
  CHECK(sq.onset == 0);
  CHECK(sq.period == 1);

  auto ex = quadraticFit({1, 2, 4, 8, 16, 32, 64});
  CHECK_FALSE(ex.eventuallyQuadratic);
}

TEST_CASE("quadratic fit on the measured degree sequences") {
  auto res = degreeSequence(10, 3, 101);
  std::vector<long> da, db;
  for (const auto& d : res.degrees) {
    da.push_back(d.a);
    db.push_back(d.b);
  }
  // The second differences cycle through 1,2,1 with period three, so the
  // growth is quadratic in the quasi-polynomial sense with leading
  // coefficient 12/(2*3^2) = 2/3.
  auto fa = quadraticFit(da);
  auto fb = quadraticFit(db);
  CHECK(fa.eventuallyQuadratic);
  CHECK(fb.eventuallyQuadratic);
  CHECK(fb.leadingCoefficient == rat(2, 3));
  CHECK(fb.period == 3);
  CHECK(fa.leadingCoefficient == rat(2, 3));
}

TEST_CASE("reduced map degrees grow quadratically as well") {
  auto res = psiDegreeSequence(rat(8), 10, 3, 101);
  CHECK(res.degrees ==
        std::vector<long>{1, 3, 5, 9, 15, 23, 33, 45, 59, 75, 93});
  for (std::size_t n = 1; n < res.degrees.size(); ++n)
    CHECK(res.degrees[n] >= res.degrees[n - 1]);
  auto f = quadraticFit(res.degrees);
  CHECK(f.eventuallyQuadratic);
  CHECK(f.period == 1);
  CHECK(f.leadingCoefficient == rat(1));
  CHECK(f.onset == 1);
  // Repeatability across an independent seed battery.
  auto res2 = psiDegreeSequence(rat(8), 10, 3, 424243);
  CHECK(res2.degrees == res.degrees);
}
