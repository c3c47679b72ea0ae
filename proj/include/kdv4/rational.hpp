#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace kdv4 {

// Arbitrary-precision rational, canonical form maintained by GMP
// (gcd(num,den)=1, den>0, zero is 0/1).
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
  if (d == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// Parses "p", "-p/q" etc. Exact fractions only.
inline Rat parseRat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parseRat: bad rational '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parseRat: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string ratStr(const Rat& r) { return r.get_str(); }

// Seeded sampler for small-height rationals used in generic-point germs and
// line coefficients. The seed is recorded in every report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  long intIn(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  // Random rational with |num| <= height, 1 <= den <= height.
  Rat smallRat(long height = 20) {
    return rat(intIn(-height, height), intIn(1, height));
  }

  Rat nonzeroRat(long height = 20) {
    for (;;) {
      Rat r = smallRat(height);
      if (r != 0) return r;
    }
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

}  // namespace kdv4
