#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdv4/rational.hpp"

namespace kdv4 {

struct UndefinedGcdError : std::domain_error {
  UndefinedGcdError() : std::domain_error("gcd(0,0) is undefined") {}
};

// Dense univariate polynomial over a field K. K must be constructible from
// long and support +,-,*,/,==. Invariant: coefficient vector is empty (zero
// polynomial) or has a nonzero leading entry.
template <class K>
struct UniPoly {
  std::vector<K> c;  // c[i] is the coefficient of x^i

  UniPoly() = default;
  explicit UniPoly(K k) {
    if (!(k == K(0))) c.push_back(std::move(k));
  }
  explicit UniPoly(long v) : UniPoly(K(v)) {}

  static UniPoly monomial(int deg, K coeff) {
    UniPoly p;
    if (coeff == K(0)) return p;
    p.c.assign(deg + 1, K(0));
    p.c[deg] = std::move(coeff);
    return p;
  }
  static UniPoly variable() { return monomial(1, K(1)); }

  bool isZero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero

  int lowDegree() const {  // smallest index with nonzero coefficient
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!(c[i] == K(0))) return static_cast<int>(i);
    return -1;
  }

  const K& lead() const {
    if (isZero()) throw std::domain_error("lead of zero polynomial");
    return c.back();
  }

  void trim() {
    while (!c.empty() && c.back() == K(0)) c.pop_back();
  }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c.size())) return K(0);
    return c[i];
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& k : r.c) k = K(0) - k;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    if (a.isZero() || b.isZero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == K(0)) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend UniPoly operator*(const K& k, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c) x = k * x;
    r.trim();
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }

  // Euclidean division; requires b != 0.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.isZero()) throw std::domain_error("UniPoly division by zero");
    UniPoly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, K(0));
    const K& bl = b.lead();
    while (!r.isZero() && r.degree() >= b.degree()) {
      int d = r.degree() - b.degree();
      K f = r.lead() / bl;
      q.c[d] = q.c[d] + f;
      for (int i = 0; i <= b.degree(); ++i) r.c[i + d] = r.c[i + d] - f * b.c[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.isZero()) throw std::domain_error("UniPoly inexact division");
    return q;
  }

  UniPoly monic() const {
    if (isZero()) return *this;
    UniPoly r = *this;
    K inv = K(1) / lead();
    for (auto& k : r.c) k = inv * k;
    return r;
  }

  template <class F>
  F eval(const F& x) const {
    F r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + F(*it);
    return r;
  }

  // Rendering in descending degree; requires K to be ordered and streamable
  // (instantiated only for such K).
  std::string str(const std::string& var) const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
      if (c[static_cast<std::size_t>(d)] == K(0)) continue;
      K a = c[static_cast<std::size_t>(d)];
      bool neg = a < K(0);
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (neg) a = K(0) - a;
      bool unitCoeff = a == K(1) && d > 0;
      if (!unitCoeff) os << a;
      if (d > 0) {
        if (!unitCoeff) os << "*";
        os << var;
        if (d > 1) os << "^" << d;
      }
      first = false;
    }
    return os.str();
  }
};

namespace detail {

// Subresultant PRS gcd of primitive integer polynomials; avoids the
// coefficient blow-up of naive Euclid over Q.
inline std::vector<mpz_class> subresultantGcdZ(std::vector<mpz_class> a, std::vector<mpz_class> b);

inline mpz_class contentZ(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

}  // namespace detail

// Monic gcd. Over Q this routes through a fraction-free subresultant PRS on
// primitive integer parts; over other fields it uses Euclid with monic
// normalization at each step (coefficients there are themselves reduced).
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
  if (a.isZero() && b.isZero()) throw UndefinedGcdError();
  if constexpr (std::is_same_v<K, Rat>) {
    if (a.isZero()) return b.monic();
    if (b.isZero()) return a.monic();
    auto toZ = [](const UniPoly<Rat>& p) {
      mpz_class l = 1;
      for (const auto& k : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), k.get_den_mpz_t());
      std::vector<mpz_class> v;
      v.reserve(p.c.size());
      for (const auto& k : p.c) {
        Rat s = k * Rat(l);
        v.push_back(s.get_num());
      }
      mpz_class c = detail::contentZ(v);
      if (c != 0)
        for (auto& x : v) x /= c;
      return v;
    };
    auto g = detail::subresultantGcdZ(toZ(a), toZ(b));
    UniPoly<Rat> r;
    r.c.assign(g.begin(), g.end());
    r.trim();
    return r.monic();
  } else {
    while (!b.isZero()) {
      auto [q, r] = divmod(a, b);
      (void)q;
      a = std::move(b);
      b = std::move(r).monic();
    }
    return a.monic();
  }
}

namespace detail {

inline std::vector<mpz_class> subresultantGcdZ(std::vector<mpz_class> a, std::vector<mpz_class> b) {
  auto deg = [](const std::vector<mpz_class>& p) { return static_cast<int>(p.size()) - 1; };
  auto trim = [](std::vector<mpz_class>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  if (b.empty()) return a;

  // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
  auto prem = [&](std::vector<mpz_class> u, const std::vector<mpz_class>& v) {
    int dv = deg(v);
    const mpz_class& lv = v.back();
    while (static_cast<int>(u.size()) - 1 >= dv && !u.empty()) {
      int du = static_cast<int>(u.size()) - 1;
      mpz_class lu = u.back();
      for (auto& x : u) x *= lv;
      for (int i = 0; i <= dv; ++i) u[i + du - dv] -= lu * v[i];
      trim(u);
    }
    return u;
  };

  mpz_class g = 1, hc = 1;
  for (;;) {
    int delta = deg(a) - deg(b);
    auto r = prem(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) {
      b.assign(1, mpz_class(1));
      break;
    }
    mpz_class divisor = g;
    for (int i = 0; i < delta; ++i) divisor *= hc;
    a = std::move(b);
    b = std::move(r);
    for (auto& x : b) x /= divisor;
    g = a.back();
    // hc = g^delta * hc^(1-delta)
    if (delta == 0) {
      // hc unchanged
    } else {
      mpz_class gd = 1;
      for (int i = 0; i < delta; ++i) gd *= g;
      mpz_class hd = 1;
      for (int i = 0; i < delta - 1; ++i) hd *= hc;
      hc = gd / hd;
    }
  }
  mpz_class c = contentZ(b);
  if (c != 0)
    for (auto& x : b) x /= c;
  return b;
}

}  // namespace detail

}  // namespace kdv4
