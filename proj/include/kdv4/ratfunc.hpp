#pragma once

#include <optional>
#include <stdexcept>
#include <type_traits>

#include "kdv4/unipoly.hpp"

namespace kdv4 {

struct DivideByZeroError : std::domain_error {
  DivideByZeroError() : std::domain_error("division by zero rational function") {}
};

// Reduced univariate rational function over a field K: gcd(num,den)=1 and the
// denominator is monic. Used both for the coefficient field Q(h) and for
// Laurent-germ coordinates in epsilon over Q(h).
template <class K>
struct RatFunc {
  UniPoly<K> num;
  UniPoly<K> den = UniPoly<K>(1);

  RatFunc() = default;
  RatFunc(long v) : num(UniPoly<K>(v)) {}  // NOLINT: implicit by design
  explicit RatFunc(K k) : num(UniPoly<K>(std::move(k))) {}
  explicit RatFunc(UniPoly<K> n) : num(std::move(n)) {}
  RatFunc(UniPoly<K> n, UniPoly<K> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  static RatFunc variable() { return RatFunc(UniPoly<K>::variable()); }

  bool isZero() const { return num.isZero(); }
  bool isPolynomial() const { return den.degree() == 0; }

  void reduce() {
    if (den.isZero()) throw DivideByZeroError();
    if (num.isZero()) {
      den = UniPoly<K>(1);
      return;
    }
    auto g = gcd(num, den);
    if (g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
    K inv = K(1) / den.lead();
    if (!(inv == K(1))) {
      for (auto& c : num.c) c = inv * c;
      for (auto& c : den.c) c = inv * c;
    }
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num = -r.num;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.isZero()) throw DivideByZeroError();
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }

  // Valuation at the origin: (lowest exponent of num) - (lowest exponent of
  // den). Negative means a pole; nullopt signals the zero function (infinite
  // valuation, distinct from any integer).
  std::optional<int> ord() const {
    if (isZero()) return std::nullopt;
    return num.lowDegree() - den.lowDegree();
  }

  // Coefficient of the principal term x^ord.
  K lead() const {
    if (isZero()) throw std::domain_error("lead of zero rational function");
    return num.c[num.lowDegree()] / den.c[den.lowDegree()];
  }

  // Coefficient of x^k in the Laurent expansion at the origin, computed up to
  // the needed order by series division.
  K laurentCoeff(int k) const {
    if (isZero()) return K(0);
    int nl = num.lowDegree(), dl = den.lowDegree();
    int rel = k - (nl - dl);  // index within the regular part
    if (rel < 0) return K(0);
    // series expansion of (num/x^nl) / (den/x^dl) to order rel
    std::vector<K> out(rel + 1, K(0));
    K d0 = den.coeff(dl);
    for (int i = 0; i <= rel; ++i) {
      K acc = num.coeff(nl + i);
      for (int j = 0; j < i; ++j) acc = acc - out[j] * den.coeff(dl + i - j);
      out[i] = acc / d0;
    }
    return out[rel];
  }
};

// Coefficient field Q(h): reduced fractions of polynomials in h over Q.
using QH = RatFunc<Rat>;
// Laurent-germ coordinate: rational function in epsilon over Q(h).
using Eps = RatFunc<QH>;

// Gcd of polynomials in one variable with coefficients in Q(h). The generic
// Euclidean loop suffers explosive coefficient growth over a function field,
// so the operands are lifted to Q[h][x] (clearing denominators and content)
// and a primitive pseudo-remainder sequence is run there; contents are
// univariate gcds over Q, which route through the fast fraction-free path.
template <>
inline UniPoly<QH> gcd<QH>(UniPoly<QH> a, UniPoly<QH> b) {
  if (a.isZero() && b.isZero()) throw UndefinedGcdError();
  if (a.isZero()) return b.monic();
  if (b.isZero()) return a.monic();

  using PolyH = UniPoly<Rat>;
  using Biv = std::vector<PolyH>;  // coefficient i of x^i, an element of Q[h]

  auto trim = [](Biv& p) {
    while (!p.empty() && p.back().isZero()) p.pop_back();
  };
  auto primitive = [&](Biv p) -> Biv {
    PolyH c(0);
    for (const auto& q : p)
      if (!q.isZero()) c = c.isZero() ? q.monic() : gcd(c, q);
    if (!c.isZero() && c.degree() > 0)
      for (auto& q : p) q = q / c;
    return p;
  };
  auto lift = [&](const UniPoly<QH>& p) -> Biv {
    PolyH den(1);
    for (int i = 0; i <= p.degree(); ++i) {
      const QH& c = p.coeff(i);
      if (!c.isZero()) den = den * (c.den / gcd(den, c.den));  // lcm
    }
    Biv out(static_cast<std::size_t>(p.degree()) + 1, PolyH(0));
    for (int i = 0; i <= p.degree(); ++i) {
      const QH& c = p.coeff(i);
      if (!c.isZero()) out[static_cast<std::size_t>(i)] = c.num * (den / c.den);
    }
    trim(out);
    return primitive(std::move(out));
  };
  // Pseudo-remainder: repeatedly scale by the leading coefficient of the
  // divisor so every cancellation step stays inside Q[h].
  auto prem = [&](Biv r, const Biv& d) -> Biv {
    const PolyH& lcD = d.back();
    while (r.size() >= d.size()) {
      PolyH lr = r.back();
      std::size_t k = r.size() - d.size();
      for (auto& q : r) q = q * lcD;
      for (std::size_t i = 0; i < d.size(); ++i)
        r[i + k] = r[i + k] - lr * d[i];
      trim(r);
      if (r.empty()) break;
    }
    return r;
  };

  Biv A = lift(a), B = lift(b);
  if (A.size() < B.size()) std::swap(A, B);
  while (B.size() > 1) {
    Biv r = prem(A, B);
    if (r.empty()) break;
    A = std::move(B);
    B = primitive(std::move(r));
  }
  if (B.size() <= 1) return UniPoly<QH>(1);
  UniPoly<QH> g;
  g.c.assign(B.size(), QH(0));
  for (std::size_t i = 0; i < B.size(); ++i) g.c[i] = QH(B[i]);
  return g.monic();
}

inline QH qh_h() { return QH::variable(); }
inline QH qh(const Rat& r) { return QH(r); }
inline Eps eps_var() { return Eps::variable(); }
inline Eps eps_const(QH v) { return Eps(std::move(v)); }
inline Eps eps_h() { return eps_const(qh_h()); }
inline Eps eps_rat(const Rat& r) { return eps_const(qh(r)); }

template <class K>
bool isZeroVal(const RatFunc<K>& v) {
  return v.isZero();
}
inline bool isZeroVal(const Rat& v) { return v == 0; }

}  // namespace kdv4
