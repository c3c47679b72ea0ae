#pragma once

#include <map>
#include <string>
#include <utility>

#include "kdv4/multipoly.hpp"

namespace kdv4 {

struct DegenerateSubstitutionError : std::domain_error {
  explicit DegenerateSubstitutionError(const std::string& m)
      : std::domain_error("degenerate substitution: " + m) {}
};

// Fraction of multivariate polynomials. Reduction is deliberately light
// (rational content, sign normalization, common monomial factors, equal
// num/den) -- no multivariate gcd is ever computed; identities are checked by
// cross-multiplication instead.
class PolyFrac {
 public:
  PolyFrac() = default;
  explicit PolyFrac(MultiPoly n)
      : num_(std::move(n)), den_(MultiPoly::constant(num_.vars(), 1)) {}
  PolyFrac(MultiPoly n, MultiPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static PolyFrac constant(std::vector<std::string> vars, const Rat& c) {
    return PolyFrac(MultiPoly::constant(std::move(vars), c));
  }
  static PolyFrac variable(std::vector<std::string> vars, const std::string& name) {
    return PolyFrac(MultiPoly::variable(std::move(vars), name));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }

  friend PolyFrac operator+(const PolyFrac& a, const PolyFrac& b) {
    if (a.den_ == b.den_) return PolyFrac(a.num_ + b.num_, a.den_);
    return PolyFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend PolyFrac operator-(const PolyFrac& a, const PolyFrac& b) {
    if (a.den_ == b.den_) return PolyFrac(a.num_ - b.num_, a.den_);
    return PolyFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend PolyFrac operator-(const PolyFrac& a) {
    PolyFrac r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend PolyFrac operator*(const PolyFrac& a, const PolyFrac& b) {
    return PolyFrac(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend PolyFrac operator/(const PolyFrac& a, const PolyFrac& b) {
    if (b.isZero()) throw DegenerateSubstitutionError("division by zero fraction");
    return PolyFrac(a.num_ * b.den_, a.den_ * b.num_);
  }

  std::string str() const {
    if (den_ == MultiPoly::constant(den_.vars(), 1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  // Identity test by cross-multiplication (exact).
  friend bool eqFrac(const PolyFrac& a, const PolyFrac& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).isZero();
  }

 private:
  void normalize();

  MultiPoly num_, den_;
};

// Substitutes rational-function expressions for variables of p. Unbound
// variables are carried through unchanged; all bindings must share one
// variable list, which becomes the result's variable list. Returns the exact
// (numerator, denominator) pair.
std::pair<MultiPoly, MultiPoly> substitute(
    const MultiPoly& p, const std::map<std::string, PolyFrac>& bindings,
    const std::vector<std::string>& resultVars);

}  // namespace kdv4
