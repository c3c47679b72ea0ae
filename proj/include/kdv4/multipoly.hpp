#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdv4/rational.hpp"

namespace kdv4 {

struct AlignmentError : std::invalid_argument {
  explicit AlignmentError(const std::string& m) : std::invalid_argument("variable alignment: " + m) {}
};

// Sparse multivariate polynomial over Q: association from exponent vectors to
// nonzero rational coefficients, over an explicit ordered variable list.
class MultiPoly {
 public:
  using Expo = std::vector<unsigned>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, const Rat& c) {
    MultiPoly p(std::move(vars));
    if (c != 0) p.terms_[Expo(p.vars_.size(), 0)] = c;
    return p;
  }
  static MultiPoly variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    Expo e(p.vars_.size(), 0);
    e[p.varIndex(name)] = 1;
    p.terms_[std::move(e)] = 1;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  int varIndex(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    throw AlignmentError("unknown variable '" + name + "'");
  }

  void addTerm(Expo e, const Rat& c) {
    if (e.size() != vars_.size()) throw AlignmentError("exponent length mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(std::move(e), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.requireSameVars(b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.addTerm(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    a.requireSameVars(b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.addTerm(e, -c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.requireSameVars(b);
    MultiPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Expo e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.addTerm(std::move(e), ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rat& k, const MultiPoly& a) {
    MultiPoly r(a.vars_);
    if (k == 0) return r;
    r.terms_ = a.terms_;
    for (auto& [e, c] : r.terms_) c = k * c;
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned n) const {
    MultiPoly r = constant(vars_, 1), base = *this;
    while (n) {
      if (n & 1u) r = r * base;
      base = (n >>= 1) ? base * base : base;
    }
    return r;
  }

  // Degree counting only the listed variables (e.g. the bidegree factors).
  int degreeIn(const std::vector<std::string>& names) const {
    std::vector<int> idx;
    for (const auto& n : names) idx.push_back(varIndex(n));
    int d = isZero() ? -1 : 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int i : idx) s += static_cast<int>(e[i]);
      d = std::max(d, s);
    }
    return d;
  }
  int degreeInVar(const std::string& name) const { return degreeIn({name}); }

  // Evaluation over any commutative ring value type F (constructible from Rat
  // via F(long)+arithmetic, or with an explicit embed function).
  template <class F, class Embed>
  F eval(std::span<const F> vals, Embed embedRat) const {
    if (vals.size() != vars_.size()) throw AlignmentError("value count mismatch");
    F acc = embedRat(Rat(0));
    for (const auto& [e, c] : terms_) {
      F t = embedRat(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = t * vals[i];
      acc = acc + t;
    }
    return acc;
  }

  Rat evalRat(std::span<const Rat> vals) const {
    return eval<Rat>(vals, [](const Rat& r) { return r; });
  }

  // Renders terms in a fixed order; exact fractions, '^' powers, '*' products.
  std::string str() const;

  // Builds a polynomial from a simple expression over the variable list:
  // sums of terms like "-3/2*x0^2*h". Used by tests and map serialization.
  static MultiPoly parse(std::vector<std::string> vars, const std::string& text);

  MultiPoly withVars(const std::vector<std::string>& newVars) const;

 private:
  static const unsigned* firstNonzero(const Expo& e);

  void requireSameVars(const MultiPoly& b) const {
    if (vars_ != b.vars_) throw AlignmentError("operands use different variable lists");
  }

  std::vector<std::string> vars_;
  std::map<Expo, Rat> terms_;
};

}  // namespace kdv4
