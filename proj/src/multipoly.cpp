#include "kdv4/multipoly.hpp"

#include <cctype>
#include <sstream>

#include "kdv4/polyfrac.hpp"

namespace kdv4 {

std::string MultiPoly::str() const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat a = c > 0 ? c : Rat(-c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wroteCoeff = false;
    bool hasVar = false;
    for (unsigned x : e)
      if (x) hasVar = true;
    if (a != 1 || !hasVar) {
      os << ratStr(a);
      wroteCoeff = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (wroteCoeff || &e[i] != firstNonzero(e)) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      wroteCoeff = true;
    }
  }
  return os.str();
}

const unsigned* MultiPoly::firstNonzero(const Expo& e) {
  for (const auto& x : e)
    if (x) return &x;
  return nullptr;
}

MultiPoly MultiPoly::withVars(const std::vector<std::string>& newVars) const {
  MultiPoly r(newVars);
  std::vector<int> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = r.varIndex(vars_[i]);
  for (const auto& [e, c] : terms_) {
    Expo ne(newVars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
    r.addTerm(std::move(ne), c);
  }
  return r;
}

namespace {

// Minimal recursive-descent parser for "+/-" separated products of rationals
// and powered variables, with parentheses around sums allowed.
struct Parser {
  const std::string& s;
  std::size_t i = 0;
  const std::vector<std::string>& vars;

  explicit Parser(const std::string& text, const std::vector<std::string>& v) : s(text), vars(v) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  MultiPoly parseSum() {
    MultiPoly acc = MultiPoly::constant(vars, 0);
    bool neg = eat('-');
    for (;;) {
      MultiPoly t = parseProduct();
      acc = neg ? acc - t : acc + t;
      skip();
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        break;
    }
    return acc;
  }

  MultiPoly parseProduct() {
    MultiPoly acc = parseFactor();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * parseFactor();
      } else if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
        acc = acc * parseFactor();  // implicit product like "3x0" or "h(...)"
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parseFactor() {
    skip();
    MultiPoly base = MultiPoly::constant(vars, 0);
    if (eat('(')) {
      base = parseSum();
      if (!eat(')')) throw std::invalid_argument("MultiPoly::parse: missing ')'");
    } else if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
      base = MultiPoly::constant(vars, parseRat(s.substr(i, j - i)));
      i = j;
    } else if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      base = MultiPoly::variable(vars, s.substr(i, j - i));
      i = j;
    } else {
      throw std::invalid_argument("MultiPoly::parse: unexpected input at " + std::to_string(i));
    }
    skip();
    if (eat('^')) {
      skip();
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      base = base.pow(static_cast<unsigned>(std::stoul(s.substr(i, j - i))));
      i = j;
    }
    return base;
  }
};

}  // namespace

MultiPoly MultiPoly::parse(std::vector<std::string> vars, const std::string& text) {
  Parser p(text, vars);
  MultiPoly r = p.parseSum();
  p.skip();
  if (p.i != text.size()) throw std::invalid_argument("MultiPoly::parse: trailing input");
  return r;
}

void PolyFrac::normalize() {
  if (den_.isZero()) throw DegenerateSubstitutionError("zero denominator");
  if (num_.vars() != den_.vars()) throw AlignmentError("fraction num/den variable mismatch");
  if (num_.isZero()) {
    den_ = MultiPoly::constant(num_.vars(), 1);
    return;
  }
  // cancel common monomial factor
  MultiPoly::Expo mins(num_.vars().size(), UINT32_MAX >> 1);
  auto shrink = [&](const MultiPoly& p) {
    for (const auto& [e, c] : p.terms())
      for (std::size_t i = 0; i < e.size(); ++i) mins[i] = std::min(mins[i], e[i]);
  };
  shrink(num_);
  shrink(den_);
  bool any = false;
  for (unsigned m : mins) any = any || m > 0;
  if (any) {
    auto strip = [&](const MultiPoly& p) {
      MultiPoly r(p.vars());
      for (const auto& [e, c] : p.terms()) {
        MultiPoly::Expo ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) ne[i] -= mins[i];
        r.addTerm(std::move(ne), c);
      }
      return r;
    };
    num_ = strip(num_);
    den_ = strip(den_);
  }
  if (num_ == den_) {
    num_ = MultiPoly::constant(num_.vars(), 1);
    den_ = num_;
  }
  // scale so the denominator has content 1 and positive leading coefficient
  Rat g = 0;
  auto accum = [&](const MultiPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Rat a = c > 0 ? c : Rat(-c);
      if (g == 0)
        g = a;
      else {
        mpz_class n, d;
        mpz_gcd(n.get_mpz_t(), g.get_num_mpz_t(), a.get_num_mpz_t());
        mpz_lcm(d.get_mpz_t(), g.get_den_mpz_t(), a.get_den_mpz_t());
        g = Rat(n, d);
        g.canonicalize();
      }
    }
  };
  accum(num_);
  accum(den_);
  if (g != 0 && g != 1) {
    Rat inv = 1 / g;
    num_ = inv * num_;
    den_ = inv * den_;
  }
  if (den_.terms().rbegin()->second < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

std::pair<MultiPoly, MultiPoly> substitute(const MultiPoly& p,
                                           const std::map<std::string, PolyFrac>& bindings,
                                           const std::vector<std::string>& resultVars) {
  for (const auto& [name, b] : bindings) {
    if (b.den().isZero())
      throw DegenerateSubstitutionError("binding for '" + name + "' has zero denominator");
  }
  std::vector<PolyFrac> vals;
  vals.reserve(p.vars().size());
  for (const auto& v : p.vars()) {
    auto it = bindings.find(v);
    if (it != bindings.end())
      vals.push_back(it->second);
    else
      vals.push_back(PolyFrac::variable(resultVars, v));
  }
  PolyFrac r = p.eval<PolyFrac>(std::span<const PolyFrac>(vals),
                                [&](const Rat& c) { return PolyFrac::constant(resultVars, c); });
  return {r.num(), r.den()};
}

}  // namespace kdv4
