#include "kdv4/tower.hpp"

#include <algorithm>
#include <sstream>

namespace kdv4 {

DivisorClass DivisorClass::Ha() {
  DivisorClass d;
  d.ha() = 1;
  return d;
}
DivisorClass DivisorClass::Hb() {
  DivisorClass d;
  d.hb() = 1;
  return d;
}
DivisorClass DivisorClass::E(int i) {
  DivisorClass d;
  d.e(i) = 1;
  return d;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  for (int k = 0; k < 19; ++k) c[k] += o.c[k];
  return *this;
}
DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  for (int k = 0; k < 19; ++k) c[k] -= o.c[k];
  return *this;
}
DivisorClass operator*(long k, DivisorClass a) {
  for (auto& v : a.c) v *= k;
  return a;
}

std::string DivisorClass::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](long v, const std::string& name) {
    if (v == 0) return;
    if (v > 0 && !first) os << "+";
    if (v == -1)
      os << "-";
    else if (v != 1)
      os << v << "*";
    os << name;
    first = false;
  };
  term(ha(), "Ha");
  term(hb(), "Hb");
  for (int i = 1; i <= 17; ++i) term(e(i), "E" + std::to_string(i));
  if (first) os << "0";
  return os.str();
}

DivisorClass primeExceptionalClass(int i) {
  switch (i) {
    case 5:
    case 10:
    case 17:
      return DivisorClass::E(i);
    case 11:
      // The strict transform of E11 loses the later blow-up along the curve
      // inside it whose chart is C14 (the center of C12/C13 is not contained
      // in E11, so only E14 is subtracted).
      return DivisorClass::E(11) - DivisorClass::E(14);
    default:
      if (i < 1 || i > 17) throw std::out_of_range("exceptional index");
      return DivisorClass::E(i) - DivisorClass::E(i + 1);
  }
}

Section sectionOf(const MultiPoly& f) {
  Section s;
  s.poly = f.withVars(phaseVars());
  s.da = s.poly.degreeIn({"x0", "x1"});
  s.db = s.poly.degreeIn({"x2", "x3"});
  return s;
}

Section sectionOf(const std::string& f) {
  return sectionOf(MultiPoly::parse(phaseVars(), f));
}

Section infinitySectionA() {
  return {MultiPoly::constant(phaseVars(), rat(1)), 1, 0};
}
Section infinitySectionB() {
  return {MultiPoly::constant(phaseVars(), rat(1)), 0, 1};
}

Germ exceptionalGerm(int i, Rng& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::array<QH, 4> c;
    for (int k = 0; k < 4; ++k) c[k] = qh(rng.nonzeroRat());
    c[chart(i).pivot] = qh_h();  // the variable plays the role of eps here
    Rat h = rng.nonzeroRat();
    try {
      return Germ{chartToAffineVals<QH>(i, c, qh(h)), h, "E" + std::to_string(i)};
    } catch (const DegenerateSubstitutionError&) {
      continue;  // resample the transverse constants
    }
  }
  throw InconclusiveError("could not sample a generic germ of E" + std::to_string(i));
}

Germ exceptionalGerm(int i, Rng& rng, const Rat& h) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::array<QH, 4> c;
    for (int k = 0; k < 4; ++k) c[k] = qh(rng.nonzeroRat());
    c[chart(i).pivot] = qh_h();
    try {
      return Germ{chartToAffineVals<QH>(i, c, qh(h)), h, "E" + std::to_string(i)};
    } catch (const DegenerateSubstitutionError&) {
      continue;
    }
  }
  throw InconclusiveError("could not sample a generic germ of E" + std::to_string(i));
}

QH evalSection(const Section& f, const Germ& g) {
  std::array<QH, 5> vals{g.x[0], g.x[1], g.x[2], g.x[3], qh(g.h)};
  return f.poly.eval<QH>(std::span<const QH>(vals), [](const Rat& r) { return qh(r); });
}

namespace {

int ordOf(const QH& v, const std::string& what) {
  auto o = v.ord();
  if (!o) throw InconclusiveError(what + " vanishes identically on the germ");
  return *o;
}

}  // namespace

int ordAlongGerm(const Section& f, const Germ& g) {
  int orda = std::min({0, ordOf(g.x[0], "x0"), ordOf(g.x[1], "x1")});
  int ordb = std::min({0, ordOf(g.x[2], "x2"), ordOf(g.x[3], "x3")});
  return ordOf(evalSection(f, g), "section " + f.poly.str()) - f.da * orda - f.db * ordb;
}

std::span<const unsigned long> defaultSeeds() {
  static const unsigned long s[] = {101ul, 20177ul, 987654321ul};
  return s;
}

int multAlong(const Section& f, int i, std::span<const unsigned long> seeds) {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  bool have = false;
  int agreed = 0;
  for (unsigned long s : seeds) {
    Rng rng(s * 1000003ul + static_cast<unsigned long>(i));
    int m = ordAlongGerm(f, exceptionalGerm(i, rng));
    if (have && m != agreed)
      throw InconclusiveError("valuation samples disagree along E" + std::to_string(i) +
                              " for section " + f.poly.str());
    agreed = m;
    have = true;
  }
  return agreed;
}

std::array<int, 17> multTable(const Section& f, std::span<const unsigned long> seeds) {
  std::array<int, 17> out{};
  for (int i = 1; i <= 17; ++i) out[i - 1] = multAlong(f, i, seeds);
  return out;
}

DivisorClass properClassOf(const Section& f, std::span<const unsigned long> seeds) {
  auto m = multTable(f, seeds);
  DivisorClass cls = f.da * DivisorClass::Ha() + f.db * DivisorClass::Hb();
  for (int i = 1; i <= 17; ++i) cls -= m[i - 1] * primeExceptionalClass(i);
  return cls;
}

std::array<int, 17> classToMults(const DivisorClass& cls) {
  // n_i = coefficient of E_i in sum m_j * primeExceptionalClass(j); the prime
  // classes are triangular over the E-lattice, so back-substitute.
  std::array<long, 18> n{};
  for (int i = 1; i <= 17; ++i) n[i] = -cls.e(i);
  std::array<int, 17> m{};
  auto& M = m;  // 0-based: M[i-1] = m_i
  for (int first : {1, 6}) {
    M[first - 1] = static_cast<int>(n[first]);
    for (int i = first + 1; i < first + 5; ++i)
      M[i - 1] = static_cast<int>(n[i]) + M[i - 2];
  }
  M[10] = static_cast<int>(n[11]);
  M[11] = static_cast<int>(n[12]);
  M[12] = static_cast<int>(n[13]) + M[11];
  M[13] = static_cast<int>(n[14]) + M[10] + M[12];
  M[14] = static_cast<int>(n[15]) + M[13];
  M[15] = static_cast<int>(n[16]) + M[14];
  M[16] = static_cast<int>(n[17]) + M[15];

  // The prime classes form a basis of the E-sublattice, so this must invert
  // exactly; verify to catch malformed input.
  DivisorClass back = cls.ha() * DivisorClass::Ha() + cls.hb() * DivisorClass::Hb();
  for (int i = 1; i <= 17; ++i) back -= m[i - 1] * primeExceptionalClass(i);
  if (!(back == cls)) throw std::logic_error("classToMults reconstruction failed");
  return m;
}

Germ namedHypersurfaceGerm(const std::string& name, Rng& rng) {
  Rat h = rng.nonzeroRat();
  auto c = [&] { return qh(rng.nonzeroRat()); };
  QH e = qh_h();  // local parameter
  if (name == "x2-1") return Germ{{c(), c(), QH(1) + e, c()}, h, name};
  if (name == "x0-1") return Germ{{QH(1) + e, c(), c(), c()}, h, name};
  if (name == "inf-a") return Germ{{c() / e, QH(1) / e, c(), c()}, h, name};
  if (name == "inf-b") return Germ{{c(), c(), c() / e, QH(1) / e}, h, name};
  throw std::invalid_argument("unknown hypersurface germ " + name);
}

const std::vector<Candidate>& candidateTable() {
  static const std::vector<Candidate> table = [] {
    std::vector<Candidate> t;
    for (int i = 1; i <= 17; ++i)
      t.push_back({"E" + std::to_string(i), i, primeExceptionalClass(i)});
    t.push_back({"x2-1", 0, properClassOf(sectionOf("x2 - 1"), defaultSeeds())});
    t.push_back({"inf-a", 0, properClassOf(infinitySectionA(), defaultSeeds())});
    t.push_back({"inf-b", 0, properClassOf(infinitySectionB(), defaultSeeds())});
    return t;
  }();
  return table;
}

Germ candidateGerm(const Candidate& cand, Rng& rng) {
  if (cand.exceptionalIndex > 0) return exceptionalGerm(cand.exceptionalIndex, rng);
  return namedHypersurfaceGerm(cand.label, rng);
}

}  // namespace kdv4
