#include "kdv4/invariant.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "kdv4/dynamics.hpp"

namespace kdv4 {

namespace {

QH qhPow(const QH& v, int e) {
  QH r = qh(rat(1));
  for (int k = 0; k < e; ++k) r = r * v;
  return r;
}

Rat ratPow(const Rat& v, unsigned e) {
  Rat r = 1;
  for (unsigned k = 0; k < e; ++k) r *= v;
  return r;
}

std::vector<AnsatzMonomial> monomialsWhere(bool bidegree) {
  std::vector<AnsatzMonomial> out;
  for (int e0 = 0; e0 <= 2; ++e0)
    for (int e1 = 0; e1 <= 2; ++e1)
      for (int e2 = 0; e2 <= 2; ++e2)
        for (int e3 = 0; e3 <= 2; ++e3) {
          bool keep = bidegree ? (e0 + e1 <= 2 && e2 + e3 <= 2)
                               : (e0 + e1 + e2 + e3 <= 2);
          if (keep) out.push_back(AnsatzMonomial{{e0, e1, e2, e3}});
        }
  return out;
}

// Row rank of a small exact matrix (destructive elimination on a copy).
std::size_t rowRank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  std::size_t n = m[0].size(), r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t q = r + 1; q < m.size(); ++q)
      if (m[q][c] != 0) {
        Rat f = m[q][c] / m[r][c];
        for (std::size_t j = c; j < n; ++j) m[q][j] -= f * m[r][j];
      }
    ++r;
  }
  return r;
}

// Solves sum_j x_j * cols[j] = b exactly; nullopt when inconsistent.
std::optional<std::vector<Rat>> solveInColumns(
    const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& b) {
  std::size_t k = cols.size(), n = b.size();
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(k + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = cols[j][i];
    aug[i][k] = b[i];
  }
  std::vector<int> pivotRow(k, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(aug[r], aug[p]);
    Rat inv = aug[r][c];
    for (std::size_t j = c; j <= k; ++j) aug[r][j] /= inv;
    for (std::size_t q = 0; q < n; ++q)
      if (q != r && aug[q][c] != 0) {
        Rat f = aug[q][c];
        for (std::size_t j = c; j <= k; ++j) aug[q][j] -= f * aug[r][j];
      }
    pivotRow[c] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t q = r; q < n; ++q)
    if (aug[q][k] != 0) return std::nullopt;
  std::vector<Rat> x(k, Rat(0));
  for (std::size_t c = 0; c < k; ++c)
    if (pivotRow[c] >= 0) x[c] = aug[static_cast<std::size_t>(pivotRow[c])][k];
  return x;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string AnsatzMonomial::str() const {
  static const char* names[4] = {"x0", "x1", "x2", "x3"};
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < 4; ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    os << names[i];
    if (e[i] > 1) os << "^" << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

const std::vector<AnsatzMonomial>& bidegreeAnsatz() {
  static const std::vector<AnsatzMonomial> m = monomialsWhere(true);
  return m;
}

const std::vector<AnsatzMonomial>& totalDegreeAnsatz() {
  static const std::vector<AnsatzMonomial> m = monomialsWhere(false);
  return m;
}

ClassConstraint constraintFromClass(const DivisorClass& target) {
  ClassConstraint cc;
  cc.target = target;
  cc.da = static_cast<int>(target.ha());
  cc.db = static_cast<int>(target.hb());
  if (cc.da < 0 || cc.db < 0)
    throw std::invalid_argument("target class has negative bidegree");
  cc.mults = classToMults(target);
  for (int m : cc.mults)
    if (m < 0) throw std::invalid_argument("target class has negative multiplicity");
  return cc;
}

const DivisorClass& invariantClassI1() {
  static const DivisorClass c = properClassOf(sectionOf(invariantI1()), defaultSeeds());
  return c;
}

const DivisorClass& invariantClassI2() {
  static const DivisorClass c = properClassOf(sectionOf(invariantI2()), defaultSeeds());
  return c;
}

VanishingSystem vanishingSystem(const ClassConstraint& constraint,
                                const std::vector<AnsatzMonomial>& ansatz,
                                const Rat& h,
                                std::span<const unsigned long> seeds) {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  VanishingSystem sys;
  sys.h = h;
  sys.unknowns = ansatz.size();
  for (int i = 1; i <= 17; ++i) {
    int mi = constraint.mults[static_cast<std::size_t>(i - 1)];
    if (mi <= 0) continue;
    for (unsigned long s : seeds) {
      Rng rng(s * 1000003ul + static_cast<unsigned long>(i));
      Germ g = exceptionalGerm(i, rng, h);
      auto ordOf = [&](const QH& v) -> int {
        auto o = v.ord();
        if (!o) throw InconclusiveError("germ coordinate vanishes identically on E" +
                                        std::to_string(i));
        return *o;
      };
      int minA = std::min({0, ordOf(g.x[0]), ordOf(g.x[1])});
      int minB = std::min({0, ordOf(g.x[2]), ordOf(g.x[3])});
      // A section of O(da, db) has pole order -(da*minA + db*minB) along the
      // divisor, so vanishing to multiplicity mi means the eps-expansion of
      // the affine ansatz starts at order mi + base or later.
      int base = constraint.da * minA + constraint.db * minB;
      std::vector<QH> vals(ansatz.size());
      int kmin = mi + base;
      for (std::size_t j = 0; j < ansatz.size(); ++j) {
        QH v = qhPow(g.x[0], ansatz[j].e[0]) * qhPow(g.x[1], ansatz[j].e[1]) *
               qhPow(g.x[2], ansatz[j].e[2]) * qhPow(g.x[3], ansatz[j].e[3]);
        vals[j] = v;
        if (auto o = v.ord()) kmin = std::min(kmin, *o);
      }
      for (int k = kmin; k < mi + base; ++k) {
        std::vector<Rat> row(ansatz.size(), Rat(0));
        bool nonzero = false;
        for (std::size_t j = 0; j < ansatz.size(); ++j) {
          row[j] = vals[j].laurentCoeff(k);
          if (row[j] != 0) nonzero = true;
        }
        if (nonzero) sys.rows.push_back(std::move(row));
      }
    }
  }
  return sys;
}

std::vector<std::vector<Rat>> kernelBasis(const std::vector<std::vector<Rat>>& rows,
                                          std::size_t unknowns) {
  std::vector<std::vector<Rat>> m = rows;
  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][c];
    for (std::size_t j = c; j < unknowns; ++j) m[r][j] /= inv;
    for (std::size_t q = 0; q < m.size(); ++q)
      if (q != r && m[q][c] != 0) {
        Rat f = m[q][c];
        for (std::size_t j = c; j < unknowns; ++j) m[q][j] -= f * m[r][j];
      }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(unknowns, false);
  for (std::size_t c : pivotCol) isPivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t c = 0; c < unknowns; ++c) {
    if (isPivot[c]) continue;
    std::vector<Rat> v(unknowns, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivotCol.size(); ++i) v[pivotCol[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rat> ansatzVector(const MultiPoly& poly, const Rat& h,
                              const std::vector<AnsatzMonomial>& ansatz) {
  MultiPoly p = poly.withVars(phaseVars());
  std::vector<Rat> v(ansatz.size(), Rat(0));
  for (const auto& [e, c] : p.terms()) {
    AnsatzMonomial mono{{static_cast<int>(e[0]), static_cast<int>(e[1]),
                         static_cast<int>(e[2]), static_cast<int>(e[3])}};
    auto it = std::find(ansatz.begin(), ansatz.end(), mono);
    if (it == ansatz.end())
      throw std::out_of_range("monomial " + mono.str() + " outside the ansatz");
    v[static_cast<std::size_t>(it - ansatz.begin())] += c * ratPow(h, e[4]);
  }
  return v;
}

std::string ansatzVectorStr(const std::vector<Rat>& v,
                            const std::vector<AnsatzMonomial>& ansatz) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    Rat c = v[j];
    if (any) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat a = abs(c);
    std::string mono = ansatz[j].str();
    if (a != 1 || mono == "1") {
      os << a.get_str();
      if (mono != "1") os << "*";
    }
    if (mono != "1") os << mono;
    any = true;
  }
  return any ? os.str() : "0";
}

MatchReport matchInvariants(const VanishingSystem& sys,
                            const std::vector<std::vector<Rat>>& kernel,
                            const std::vector<AnsatzMonomial>& ansatz) {
  MatchReport rep;
  rep.kernelDimension = kernel.size();
  struct Cand {
    std::string name;
    std::vector<Rat> vec;
  };
  std::vector<Cand> kept;
  std::vector<std::string> skipped;
  auto tryCandidate = [&](const std::string& name, const MultiPoly& poly) {
    std::vector<Rat> vec;
    try {
      vec = ansatzVector(poly, sys.h, ansatz);
    } catch (const std::out_of_range&) {
      skipped.push_back(name + " (not representable in this ansatz)");
      return;
    }
    for (const auto& row : sys.rows)
      if (dot(row, vec) != 0) {
        skipped.push_back(name + " (violates a vanishing constraint)");
        return;
      }
    kept.push_back({name, std::move(vec)});
  };
  tryCandidate("1", MultiPoly::constant(phaseVars(), rat(1)));
  tryCandidate("I1", invariantI1());
  tryCandidate("I2", invariantI2());

  for (const auto& c : kept) rep.names.push_back(c.name);
  std::ostringstream note;
  for (const auto& s : skipped) note << "excluded: " << s << "; ";

  std::vector<std::vector<Rat>> candRows;
  std::vector<std::vector<Rat>> candCols;
  for (const auto& c : kept) {
    candRows.push_back(c.vec);
    candCols.push_back(c.vec);
  }
  bool independent = rowRank(candRows) == kept.size();
  bool spanOk = independent && kept.size() == kernel.size();
  if (spanOk) {
    for (const auto& kv : kernel) {
      auto coords = solveInColumns(candCols, kv);
      if (!coords) {
        spanOk = false;
        note << "a kernel vector lies outside the candidate span; ";
        break;
      }
      rep.changeOfBasis.push_back(std::move(*coords));
    }
  } else if (!independent) {
    note << "surviving candidates are linearly dependent; ";
  } else {
    note << "kernel dimension " << kernel.size() << " != candidate count "
         << kept.size() << "; ";
  }
  rep.matched = spanOk;
  if (!spanOk) rep.changeOfBasis.clear();
  rep.note = note.str();
  return rep;
}

InvariantSearch findInvariants(const DivisorClass& target, unsigned long seed,
                               int hSamples,
                               const std::vector<AnsatzMonomial>* ansatz) {
  if (hSamples < 1) throw std::invalid_argument("need at least one h sample");
  const auto& mons = ansatz ? *ansatz : bidegreeAnsatz();
  ClassConstraint cc = constraintFromClass(target);
  InvariantSearch out;
  std::vector<std::string> firstNames;
  bool have = false;
  for (int t = 0; t < hSamples; ++t) {
    Rng hr(seed + 7919ul * static_cast<unsigned long>(t));
    Rat h = hr.nonzeroRat();
    VanishingSystem sys = vanishingSystem(cc, mons, h, defaultSeeds());
    auto kernel = kernelBasis(sys.rows, sys.unknowns);
    MatchReport rep = matchInvariants(sys, kernel, mons);
    if (!have) {
      out.kernelDimension = rep.kernelDimension;
      out.matched = rep.matched;
      out.note = rep.note;
      firstNames = rep.names;
      for (const auto& n : rep.names)
        out.recovered.push_back(n == "I1"   ? invariantI1().str()
                                : n == "I2" ? invariantI2().str()
                                            : n);
      have = true;
    } else if (rep.kernelDimension != out.kernelDimension ||
               rep.matched != out.matched || rep.names != firstNames) {
      throw InconclusiveError("h-samples disagree on the kernel of the vanishing system");
    }
  }
  out.note += "certified at " + std::to_string(hSamples) + " sampled h values";
  return out;
}

}  // namespace kdv4
