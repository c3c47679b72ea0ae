#include "kdv4/tracker.hpp"

#include <algorithm>
#include <sstream>

#include "kdv4/tower.hpp"

namespace kdv4 {

namespace {

// True when the coordinate does not vary with epsilon. Epsilon-fractions are
// not fully cancelled, so proportionality of numerator and denominator is
// checked instead of comparing degrees.
bool epsConstant(const Eps& v) {
  if (v.isZero()) return true;
  if (v.num.degree() != v.den.degree()) return false;
  QH c = v.num.lead() / v.den.lead();
  for (int i = 0; i < v.den.degree(); ++i)
    if (!(v.num.coeff(i) == c * v.den.coeff(i))) return false;
  return true;
}

// Truncated Laurent series in epsilon with exact Q(h) coefficients: the
// iteration workhorse. Rational-function arithmetic over Q(h) needs gcds in
// a function field and grows far too slowly for multi-step tracking; series
// arithmetic needs no cancellation machinery while every retained
// coefficient stays exact. Relative precision kPrec is ample for the handful
// of steps a trace covers; if cancellation ever eats a whole coefficient
// window the code fails loudly instead of misreporting an order.
constexpr int kPrec = 16;

struct PrecisionExhausted : std::runtime_error {
  PrecisionExhausted()
      : std::runtime_error("laurent series cancelled through its whole coefficient window") {}
};

struct Ser {
  bool zero = true;
  int base = 0;  // exponent of c[0]
  int end = 0;   // coefficients are valid on exponents [base, end)
  std::vector<QH> c;

  Ser() = default;
  Ser(long v) {  // NOLINT: implicit to mirror the coordinate-field concept
    if (v == 0) return;
    zero = false;
    base = 0;
    end = kPrec;
    c.assign(kPrec, QH(0));
    c[0] = QH(v);
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < c.size() && c[lead].isZero()) ++lead;
    if (lead == c.size()) throw PrecisionExhausted();
    if (lead > 0) {
      c.erase(c.begin(), c.begin() + static_cast<long>(lead));
      base += static_cast<int>(lead);
    }
  }

  friend Ser operator-(const Ser& a) {
    Ser r = a;
    for (auto& q : r.c) q = -q;
    return r;
  }
  friend Ser operator+(const Ser& a, const Ser& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    Ser r;
    r.zero = false;
    r.base = std::min(a.base, b.base);
    r.end = std::min(a.end, b.end);
    if (r.end <= r.base) throw PrecisionExhausted();
    r.c.assign(static_cast<std::size_t>(r.end - r.base), QH(0));
    for (int k = r.base; k < r.end; ++k) {
      QH v(0);
      if (k >= a.base && k < a.end) v = v + a.c[static_cast<std::size_t>(k - a.base)];
      if (k >= b.base && k < b.end) v = v + b.c[static_cast<std::size_t>(k - b.base)];
      r.c[static_cast<std::size_t>(k - r.base)] = v;
    }
    r.normalize();
    return r;
  }
  friend Ser operator-(const Ser& a, const Ser& b) { return a + (-b); }
  friend Ser operator*(const Ser& a, const Ser& b) {
    if (a.zero || b.zero) return Ser();
    Ser r;
    r.zero = false;
    r.base = a.base + b.base;
    r.end = std::min({a.base + b.end, b.base + a.end, r.base + kPrec});
    std::size_t n = static_cast<std::size_t>(r.end - r.base);
    r.c.assign(n, QH(0));
    for (std::size_t i = 0; i < a.c.size() && i < n; ++i) {
      if (a.c[i].isZero()) continue;
      for (std::size_t j = 0; j < b.c.size() && i + j < n; ++j)
        r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
  }
  Ser inverse() const {
    if (zero) throw DivideByZeroError();
    Ser r;
    r.zero = false;
    r.base = -base;
    std::size_t n = std::min<std::size_t>(c.size(), kPrec);
    r.end = r.base + static_cast<int>(n);
    r.c.assign(n, QH(0));
    QH d0 = QH(1) / c[0];
    r.c[0] = d0;
    for (std::size_t i = 1; i < n; ++i) {
      QH acc(0);
      for (std::size_t j = 1; j <= i; ++j) acc = acc + c[j] * r.c[i - j];
      r.c[i] = -acc * d0;
    }
    return r;
  }
  friend Ser operator/(const Ser& a, const Ser& b) { return a * b.inverse(); }
};

bool isZeroVal(const Ser& s) { return s.zero; }

Ser fromEps(const Eps& v) {
  if (v.isZero()) return Ser();
  Ser r;
  r.zero = false;
  r.base = *v.ord();
  r.end = r.base + kPrec;
  r.c.assign(kPrec, QH(0));
  for (int i = 0; i < kPrec; ++i) r.c[static_cast<std::size_t>(i)] = v.laurentCoeff(r.base + i);
  r.normalize();
  return r;
}

std::string termStr(const Rat& c, int deg, bool first) {
  std::string out;
  Rat a = c;
  if (a < 0) {
    out += "-";
    a = -a;
  } else if (!first) {
    out += "+";
  }
  bool unitCoeff = (a == 1) && deg > 0;
  if (!unitCoeff) out += ratStr(a);
  if (deg > 0) {
    if (!unitCoeff) out += "*";
    out += "h";
    if (deg > 1) out += "^" + std::to_string(deg);
  }
  return out;
}

std::string qhPolyStr(const UniPoly<Rat>& p) {
  if (p.isZero()) return "0";
  std::string out;
  for (int i = 0; i <= p.degree(); ++i) {
    Rat c = p.coeff(i);
    if (c == 0) continue;
    out += termStr(c, i, out.empty());
  }
  return out;
}

int nonzeroOrderCount(const TraceStep& s) {
  int n = 0;
  for (const auto& o : s.orders)
    if (!o || *o != 0) ++n;
  return n;
}

bool sameOrders(const TraceStep& a, const TraceStep& b) { return a.orders == b.orders; }

TraceStep makeStep(int index, const std::array<Ser, 4>& coords) {
  TraceStep s;
  s.index = index;
  for (int i = 0; i < 4; ++i) {
    const Ser& v = coords[i];
    if (v.zero) {
      s.orders[i] = std::nullopt;
      s.lead[i] = QH(0);
      s.leading[i] = "0";
      s.constTerm[i] = QH(0);
      continue;
    }
    s.orders[i] = v.base;
    s.lead[i] = v.c[0];
    s.leading[i] = qhStr(v.c[0]);
    if (v.base > 0)
      s.constTerm[i] = QH(0);
    else if (v.base < 0)
      s.constTerm[i] = std::nullopt;
    else
      s.constTerm[i] = v.c[0];
  }
  return s;
}

// Codimension contribution of one projective-plane factor (a,b): move to the
// chart at infinity where the limit point is finite, then count chart
// coordinates that still vary with epsilon.
int planeFactorCodim(const Eps& a, const Eps& b) {
  auto ordOr = [](const Eps& v, int ifZero) -> int {
    auto o = v.ord();
    return o ? *o : ifZero;
  };
  int oa = ordOr(a, 0);
  int ob = ordOr(b, 0);
  std::array<Eps, 2> c;
  if (oa >= 0 && ob >= 0) {
    c = {a, b};
  } else if (oa <= ob) {
    c = {Eps(1) / a, b / a};
  } else {
    c = {a / b, Eps(1) / b};
  }
  int n = 0;
  for (const auto& v : c)
    if (!epsConstant(v)) ++n;
  return n;
}

Rat sampleConstant(Rng& rng) {
  for (;;) {
    Rat r = rng.nonzeroRat();
    if (r != 1 && r != -1) return r;
  }
}

}  // namespace

std::string ambientName(Ambient a) {
  return a == Ambient::FourLines ? "four-lines" : "plane-pair";
}

std::string singClassName(SingClass c) {
  switch (c) {
    case SingClass::Confined: return "confined";
    case SingClass::Cyclic: return "cyclic";
    case SingClass::AntiConfined: return "anti-confined";
    default: return "unresolved";
  }
}

std::string qhStr(const QH& v) {
  if (v.isPolynomial()) return qhPolyStr(v.num);
  return "(" + qhPolyStr(v.num) + ")/(" + qhPolyStr(v.den) + ")";
}

const TraceStep& OrderTrace::at(int index) const {
  for (const auto& s : steps)
    if (s.index == index) return s;
  throw std::out_of_range("no trace step with index " + std::to_string(index));
}

std::string OrderTrace::str() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    os << "step " << s.index << ": orders (";
    for (int i = 0; i < 4; ++i) {
      if (i) os << ", ";
      if (s.orders[i])
        os << *s.orders[i];
      else
        os << "inf";
    }
    os << "), leading (";
    for (int i = 0; i < 4; ++i) os << (i ? ", " : "") << s.leading[i];
    os << ")\n";
  }
  os << "classification: " << singClassName(classification);
  if (period > 0) os << " (period " << period << ")";
  if (!note.empty()) os << " -- " << note;
  os << "\n";
  return os.str();
}

int startCodimension(const EpsilonGerm& g) {
  if (g.ambient == Ambient::PairOfPlanes)
    return planeFactorCodim(g.x[0], g.x[1]) + planeFactorCodim(g.x[2], g.x[3]);
  int n = 0;
  // On a line factor, x and 1/x depend on epsilon together, so constancy can
  // be read off the affine coordinate directly.
  for (const auto& v : g.x)
    if (!epsConstant(v)) ++n;
  return n;
}

std::vector<std::string> presetNames() {
  return {"confined-x2-one", "cyclic-x2-infinity", "anti-confined-x1-infinity",
          "cyclic-plane-pair"};
}

EpsilonGerm presetGerm(const std::string& name, Ambient ambient, unsigned long seed) {
  Rng rng(seed);
  EpsilonGerm g;
  g.ambient = ambient;
  g.seed = seed;
  g.label = name;
  const Eps e = eps_var();
  const Eps inv = Eps(1) / e;
  auto c = [&](const std::string& key) {
    Rat v = sampleConstant(rng);
    g.constants[key] = v;
    return eps_rat(v);
  };
  if (name == "confined-x2-one") {
    g.x = {c("x0"), c("x1"), Eps(1) + e, c("x3")};
  } else if (name == "cyclic-x2-infinity") {
    g.x = {c("x0"), c("x1"), inv, c("x3")};
    // keep the step-1 constant term -x1-x3 away from zero
    while (g.constants["x1"] + g.constants["x3"] == 0) {
      g.constants["x3"] = sampleConstant(rng);
      g.x[3] = eps_rat(g.constants["x3"]);
    }
  } else if (name == "anti-confined-x1-infinity") {
    g.x = {c("x0"), inv, c("x2"), c("x3")};
  } else if (name == "cyclic-plane-pair") {
    g.x = {c("x0"), c("x1"), inv, c("c") * inv};
  } else {
    throw std::invalid_argument("unknown preset germ: " + name);
  }
  return g;
}

OrderTrace track(const EpsilonGerm& start, int forwardSteps, int backwardSteps) {
  bool allConst = true;
  for (const auto& v : start.x)
    if (!epsConstant(v)) allConst = false;
  if (allConst)
    throw DegenerateGermError("germ has no epsilon dependence in any coordinate");

  Ser h;
  h.zero = false;
  h.base = 0;
  h.end = kPrec;
  h.c.assign(kPrec, QH(0));
  h.c[0] = qh_h();
  std::array<Ser, 4> s0;
  for (int i = 0; i < 4; ++i) s0[static_cast<std::size_t>(i)] = fromEps(start.x[static_cast<std::size_t>(i)]);

  std::vector<TraceStep> back;
  std::array<Ser, 4> cur = s0;
  for (int k = 1; k <= backwardSteps; ++k) {
    cur = applyPhiInverseVals<Ser>(cur, h);
    back.push_back(makeStep(-k, cur));
  }
  OrderTrace trace;
  for (auto it = back.rbegin(); it != back.rend(); ++it) trace.steps.push_back(*it);
  trace.steps.push_back(makeStep(0, s0));
  cur = s0;
  for (int k = 1; k <= forwardSteps; ++k) {
    cur = applyPhiVals<Ser>(cur, h);
    trace.steps.push_back(makeStep(k, cur));
  }
  classify(trace, start);
  return trace;
}

SingClass classify(OrderTrace& trace, const EpsilonGerm& start) {
  trace.classification = SingClass::Unresolved;
  trace.period = 0;
  trace.note.clear();

  int codim = startCodimension(start);
  if (codim != 1) {
    trace.note = "start germ has codimension " + std::to_string(codim) + " in the " +
                 ambientName(start.ambient) +
                 " ambient; the pattern does not occur as a hypersurface germ there";
    return trace.classification;
  }

  const TraceStep& s0 = trace.at(0);
  int maxForward = trace.steps.back().index;

  // Constant slots of the start germ and their exact values.
  std::vector<std::pair<int, QH>> startConsts;
  for (int i = 0; i < 4; ++i) {
    const Eps& v = start.x[static_cast<std::size_t>(i)];
    if (epsConstant(v) && !v.isZero()) startConsts.emplace_back(i, *s0.constTerm[i]);
  }

  // Cyclic: order vector recurs and some start constant returns to its slot.
  // Only claimed for germs with a pole somewhere (hypersurfaces at infinity):
  // for an affine hypersurface germ every generic iterate has the all-zero
  // order vector again, so order recurrence carries no information there.
  bool poleStart = false;
  for (const auto& o : s0.orders)
    if (o && *o < 0) poleStart = true;
  for (int k = 1; poleStart && k <= maxForward; ++k) {
    const TraceStep& s = trace.at(k);
    if (!sameOrders(s, s0)) continue;
    for (const auto& [slot, val] : startConsts) {
      const auto& ct = s.constTerm[slot];
      if (ct && *ct == val) {
        trace.classification = SingClass::Cyclic;
        trace.period = k;
        trace.note = "order pattern and slot-" + std::to_string(slot) +
                     " constant recur after " + std::to_string(k) + " steps";
        return trace.classification;
      }
    }
  }

  // Confined: orders all return to zero after a genuine excursion and a start
  // constant reappears as the constant term of a different slot.
  for (int k = 2; k <= maxForward; ++k) {
    const TraceStep& s = trace.at(k);
    if (nonzeroOrderCount(s) != 0) continue;
    bool excursion = false;
    for (int j = 1; j < k; ++j)
      if (nonzeroOrderCount(trace.at(j)) > 0) excursion = true;
    if (!excursion) continue;
    for (const auto& [slot, val] : startConsts) {
      for (int other = 0; other < 4; ++other) {
        if (other == slot) continue;
        const auto& ct = s.constTerm[other];
        if (ct && *ct == val) {
          trace.classification = SingClass::Confined;
          trace.period = k;
          trace.note = "orders vanish again after " + std::to_string(k) +
                       " steps with the slot-" + std::to_string(slot) +
                       " constant recovered in slot " + std::to_string(other);
          return trace.classification;
        }
      }
    }
  }

  // Anti-confined: the germ is squeezed between lower-dimensional germs in
  // both time directions.
  if (trace.steps.front().index <= -1) {
    bool backLower = nonzeroOrderCount(trace.at(-1)) >= 2;
    bool fwdLower = false;
    for (int k = 1; k <= maxForward; ++k)
      if (nonzeroOrderCount(trace.at(k)) >= 2) fwdLower = true;
    if (backLower && fwdLower) {
      trace.classification = SingClass::AntiConfined;
      trace.note = "lower-dimensional germs on both sides of the hypersurface germ";
      return trace.classification;
    }
  }

  trace.note = "no recurrence detected within the tracked range";
  return trace.classification;
}

SingClass trackConsensus(const std::string& preset, Ambient ambient, int forwardSteps,
                         int backwardSteps, const std::vector<unsigned long>& seeds,
                         std::vector<OrderTrace>* traces) {
  if (seeds.empty()) throw std::invalid_argument("trackConsensus needs at least one seed");
  std::optional<SingClass> cls;
  int period = 0;
  for (unsigned long s : seeds) {
    OrderTrace t = track(presetGerm(preset, ambient, s), forwardSteps, backwardSteps);
    if (!cls) {
      cls = t.classification;
      period = t.period;
    } else if (*cls != t.classification || period != t.period) {
      throw InconclusiveError("seed " + std::to_string(s) + " classifies " + preset +
                              " as " + singClassName(t.classification) +
                              ", disagreeing with " + singClassName(*cls));
    }
    if (traces) traces->push_back(std::move(t));
  }
  return *cls;
}

}  // namespace kdv4
