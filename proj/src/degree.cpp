#include "kdv4/degree.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "kdv4/dynamics.hpp"
#include "kdv4/ratfunc.hpp"

namespace kdv4 {

namespace {

// Line iteration over the prime field F_p, p = 2^61 - 1, instead of Q.
// Exact iteration of a line to n = 10 over Q is correct but its coefficient
// bit-size grows super-polynomially (minutes per trial); only the degrees of
// the reduced fractions are needed, and modulo p the reduced degree never
// exceeds the characteristic-zero degree, with equality unless p divides a
// resultant-sized integer. Trial consensus over independent lines plus the
// exact cross-check against the lattice-action prediction keeps the final
// certificate two-sided.
struct Fp {
  static constexpr unsigned long long P = (1ULL << 61) - 1;
  unsigned long long v = 0;

  Fp() = default;
  Fp(long x) {  // NOLINT: implicit to satisfy the coefficient-field concept
    long long m = static_cast<long long>(x) % static_cast<long long>(P);
    if (m < 0) m += static_cast<long long>(P);
    v = static_cast<unsigned long long>(m);
  }
  static Fp raw(unsigned long long x) {
    Fp f;
    f.v = x % P;
    return f;
  }
  friend bool operator==(const Fp&, const Fp&) = default;
  friend Fp operator+(Fp a, Fp b) {
    unsigned long long s = a.v + b.v;
    return raw(s >= P ? s - P : s);
  }
  friend Fp operator-(Fp a, Fp b) { return raw(a.v >= b.v ? a.v - b.v : a.v + P - b.v); }
  friend Fp operator-(Fp a) { return raw(a.v == 0 ? 0 : P - a.v); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(a.v) * b.v) % P));
  }
  Fp pow(unsigned long long e) const {
    Fp r(1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  friend Fp operator/(Fp a, Fp b) {
    if (b.v == 0) throw DivideByZeroError();
    return a * b.pow(P - 2);
  }
};

using FS = RatFunc<Fp>;

Fp fpOf(const Rat& r) {
  Fp num = Fp::raw(mpz_fdiv_ui(r.get_num().get_mpz_t(), Fp::P));
  Fp den = Fp::raw(mpz_fdiv_ui(r.get_den().get_mpz_t(), Fp::P));
  return num / den;
}

FS linePoly(Fp a, Fp b) {
  UniPoly<Fp> p;
  p.c = {a, b};
  return FS(p);
}

long degOf(const FS& v) { return std::max<long>(v.num.degree(), v.den.degree()); }

constexpr long kLineHeight = 97;
constexpr int kRetryBudget = 8;

Fp sampleFp(Rng& rng) { return Fp(rng.intIn(-kLineHeight, kLineHeight)); }
Fp sampleFpNonzero(Rng& rng) {
  return Fp(rng.intIn(1, kLineHeight) * (rng.intIn(0, 1) ? 1 : -1));
}

// One run: line in the chosen factor, the other factor frozen; returns for
// each n <= nMax the parameter-degree of the second-factor components.
std::vector<long> measurePhiRun(int nMax, bool lineInFirstFactor, Rng& rng) {
  FS h(sampleFpNonzero(rng));
  std::array<FS, 4> x;
  for (int i = 0; i < 4; ++i) {
    bool onLine = lineInFirstFactor ? i < 2 : i >= 2;
    if (onLine)
      x[static_cast<std::size_t>(i)] = linePoly(sampleFp(rng), sampleFpNonzero(rng));
    else
      x[static_cast<std::size_t>(i)] = FS(sampleFp(rng));
  }
  std::vector<long> deg;
  deg.push_back(std::max(degOf(x[2]), degOf(x[3])));
  for (int n = 1; n <= nMax; ++n) {
    x = applyPhiVals<FS>(x, h);
    deg.push_back(std::max(degOf(x[2]), degOf(x[3])));
  }
  return deg;
}

// Runs `maker` `trials` times, majority-merges the resulting sequences and
// reports disagreement. Each trial retries a bounded number of times when the
// sampled line degenerates onto an indeterminacy locus.
template <class Maker>
std::vector<std::vector<long>> runTrials(int trials, Rng& rng, Maker maker) {
  std::vector<std::vector<long>> out;
  for (int t = 0; t < trials; ++t) {
    int attempts = 0;
    for (;;) {
      try {
        out.push_back(maker(rng));
        break;
      } catch (const PoleError&) {
        if (++attempts >= kRetryBudget)
          throw ResampleError("every retry hit an indeterminacy locus");
      }
    }
  }
  return out;
}

std::vector<long> majority(const std::vector<std::vector<long>>& runs, bool* disagreed) {
  *disagreed = false;
  std::map<std::vector<long>, int> votes;
  for (const auto& r : runs) ++votes[r];
  if (votes.size() > 1) *disagreed = true;
  auto best = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

}  // namespace

DegreeSequenceResult degreeSequence(int nMax, int trials, unsigned long seed) {
  if (nMax < 0 || trials < 1) throw std::invalid_argument("degreeSequence: bad arguments");
  Rng rng(seed);
  DegreeSequenceResult res;
  std::string warn;
  auto measure = [&](bool firstFactor) {
    auto runs = runTrials(trials, rng,
                          [&](Rng& r) { return measurePhiRun(nMax, firstFactor, r); });
    bool dis = false;
    auto seq = majority(runs, &dis);
    if (dis) {
      // genericity check failed once: one extra round, then majority
      auto more = runTrials(trials, rng,
                            [&](Rng& r) { return measurePhiRun(nMax, firstFactor, r); });
      runs.insert(runs.end(), more.begin(), more.end());
      seq = majority(runs, &dis);
      warn = "trial disagreement; majority over " + std::to_string(runs.size()) + " lines";
    }
    return seq;
  };
  std::vector<long> degA = measure(true);
  std::vector<long> degB = measure(false);
  for (int n = 0; n <= nMax; ++n)
    res.degrees.push_back({degA[static_cast<std::size_t>(n)], degB[static_cast<std::size_t>(n)]});
  res.warning = warn;
  return res;
}

QuadFit quadraticFit(const std::vector<long>& seq) {
  if (seq.size() < 6)
    throw InsufficientDataError("quadraticFit needs at least 6 terms, got " +
                                std::to_string(seq.size()));
  long n = static_cast<long>(seq.size());
  for (int p = 1; p <= 4; ++p) {
    // Need every residue class to contribute at least one second difference
    // somewhere, so the tail must span 3 periods.
    for (long onset = 0; onset + 3 * p <= n; ++onset) {
      std::optional<long> c;
      bool ok = true;
      int checked = 0;
      for (long i = onset; ok && i + 2 * p < n; ++i) {
        long d2 = seq[static_cast<std::size_t>(i + 2 * p)] -
                  2 * seq[static_cast<std::size_t>(i + p)] + seq[static_cast<std::size_t>(i)];
        if (!c)
          c = d2;
        else if (*c != d2)
          ok = false;
        ++checked;
      }
      // Every residue class mod p must contribute a second difference and at
      // least one class must be confirmed twice, else a short tail of a
      // longer-period pattern can masquerade as constant.
      if (ok && c && *c > 0 && checked >= p + 1) {
        QuadFit f;
        f.eventuallyQuadratic = true;
        f.leadingCoefficient = rat(*c, 2L * p * p);
        f.onset = static_cast<int>(onset);
        f.period = p;
        return f;
      }
    }
  }
  return {};
}

PsiDegreeResult psiDegreeSequence(const Rat& i2, int nMax, int trials, unsigned long seed) {
  if (nMax < 0 || trials < 1) throw std::invalid_argument("psiDegreeSequence: bad arguments");
  Rng rng(seed);
  auto runs = runTrials(trials, rng, [&](Rng& r) {
    FS h(sampleFpNonzero(r));
    FS iv(fpOf(i2));
    std::array<FS, 3> x;
    for (auto& v : x) v = linePoly(sampleFp(r), sampleFpNonzero(r));
    std::vector<long> deg;
    auto maxDeg = [&] {
      long d = 0;
      for (const auto& v : x) d = std::max(d, degOf(v));
      return d;
    };
    deg.push_back(maxDeg());
    for (int k = 1; k <= nMax; ++k) {
      x = applyPsiVals<FS>(x, iv, h);
      deg.push_back(maxDeg());
    }
    return deg;
  });
  PsiDegreeResult res;
  bool dis = false;
  res.degrees = majority(runs, &dis);
  if (dis) res.warning = "trial disagreement; majority of " + std::to_string(runs.size());
  return res;
}

}  // namespace kdv4
