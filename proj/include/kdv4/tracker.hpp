#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdv4/dynamics.hpp"
#include "kdv4/ratfunc.hpp"
#include "kdv4/rational.hpp"

namespace kdv4 {

// Ambient space in which a singularity pattern is tracked. The same affine
// coordinates (x0,x1,x2,x3) compactify either to a product of four lines or
// to a product of two planes; which hypersurfaces exist at infinity differs.
enum class Ambient { FourLines, PairOfPlanes };

enum class SingClass { Confined, Cyclic, AntiConfined, Unresolved };

std::string ambientName(Ambient a);
std::string singClassName(SingClass c);

struct DegenerateGermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One-parameter family of points transverse to a hypersurface: each
// coordinate is a Laurent germ in epsilon with coefficients in Q(h).
// Transverse position constants are sampled rationals, recorded by name so
// that later steps of a trace can be matched against them.
struct EpsilonGerm {
  Ambient ambient = Ambient::FourLines;
  std::array<Eps, 4> x;
  std::map<std::string, Rat> constants;
  unsigned long seed = 0;
  std::string label;
};

struct TraceStep {
  int index = 0;  // 0 = start germ, negative = inverse iterates
  // Epsilon-order of each coordinate; nullopt marks an identically zero
  // coordinate (infinite order).
  std::array<std::optional<int>, 4> orders;
  // Principal Laurent coefficient of each coordinate as an element of Q(h)
  // (zero for a zero coordinate), plus a text rendering.
  std::array<QH, 4> lead;
  std::array<std::string, 4> leading;
  // Constant (epsilon^0) term; nullopt when the coordinate has a pole.
  std::array<std::optional<QH>, 4> constTerm;
};

struct OrderTrace {
  std::vector<TraceStep> steps;  // ascending index; always contains index 0
  SingClass classification = SingClass::Unresolved;
  int period = 0;  // recurrence length for Confined / Cyclic
  std::string note;

  const TraceStep& at(int index) const;
  std::string str() const;
};

// Plain-text rendering of an element of Q(h).
std::string qhStr(const QH& v);

// Codimension of the locus the germ degenerates to as epsilon -> 0, measured
// in the given ambient space (1 = hypersurface germ). Computed by moving each
// factor into the chart at infinity where the limit is finite and counting
// chart coordinates that still depend on epsilon.
int startCodimension(const EpsilonGerm& g);

// Built-in start germs, named by the hypersurface they sit on:
//   "confined-x2-one"          x2 = 1 + eps           (pattern confines)
//   "cyclic-x2-infinity"       x2 = 1/eps             (period-3 cycle)
//   "anti-confined-x1-infinity" x1 = 1/eps            (anti-confined)
//   "cyclic-plane-pair"        x2 = 1/eps, x3 = c/eps (period-3 cycle on the
//                                                      plane-pair ambient)
std::vector<std::string> presetNames();
EpsilonGerm presetGerm(const std::string& name, Ambient ambient, unsigned long seed);

// Iterates the map forwardSteps times (and its inverse backwardSteps times)
// starting from the germ, recording epsilon-orders and principal
// coefficients, then classifies the resulting pattern. Throws
// DegenerateGermError when no coordinate depends on epsilon.
OrderTrace track(const EpsilonGerm& start, int forwardSteps, int backwardSteps = 0);

// Classification heuristics over a computed trace (also invoked by track):
//  - Cyclic: the order vector recurs at some step k and at least one start
//    constant reappears as the constant term of its own slot (period k).
//  - Confined: all orders return to zero after at least one step with a
//    nonzero order, and a start constant reappears in a different slot.
//  - AntiConfined: at least two coordinates are polar/zero one step
//    backwards and again at some forward step, with no recurrence.
//  - Unresolved otherwise, or when the start is not a hypersurface germ in
//    its ambient space (see note).
SingClass classify(OrderTrace& trace, const EpsilonGerm& start);

// Runs track() for each seed and requires identical classifications (and
// periods); throws InconclusiveError from the tower module on disagreement.
SingClass trackConsensus(const std::string& preset, Ambient ambient, int forwardSteps,
                         int backwardSteps, const std::vector<unsigned long>& seeds,
                         std::vector<OrderTrace>* traces = nullptr);

}  // namespace kdv4
