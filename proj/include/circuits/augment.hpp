#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/lpsolve.hpp"
#include "circuits/polymodel.hpp"
#include "circuits/polyhedron.hpp"

namespace circuits {

enum class SteepestKind { NoFeasibleDirection, NoDescent, Descent };

struct SteepestOutcome {
  SteepestKind kind = SteepestKind::NoDescent;
  std::optional<Circuit> circuit;  // Descent only
  Rational steepness;              // Descent only: c.g / ||Bg||_1 < 0
};

namespace detail {

/// Minimizes c.x over a normalized model. Returns the optimal vertex, or
/// nullopt when the model is empty.
inline std::optional<std::pair<ModelPoint, Rational>> minimize_over_model(const PolyModel& m,
                                                                          std::span<const Rational> c) {
  ModelSystem sys = model_system(m);
  LinearProgram lp{sys.equalities, sys.rhs, sys.nonneg, zeros(sys.kept.size())};
  for (std::size_t k = 0; k < sys.kept.size(); ++k)
    if (sys.kept[k] < m.n) lp.objective[k] = c[sys.kept[k]];
  LPResult res = solve_vertex(lp);
  if (res.status == LPStatus::Infeasible) return std::nullopt;
  if (res.status == LPStatus::Unbounded) throw std::logic_error("normalized circuit model is unbounded");
  return std::make_pair(expand_point(m, sys, res.point), res.value);
}

}  // namespace detail

/// Solves the steepest-descent LP over the face of strictly feasible
/// directions at x0. Under the normalization ||Bg||_1 = 1 the optimal value
/// is the steepness of the returned circuit.
inline SteepestOutcome steepest_descent_circuit(const Polyhedron& p, std::span<const Rational> c,
                                                std::span<const Rational> x0) {
  if (c.size() != p.n()) throw Error(Errc::DimensionMismatch, "objective length differs from n");
  PolyModel m = restrict_strictly_feasible(build_polytope(p), p, x0);
  auto opt = detail::minimize_over_model(m, c);
  SteepestOutcome out;
  if (!opt) {
    out.kind = SteepestKind::NoFeasibleDirection;
    return out;
  }
  if (sgn(opt->second) >= 0) {
    out.kind = SteepestKind::NoDescent;
    return out;
  }
  auto circuit = extract_circuit(opt->first);
  if (!circuit) throw std::logic_error("descent vertex has y+ = y-");
  Rational check = dot(c, circuit->direction()) / norm1(circuit->bg);
  if (check != opt->second) throw std::logic_error("steepness of extracted circuit disagrees with LP value");
  out.kind = SteepestKind::Descent;
  out.circuit = std::move(circuit);
  out.steepness = opt->second;
  return out;
}

struct StepLength {
  bool bounded = false;
  Rational alpha;  // bounded only
};

/// Largest alpha with x + alpha g in P.
inline StepLength maximal_step(const Polyhedron& p, std::span<const Rational> x, const Circuit& g) {
  if (!contains(p, x)) throw Error(Errc::PointNotInPolyhedron, "step origin is not in P");
  RatVector dir = g.direction();
  if (!is_zero(p.A() * dir)) throw Error(Errc::NotInKernel, "A g != 0");
  RatVector bx = p.B() * x;
  RatVector bg = p.B() * dir;
  StepLength s;
  for (std::size_t i = 0; i < bg.size(); ++i) {
    if (sgn(bg[i]) <= 0) continue;
    Rational slack = p.d()[i] - bx[i];
    if (sgn(slack) == 0) throw Error(Errc::NotStrictlyFeasible, "row " + std::to_string(i + 1) + " blocks g");
    Rational ratio = slack / bg[i];
    if (!s.bounded || ratio < s.alpha) {
      s.alpha = std::move(ratio);
      s.bounded = true;
    }
  }
  return s;
}

struct AugmentationStep {
  RatVector x;  // point before the step
  Circuit g;
  Rational alpha;
  Rational steepness;
};

enum class TraceTerminal { Optimal, Unbounded };

struct AugmentationTrace {
  std::vector<AugmentationStep> steps;
  TraceTerminal terminal = TraceTerminal::Optimal;
  RatVector x_final;                  // last point reached
  Rational value;                     // c.x_final
  std::optional<Circuit> unbounded;   // certificate direction when Unbounded
};

/// Steepest-descent circuit augmentation with maximal steps.
inline AugmentationTrace solve_steepest_descent(const Polyhedron& p, std::span<const Rational> c,
                                                std::span<const Rational> x0) {
  if (!contains(p, x0)) throw Error(Errc::PointNotInPolyhedron, "start point is not in P");
  AugmentationTrace trace;
  RatVector x(x0.begin(), x0.end());
  for (;;) {
    SteepestOutcome sd = steepest_descent_circuit(p, c, x);
    if (sd.kind != SteepestKind::Descent) break;
    StepLength step = maximal_step(p, x, *sd.circuit);
    if (!step.bounded) {
      trace.terminal = TraceTerminal::Unbounded;
      trace.unbounded = sd.circuit;
      break;
    }
    RatVector next = axpy(x, step.alpha, sd.circuit->direction());
    trace.steps.push_back({std::move(x), *sd.circuit, step.alpha, sd.steepness});
    x = std::move(next);
  }
  trace.value = dot(c, x);
  trace.x_final = std::move(x);
  return trace;
}

struct TraceReport {
  bool feasible_exact = true;      // every point in P, x_{k+1} = x_k + alpha_k g_k, alpha_k > 0
  bool steepness_monotone = true;  // c.g_k/||Bg_k|| <= c.g_{k+1}/||Bg_{k+1}||
  bool no_repeat = true;
  bool orthant_rule = true;        // different closed orthants => strictly increased steepness
  bool step_bound = true;          // step count <= |C(A,B)| when known
  std::vector<std::string> violations;

  bool ok() const { return feasible_exact && steepness_monotone && no_repeat && orthant_rule && step_bound; }
};

inline TraceReport verify_trace(const AugmentationTrace& trace, const Polyhedron& p, std::span<const Rational> c,
                                std::optional<std::size_t> circuit_count = std::nullopt) {
  TraceReport rep;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    rep.violations.push_back(std::move(msg));
  };
  const auto& steps = trace.steps;
  std::vector<Rational> steep(steps.size());
  std::vector<RatVector> bg(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    RatVector dir = s.g.direction();
    bg[k] = p.B() * dir;
    steep[k] = dot(c, dir) / norm1(bg[k]);
    if (!contains(p, s.x)) fail(rep.feasible_exact, "step " + std::to_string(k) + ": point outside P");
    if (sgn(s.alpha) <= 0) fail(rep.feasible_exact, "step " + std::to_string(k) + ": nonpositive step length");
    const RatVector& next = k + 1 < steps.size() ? steps[k + 1].x : trace.x_final;
    if (axpy(s.x, s.alpha, dir) != next) fail(rep.feasible_exact, "step " + std::to_string(k) + ": inexact update");
    if (steep[k] != s.steepness)
      fail(rep.steepness_monotone, "step " + std::to_string(k) + ": recorded steepness differs from c.g/||Bg||");
  }
  if (!contains(p, trace.x_final)) fail(rep.feasible_exact, "final point outside P");
  if (trace.terminal == TraceTerminal::Optimal && dot(c, trace.x_final) != trace.value)
    fail(rep.feasible_exact, "terminal value differs from c.x");
  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (steep[k] > steep[k + 1]) fail(rep.steepness_monotone, "steepness decreased at step " + std::to_string(k + 1));
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      if (steps[i].g.g == steps[j].g.g)
        fail(rep.no_repeat, "circuit repeated at steps " + std::to_string(i) + " and " + std::to_string(j));
      if (!sign_compatible(bg[i], bg[j]) && !(steep[i] < steep[j]))
        fail(rep.orthant_rule, "orthant change without steepness increase between steps " + std::to_string(i) +
                                   " and " + std::to_string(j));
    }
  if (circuit_count && steps.size() > *circuit_count) fail(rep.step_bound, "more steps than circuits");
  return rep;
}

}  // namespace circuits
