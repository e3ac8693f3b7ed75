#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "circuits/augment.hpp"
#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/polymodel.hpp"
#include "circuits/polyhedron.hpp"

namespace circuits {

namespace detail {

inline IndexSet zero_set(const RatMatrix& d, std::span<const Rational> w) {
  RatVector dw = d * w;
  IndexSet z;
  for (std::size_t i = 0; i < dw.size(); ++i)
    if (sgn(dw[i]) == 0) z.push_back(i);
  return z;
}

inline std::size_t zero_set_rank(const RatMatrix& d, std::span<const Rational> w) {
  return rank(d.select_rows(zero_set(d, w)));
}

inline void check_kernel_direction(const Polyhedron& p, std::span<const Rational> w) {
  if (w.size() != p.n()) throw Error(Errc::DimensionMismatch, "direction length differs from n");
  if (is_zero(w)) throw Error(Errc::ZeroVector, "direction is zero");
  if (!is_zero(p.A() * w)) throw Error(Errc::NotInKernel, "A w != 0");
}

/// min{(Bw)_j / (Bg)_j : (Bw)_j (Bg)_j > 0}
inline std::optional<Rational> conformal_ratio(std::span<const Rational> bw, std::span<const Rational> bg) {
  std::optional<Rational> best;
  for (std::size_t j = 0; j < bw.size(); ++j) {
    if (sgn(bw[j]) * sgn(bg[j]) <= 0) continue;
    Rational r = bw[j] / bg[j];
    if (!best || r < *best) best = std::move(r);
  }
  return best;
}

}  // namespace detail

/// Finds a circuit g with supp(Bg) strictly inside supp(Bw) and Bg
/// sign-compatible with Bw by repeated rank augmentation: pick rows j, k
/// outside the zero set Z that raise rank(D_Z) by two, take y vanishing on
/// Z and k but not on j, and subtract the largest multiple of y that keeps
/// the signs of Bw.
inline Circuit find_sign_compatible_circuit_gaussian(const Polyhedron& p, std::span<const Rational> w) {
  detail::check_kernel_direction(p, w);
  const RatMatrix d = p.stacked();
  const std::size_t target = p.n() - 1;
  if (detail::zero_set_rank(d, w) == target) throw Error(Errc::IsAlreadyCircuit, "w is a circuit direction");

  RatVector z(w.begin(), w.end());
  for (;;) {
    IndexSet zs = detail::zero_set(d, z);
    std::size_t r = rank(d.select_rows(zs));
    if (r == target) break;
    std::vector<bool> in_z(d.rows(), false);
    for (auto i : zs) in_z[i] = true;

    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t j = 0; j < d.rows() && !pair; ++j) {
      if (in_z[j]) continue;
      for (std::size_t k = j + 1; k < d.rows() && !pair; ++k) {
        if (in_z[k]) continue;
        IndexSet rows = zs;
        rows.push_back(j);
        rows.push_back(k);
        if (rank(d.select_rows(rows)) == r + 2) pair = std::make_pair(j, k);
      }
    }
    if (!pair) throw std::logic_error("no rank-extending row pair outside the zero set");
    auto [j, k] = *pair;

    IndexSet rows_k = zs;
    rows_k.push_back(k);
    RatVector y;
    for (auto& v : kernel_basis(d.select_rows(rows_k))) {
      if (sgn(dot(d.row(j), v)) != 0) {
        y = std::move(v);
        break;
      }
    }
    if (y.empty()) throw std::logic_error("kernel vector separating rows j and k not found");
    RatVector dz = d * z;
    if (sgn(dz[j]) * sgn(dot(d.row(j), y)) < 0)
      for (auto& x : y) x = -x;
    auto alpha = detail::conformal_ratio(p.B() * z, p.B() * y);
    if (!alpha) throw std::logic_error("no positive-product index for the reduction step");
    z = axpy(z, -*alpha, y);
  }
  return make_circuit(p, z);
}

enum class PickerKind { SteepestLP, NaiveGaussian };

struct Picker {
  PickerKind kind = PickerKind::SteepestLP;
  RatVector objective;  // SteepestLP only

  static Picker steepest(RatVector c) { return {PickerKind::SteepestLP, std::move(c)}; }
  static Picker gaussian() { return {PickerKind::NaiveGaussian, {}}; }
};

/// Circuit minimizing c.x over the normalized face of directions
/// sign-compatible with w.
inline Circuit steepest_sign_compatible_circuit(const Polyhedron& p, std::span<const Rational> w,
                                                std::span<const Rational> c) {
  PolyModel m = restrict_sign_compatible(build_polytope(p), p, w);
  auto opt = detail::minimize_over_model(m, c);
  if (!opt) throw std::logic_error("sign-compatible face is empty for a nonzero kernel direction");
  auto circuit = extract_circuit(opt->first);
  if (!circuit) throw std::logic_error("sign-compatible face has a y+ = y- vertex");
  return *circuit;
}

struct SumTerm {
  Rational lambda;
  Circuit g;
};

struct SignCompatibleSum {
  std::vector<SumTerm> terms;
  std::vector<RatVector> residuals;  // residuals[i] is w before term i was subtracted
};

/// Writes u as a sum of circuits sign-compatible with u w.r.t. B.
inline SignCompatibleSum sign_compatible_sum(const Polyhedron& p, std::span<const Rational> u, const Picker& picker) {
  detail::check_kernel_direction(p, u);
  if (picker.kind == PickerKind::SteepestLP && picker.objective.size() != p.n())
    throw Error(Errc::DimensionMismatch, "objective length differs from n");
  const RatMatrix d = p.stacked();
  SignCompatibleSum out;
  RatVector w(u.begin(), u.end());
  for (;;) {
    out.residuals.push_back(w);
    if (detail::zero_set_rank(d, w) == p.n() - 1) {
      Circuit g = make_circuit(p, w);
      std::size_t j = 0;
      while (sgn(g.g[j]) == 0) ++j;
      out.terms.push_back({w[j] / Rational(g.g[j]), std::move(g)});
      return out;
    }
    Circuit g = picker.kind == PickerKind::SteepestLP ? steepest_sign_compatible_circuit(p, w, picker.objective)
                                                      : find_sign_compatible_circuit_gaussian(p, w);
    RatVector bw = p.B() * w;
    if (!conformal(g.bg, bw)) throw std::logic_error("picked circuit is not sign-compatible with the residual");
    auto lambda = detail::conformal_ratio(bw, g.bg);
    if (!lambda) throw std::logic_error("no positive-product index for lambda");
    w = axpy(w, -*lambda, g.direction());
    out.terms.push_back({*lambda, std::move(g)});
  }
}

struct WalkStep {
  Circuit g;
  Rational lambda;
};

/// y_{i+1} = y_i + lambda_i g_i
struct CircuitWalk {
  std::vector<RatVector> points;
  std::vector<WalkStep> steps;
};

/// Sign-compatible circuit walk from v1 to v2 built from a sign-compatible sum.
inline CircuitWalk circuit_walk(const Polyhedron& p, std::span<const Rational> v1, std::span<const Rational> v2,
                                const Picker& picker) {
  if (!contains(p, v1) || !contains(p, v2)) throw Error(Errc::PointNotInPolyhedron, "walk endpoint is not in P");
  RatVector u = sub(v2, v1);
  if (is_zero(u)) throw Error(Errc::IdenticalEndpoints, "v1 = v2");
  SignCompatibleSum sum = sign_compatible_sum(p, u, picker);
  CircuitWalk walk;
  walk.points.emplace_back(v1.begin(), v1.end());
  for (auto& t : sum.terms) {
    walk.points.push_back(axpy(walk.points.back(), t.lambda, t.g.direction()));
    walk.steps.push_back({std::move(t.g), std::move(t.lambda)});
  }
  return walk;
}

/// Each step is a vertex optimum of min c.x over the normalized face of
/// directions sign-compatible with the remaining difference.
inline CircuitWalk c_steepest_walk(const Polyhedron& p, std::span<const Rational> v1, std::span<const Rational> v2,
                                   std::span<const Rational> c) {
  return circuit_walk(p, v1, v2, Picker::steepest(RatVector(c.begin(), c.end())));
}

struct WalkReport {
  bool exact = true;               // points chain exactly through the steps
  bool feasible = true;            // every y_i in P
  bool sign_compatible = true;     // every Bg_i conformal to B(y_t - y_0)
  bool integral = true;            // every y_i integral
  bool steepness_monotone = true;  // c.g_i/||Bg_i||_1 non-decreasing (true when no c)
  bool length_within_bound = true; // t <= n - rank(A)
  // supp(g_i) within supp(y_t - y_i); informational, not enforced by construction
  bool x_support_contained = true;
  std::optional<bool> permutation_feasible;

  bool ok() const {
    return exact && feasible && sign_compatible && length_within_bound && steepness_monotone &&
           permutation_feasible.value_or(true);
  }
};

inline WalkReport validate_walk(const Polyhedron& p, const CircuitWalk& walk,
                                std::optional<std::span<const Rational>> c = std::nullopt,
                                std::optional<std::span<const std::size_t>> permutation = std::nullopt) {
  WalkReport rep;
  if (walk.points.size() != walk.steps.size() + 1) {
    rep.exact = false;
    return rep;
  }
  const RatVector& start = walk.points.front();
  const RatVector& end = walk.points.back();
  RatVector bu = p.B() * sub(end, start);
  for (const auto& y : walk.points) {
    rep.feasible = rep.feasible && contains(p, y);
    rep.integral = rep.integral && is_integral(y);
  }
  std::optional<Rational> prev;
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    const auto& s = walk.steps[i];
    RatVector dir = s.g.direction();
    if (sgn(s.lambda) <= 0 || axpy(walk.points[i], s.lambda, dir) != walk.points[i + 1]) rep.exact = false;
    RatVector bg = p.B() * dir;
    if (!conformal(bg, bu)) rep.sign_compatible = false;
    if (!conformal(dir, sub(end, walk.points[i]))) {
      // only the support part matters here; sign is implied for conformal sums
      auto rem = sub(end, walk.points[i]);
      for (std::size_t j = 0; j < dir.size(); ++j)
        if (sgn(dir[j]) != 0 && sgn(rem[j]) == 0) rep.x_support_contained = false;
    }
    if (c) {
      Rational st = dot(*c, dir) / norm1(bg);
      if (prev && st < *prev) rep.steepness_monotone = false;
      prev = st;
    }
  }
  rep.length_within_bound = walk.steps.size() <= p.n() - rank(p.A());
  if (permutation) {
    const auto& perm = *permutation;
    bool ok = perm.size() == walk.steps.size();
    std::vector<bool> seen(walk.steps.size(), false);
    RatVector y = start;
    for (std::size_t k = 0; ok && k < perm.size(); ++k) {
      if (perm[k] >= walk.steps.size() || seen[perm[k]]) {
        ok = false;
        break;
      }
      seen[perm[k]] = true;
      const auto& s = walk.steps[perm[k]];
      y = axpy(y, s.lambda, s.g.direction());
      ok = contains(p, y);
    }
    rep.permutation_feasible = ok;
  }
  return rep;
}

}  // namespace circuits
