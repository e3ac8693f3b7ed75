#pragma once

#include <algorithm>
#include <optional>
#include <tuple>

#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/polyhedron.hpp"

namespace circuits {

/// Constraint system of the circuit model over variables (x, y+, y-):
///
///   A x = 0,   B x - y+ + y- = 0,   [sum y+ + sum y- = 1],   y+, y- >= 0,
///
/// with y+_i fixed to zero for i in zero_plus and y-_i for i in zero_minus.
/// Extreme rays (cone) or vertices (normalized polytope) with y+ != y- are
/// the circuits of P. The standard-form variant has no x block; there x is
/// read as y+ - y- and the linking rows become A (y+ - y-) = 0.
struct PolyModel {
  std::size_t n = 0;       // original dimension (0 for the standard-form variant)
  std::size_t m_b = 0;     // number of (y+, y-) pairs
  RatMatrix a;             // rows of A x = 0, or of A (y+ - y-) = 0 in standard form
  RatMatrix b;             // B (empty in standard form)
  bool standard = false;
  bool normalized = false;
  IndexSet zero_plus;
  IndexSet zero_minus;

  std::size_t variable_count() const { return n + 2 * m_b; }
  std::size_t equality_count() const {
    return (standard ? a.rows() : a.rows() + m_b) + (normalized ? 1 : 0);
  }

  std::size_t x_var(std::size_t j) const { return j; }
  std::size_t plus_var(std::size_t i) const { return n + i; }
  std::size_t minus_var(std::size_t i) const { return n + m_b + i; }
};

struct ModelPoint {
  RatVector x;
  RatVector y_plus;
  RatVector y_minus;

  RatVector y_diff() const { return sub(y_plus, y_minus); }

  friend bool operator==(const ModelPoint& p, const ModelPoint& q) {
    return p.x == q.x && p.y_plus == q.y_plus && p.y_minus == q.y_minus;
  }
  friend bool operator<(const ModelPoint& p, const ModelPoint& q) {
    return std::tie(p.x, p.y_plus, p.y_minus) < std::tie(q.x, q.y_plus, q.y_minus);
  }
};

/// Equality system of a model with its fixed-zero variables eliminated.
struct ModelSystem {
  RatMatrix equalities;
  RatVector rhs;
  std::vector<bool> nonneg;
  IndexSet kept;  // model variable index of each column
};

inline PolyModel build_cone(const Polyhedron& p) {
  PolyModel m;
  m.n = p.n();
  m.m_b = p.m_b();
  m.a = p.A();
  m.b = p.B();
  return m;
}

inline PolyModel build_polytope(const Polyhedron& p) {
  PolyModel m = build_cone(p);
  m.normalized = true;
  return m;
}

/// C_A (or P_A when normalized) of a standard-form polyhedron {Ax = b, x >= 0}.
inline PolyModel build_standard_cone(const RatMatrix& a, bool normalized = false) {
  PolyModel m;
  m.m_b = a.cols();
  m.a = a;
  m.standard = true;
  m.normalized = normalized;
  return m;
}

namespace detail {
inline void add_indices(IndexSet& target, const IndexSet& extra) {
  target.insert(target.end(), extra.begin(), extra.end());
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
}
}  // namespace detail

/// Face of strictly feasible directions at x0: y+_i = 0 on every row tight at x0.
inline PolyModel restrict_strictly_feasible(PolyModel m, const Polyhedron& p, std::span<const Rational> x0) {
  if (!contains(p, x0)) throw Error(Errc::PointNotInPolyhedron, "x0 is not in P");
  detail::add_indices(m.zero_plus, active_rows(p, x0));
  return m;
}

/// Face of directions sign-compatible with u with respect to B.
inline PolyModel restrict_sign_compatible(PolyModel m, const Polyhedron& p, std::span<const Rational> u) {
  if (u.size() != p.n()) throw Error(Errc::DimensionMismatch, "direction length differs from n");
  if (is_zero(u)) throw Error(Errc::ZeroVector, "sign-compatibility target is zero");
  if (!is_zero(p.A() * u)) throw Error(Errc::NotInKernel, "A u != 0");
  RatVector bu = p.B() * u;
  IndexSet plus, minus;
  for (std::size_t i = 0; i < bu.size(); ++i) {
    if (sgn(bu[i]) >= 0) minus.push_back(i);
    if (sgn(bu[i]) <= 0) plus.push_back(i);
  }
  detail::add_indices(m.zero_plus, plus);
  detail::add_indices(m.zero_minus, minus);
  return m;
}

inline ModelSystem model_system(const PolyModel& m) {
  const std::size_t nv = m.variable_count();
  std::vector<bool> fixed(nv, false);
  for (auto i : m.zero_plus) fixed[m.plus_var(i)] = true;
  for (auto i : m.zero_minus) fixed[m.minus_var(i)] = true;

  RatMatrix full(m.equality_count(), nv);
  RatVector rhs = zeros(m.equality_count());
  std::size_t row = 0;
  if (m.standard) {
    for (std::size_t r = 0; r < m.a.rows(); ++r, ++row)
      for (std::size_t i = 0; i < m.m_b; ++i) {
        full(row, m.plus_var(i)) = m.a(r, i);
        full(row, m.minus_var(i)) = -m.a(r, i);
      }
  } else {
    for (std::size_t r = 0; r < m.a.rows(); ++r, ++row)
      for (std::size_t j = 0; j < m.n; ++j) full(row, m.x_var(j)) = m.a(r, j);
    for (std::size_t i = 0; i < m.m_b; ++i, ++row) {
      for (std::size_t j = 0; j < m.n; ++j) full(row, m.x_var(j)) = m.b(i, j);
      full(row, m.plus_var(i)) = -1;
      full(row, m.minus_var(i)) = 1;
    }
  }
  if (m.normalized) {
    for (std::size_t i = 0; i < m.m_b; ++i) {
      full(row, m.plus_var(i)) = 1;
      full(row, m.minus_var(i)) = 1;
    }
    rhs[row] = 1;
  }

  ModelSystem sys;
  for (std::size_t v = 0; v < nv; ++v)
    if (!fixed[v]) sys.kept.push_back(v);
  sys.equalities = full.select_cols(sys.kept);
  sys.rhs = std::move(rhs);
  for (auto v : sys.kept) sys.nonneg.push_back(v >= m.n);
  return sys;
}

/// Lifts a solution of model_system back to a full model point.
inline ModelPoint expand_point(const PolyModel& m, const ModelSystem& sys, std::span<const Rational> z) {
  RatVector full = zeros(m.variable_count());
  for (std::size_t k = 0; k < sys.kept.size(); ++k) full[sys.kept[k]] = z[k];
  ModelPoint pt;
  pt.y_plus.assign(full.begin() + static_cast<std::ptrdiff_t>(m.n),
                   full.begin() + static_cast<std::ptrdiff_t>(m.n + m.m_b));
  pt.y_minus.assign(full.begin() + static_cast<std::ptrdiff_t>(m.n + m.m_b), full.end());
  if (m.standard)
    pt.x = pt.y_diff();
  else
    pt.x.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(m.n));
  return pt;
}

/// Exact membership of a point in the model (equalities, signs, fixed zeros).
inline bool model_contains(const PolyModel& m, const ModelPoint& pt) {
  if (pt.y_plus.size() != m.m_b || pt.y_minus.size() != m.m_b) return false;
  for (std::size_t i = 0; i < m.m_b; ++i)
    if (sgn(pt.y_plus[i]) < 0 || sgn(pt.y_minus[i]) < 0) return false;
  for (auto i : m.zero_plus)
    if (sgn(pt.y_plus[i]) != 0) return false;
  for (auto i : m.zero_minus)
    if (sgn(pt.y_minus[i]) != 0) return false;
  RatVector diff = pt.y_diff();
  if (m.standard) {
    if (pt.x != diff || !is_zero(m.a * diff)) return false;
  } else {
    if (pt.x.size() != m.n || !is_zero(m.a * pt.x) || m.b * pt.x != diff) return false;
  }
  if (m.normalized) {
    Rational total = 0;
    for (std::size_t i = 0; i < m.m_b; ++i) total += pt.y_plus[i] + pt.y_minus[i];
    if (total != 1) return false;
  }
  return true;
}

/// The circuit of an S-type model point; nullopt for T-type points
/// (y+ = y-). Bg is read off y+ - y- after the same positive scaling as g.
inline std::optional<Circuit> extract_circuit(const ModelPoint& pt) {
  RatVector diff = pt.y_diff();
  if (is_zero(diff)) return std::nullopt;
  if (is_zero(pt.x)) throw Error(Errc::InconsistentPoint, "x = 0 while y+ - y- != 0");
  Circuit c;
  c.g = normalize_primitive(pt.x);
  std::size_t j = 0;
  while (sgn(pt.x[j]) == 0) ++j;
  Rational factor = Rational(c.g[j]) / pt.x[j];
  c.bg = scale(factor, diff);
  return c;
}

}  // namespace circuits
