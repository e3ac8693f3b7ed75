#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "circuits/combinatorics.hpp"
#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/polymodel.hpp"
#include "circuits/polyhedron.hpp"

namespace circuits {

/// Rank of the equality rows together with the nonnegativity constraints
/// that are tight at z. Equals the variable count exactly at vertices.
inline std::size_t active_rank(const RatMatrix& equalities, const std::vector<bool>& nonneg,
                               std::span<const Rational> z) {
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < equalities.rows(); ++i) rows.push_back(equalities.row_vector(i));
  for (std::size_t j = 0; j < z.size(); ++j)
    if (nonneg[j] && sgn(z[j]) == 0) {
      RatVector e = zeros(z.size());
      e[j] = 1;
      rows.push_back(std::move(e));
    }
  return rank(RatMatrix::from_rows(rows, z.size()));
}

/// All basic feasible solutions of {z : Ez = q, z_j >= 0 for nonneg[j]},
/// sorted and deduplicated. Free columns are pivoted out first; every
/// selection of the remaining basis columns among the nonnegative variables
/// is tried. The feasible region must not contain a line.
inline std::vector<RatVector> enumerate_basic_solutions(const RatMatrix& eq, std::span<const Rational> rhs,
                                                        const std::vector<bool>& nonneg,
                                                        unsigned threads = 1) {
  const std::size_t nvar = eq.cols();
  IndexSet order;
  for (std::size_t j = 0; j < nvar; ++j)
    if (!nonneg[j]) order.push_back(j);
  const std::size_t nfree = order.size();
  for (std::size_t j = 0; j < nvar; ++j)
    if (nonneg[j]) order.push_back(j);

  RatMatrix aug(eq.rows(), nvar + 1);
  for (std::size_t i = 0; i < eq.rows(); ++i) {
    for (std::size_t k = 0; k < nvar; ++k) aug(i, k) = eq(i, order[k]);
    aug(i, nvar) = rhs[i];
  }
  Echelon ech = reduced_row_echelon(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == nvar) return {};
  std::size_t free_rows = 0;
  while (free_rows < ech.pivot_cols.size() && ech.pivot_cols[free_rows] < nfree) ++free_rows;
  if (free_rows != nfree) throw Error(Errc::NotAPolytope, "feasible region contains a line");
  const std::size_t w_rows = ech.pivot_cols.size() - free_rows;
  const std::size_t nw = nvar - nfree;
  const RatMatrix& red = ech.reduced;

  RatMatrix w_eq(w_rows, nw);
  RatVector w_rhs(w_rows);
  for (std::size_t r = 0; r < w_rows; ++r) {
    for (std::size_t k = 0; k < nw; ++k) w_eq(r, k) = red(free_rows + r, nfree + k);
    w_rhs[r] = red(free_rows + r, nvar);
  }

  auto lift = [&](const RatVector& w) {
    RatVector zperm = zeros(nvar);
    for (std::size_t k = 0; k < nw; ++k) zperm[nfree + k] = w[k];
    for (std::size_t r = 0; r < free_rows; ++r) {
      Rational v = red(r, nvar);
      for (std::size_t k = nfree; k < nvar; ++k)
        if (sgn(red(r, k)) != 0) v -= red(r, k) * zperm[k];
      zperm[ech.pivot_cols[r]] = v;
    }
    RatVector z(nvar);
    for (std::size_t k = 0; k < nvar; ++k) z[order[k]] = zperm[k];
    return z;
  };

  auto try_basis = [&](const IndexSet& cols, std::set<RatVector>& found) {
    Echelon sq = reduced_row_echelon(RatMatrix::hstack(w_eq.select_cols(cols), [&] {
      RatMatrix q(w_rows, 1);
      for (std::size_t r = 0; r < w_rows; ++r) q(r, 0) = w_rhs[r];
      return q;
    }()));
    if (sq.pivot_cols.size() != w_rows || (w_rows > 0 && sq.pivot_cols.back() != w_rows - 1)) return;
    RatVector w = zeros(nw);
    for (std::size_t r = 0; r < w_rows; ++r) {
      const Rational& v = sq.reduced(r, w_rows);
      if (sgn(v) < 0) return;
      w[cols[r]] = v;
    }
    found.insert(lift(w));
  };

  std::vector<IndexSet> candidates;
  for_each_combination(nw, w_rows, [&](const IndexSet& cols) {
    candidates.push_back(cols);
    return true;
  });

  std::set<RatVector> found;
  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(candidates.size())));
  if (workers <= 1) {
    for (const auto& cols : candidates) try_basis(cols, found);
  } else {
    std::vector<std::set<RatVector>> partial(workers);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < candidates.size(); k += workers) try_basis(candidates[k], partial[t]);
      });
    for (auto& th : pool) th.join();
    for (auto& s : partial) found.merge(s);
  }

  std::vector<RatVector> out(found.begin(), found.end());
  for (const auto& z : out)
    if (active_rank(eq, nonneg, z) != nvar) throw std::logic_error("basic solution is not a vertex");
  return out;
}

/// Vertices of a normalized model, sorted.
inline std::vector<ModelPoint> enumerate_vertices(const PolyModel& m, unsigned threads = 1) {
  if (!m.normalized) throw Error(Errc::NotAPolytope, "model lacks the normalization row");
  ModelSystem sys = model_system(m);
  std::vector<ModelPoint> out;
  for (const auto& z : enumerate_basic_solutions(sys.equalities, sys.rhs, sys.nonneg, threads))
    out.push_back(expand_point(m, sys, z));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {
inline CircuitSet circuits_of_vertices(const PolyModel& m, CircuitSet out, unsigned threads) {
  for (const auto& v : enumerate_vertices(m, threads))
    if (auto c = extract_circuit(v)) out.insert(*c);
  return out;
}
}  // namespace detail

/// C(A,B) as the S-type vertices of the normalized model.
inline CircuitSet model_circuits(const Polyhedron& p, unsigned threads = 1) {
  return detail::circuits_of_vertices(build_polytope(p), CircuitSet::symmetric(), threads);
}

/// Circuits strictly feasible at x0 (not a symmetric set).
inline CircuitSet feasible_circuits(const Polyhedron& p, std::span<const Rational> x0, unsigned threads = 1) {
  PolyModel m = restrict_strictly_feasible(build_polytope(p), p, x0);
  return detail::circuits_of_vertices(m, CircuitSet::directed(), threads);
}

/// Circuits g with Bg sign-compatible with Bu and supp(Bg) ⊆ supp(Bu).
inline CircuitSet sign_compatible_circuits(const Polyhedron& p, std::span<const Rational> u, unsigned threads = 1) {
  PolyModel m = restrict_sign_compatible(build_polytope(p), p, u);
  return detail::circuits_of_vertices(m, CircuitSet::directed(), threads);
}

}  // namespace circuits
