#pragma once

#include <optional>
#include <vector>

#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"

namespace circuits {

/// min objective.z  s.t.  equalities z = rhs,  z_j >= 0 where nonneg[j].
struct LinearProgram {
  RatMatrix equalities;
  RatVector rhs;
  std::vector<bool> nonneg;
  RatVector objective;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  RatVector point;   // Optimal only
  Rational value;    // Optimal only
  IndexSet basis;    // Optimal only: basic variables, sorted
  RatVector ray;     // Unbounded only: feasible direction with objective.ray < 0
};

namespace detail {

/// Dense simplex tableau over nonnegative columns with Bland's rule.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, cols + 1), cost_(cols + 1), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return a_(i, j); }
  Rational& rhs(std::size_t i) { return a_(i, cols_); }
  const Rational& rhs(std::size_t i) const { return a_(i, cols_); }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Installs a cost vector and prices out the current basis.
  void set_cost(const RatVector& c) {
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
    cost_[cols_] = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(a_(i, j)) != 0) cost_[j] -= cb * a_(i, j);
    }
  }

  Rational objective_value() const { return -cost_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / a_(r, c);
    for (std::size_t j = 0; j <= cols_; ++j)
      if (sgn(a_(r, j)) != 0) a_(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(a_(i, c)) == 0) continue;
      Rational f = a_(i, c);
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(a_(r, j)) != 0) a_(i, j) -= f * a_(r, j);
    }
    if (sgn(cost_[c]) != 0) {
      Rational f = cost_[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(a_(r, j)) != 0) cost_[j] -= f * a_(r, j);
    }
    basis_[r] = c;
  }

  /// Runs Bland's rule over columns where allowed[j]. Returns the entering
  /// column of an unbounded direction, or nullopt at optimality.
  std::optional<std::size_t> optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      if (!enter) return std::nullopt;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(a_(i, *enter)) <= 0) continue;
        Rational ratio = a_(i, cols_) / a_(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return enter;
      pivot(*leave, *enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  RatMatrix a_;
  RatVector cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact two-phase simplex returning a basic optimal solution.
///
/// Free variables are eliminated first by pivoting them out of the equality
/// rows (they stay basic for the whole solve). A free column that cannot be
/// pivoted spans a line in the feasible region: a nonzero reduced cost on it
/// makes a feasible problem unbounded, otherwise it is fixed at zero.
inline LPResult solve_vertex(const LinearProgram& lp) {
  const std::size_t m = lp.equalities.rows();
  const std::size_t nvar = lp.equalities.cols();
  if (lp.rhs.size() != m || lp.nonneg.size() != nvar || lp.objective.size() != nvar)
    throw Error(Errc::DimensionMismatch, "linear program dimensions");

  // Column order: free variables first.
  IndexSet order;
  for (std::size_t j = 0; j < nvar; ++j)
    if (!lp.nonneg[j]) order.push_back(j);
  const std::size_t nfree = order.size();
  for (std::size_t j = 0; j < nvar; ++j)
    if (lp.nonneg[j]) order.push_back(j);

  RatMatrix aug(m, nvar + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < nvar; ++k) aug(i, k) = lp.equalities(i, order[k]);
    aug(i, nvar) = lp.rhs[i];
  }
  Echelon ech = reduced_row_echelon(std::move(aug));
  const RatMatrix& red = ech.reduced;
  LPResult result;
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == nvar) return result;  // inconsistent

  std::size_t free_rows = 0;
  while (free_rows < ech.pivot_cols.size() && ech.pivot_cols[free_rows] < nfree) ++free_rows;
  const std::size_t w_rows = ech.pivot_cols.size() - free_rows;
  const std::size_t nw = nvar - nfree;

  // Reduced objective over permuted columns after substituting pivoted free
  // variables: cbar = c - sum_r c_{p_r} * row_r.
  RatVector cbar(nvar);
  for (std::size_t k = 0; k < nvar; ++k) cbar[k] = lp.objective[order[k]];
  for (std::size_t r = 0; r < free_rows; ++r) {
    Rational cp = cbar[ech.pivot_cols[r]];
    if (sgn(cp) == 0) continue;
    for (std::size_t k = 0; k < nvar; ++k) cbar[k] -= cp * red(r, k);
  }

  // Phase 1 over the nonnegative block. Rows with nonnegative rhs start with
  // their (unit) pivot column basic; the others get an artificial.
  std::vector<std::size_t> needs_art;
  for (std::size_t r = 0; r < w_rows; ++r)
    if (sgn(red(free_rows + r, nvar)) < 0) needs_art.push_back(r);
  const std::size_t ncols = nw + needs_art.size();
  detail::Tableau tab(w_rows, ncols);
  {
    std::size_t next_art = nw;
    std::size_t art_k = 0;
    for (std::size_t r = 0; r < w_rows; ++r) {
      bool negate = art_k < needs_art.size() && needs_art[art_k] == r;
      for (std::size_t k = 0; k < nw; ++k) {
        const Rational& v = red(free_rows + r, nfree + k);
        tab.at(r, k) = negate ? Rational(-v) : v;
      }
      tab.rhs(r) = negate ? Rational(-red(free_rows + r, nvar)) : red(free_rows + r, nvar);
      if (negate) {
        tab.at(r, next_art) = 1;
        tab.basis()[r] = next_art++;
        ++art_k;
      } else {
        tab.basis()[r] = ech.pivot_cols[free_rows + r] - nfree;
      }
    }
  }
  std::vector<bool> allowed(ncols, true);
  if (!needs_art.empty()) {
    RatVector phase1(ncols, Rational(0));
    for (std::size_t k = nw; k < ncols; ++k) phase1[k] = 1;
    tab.set_cost(phase1);
    tab.optimize(allowed);
    if (sgn(tab.objective_value()) > 0) return result;  // infeasible
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < w_rows; ++r) {
      if (tab.basis()[r] < nw) continue;
      for (std::size_t k = 0; k < nw; ++k)
        if (sgn(tab.at(r, k)) != 0) {
          tab.pivot(r, k);
          break;
        }
    }
    for (std::size_t k = nw; k < ncols; ++k) allowed[k] = false;
  }

  auto make_point = [&](const RatVector& wvals, const RatVector& free_nonpivot) {
    RatVector zperm(nvar, Rational(0));
    for (std::size_t k = 0; k < nw; ++k) zperm[nfree + k] = wvals[k];
    for (std::size_t k = 0; k < nfree; ++k) zperm[k] = free_nonpivot[k];
    for (std::size_t r = 0; r < free_rows; ++r) {
      std::size_t p = ech.pivot_cols[r];
      Rational v = 0;
      for (std::size_t k = 0; k < nvar; ++k)
        if (k != p && sgn(red(r, k)) != 0) v += red(r, k) * zperm[k];
      zperm[p] = red(r, nvar) - v;
    }
    RatVector z(nvar);
    for (std::size_t k = 0; k < nvar; ++k) z[order[k]] = zperm[k];
    return z;
  };
  // The homogeneous version of make_point: a direction of the equality system.
  auto make_direction = [&](const RatVector& wdir, const RatVector& free_dir) {
    RatVector zperm(nvar, Rational(0));
    for (std::size_t k = 0; k < nw; ++k) zperm[nfree + k] = wdir[k];
    for (std::size_t k = 0; k < nfree; ++k) zperm[k] = free_dir[k];
    for (std::size_t r = 0; r < free_rows; ++r) {
      std::size_t p = ech.pivot_cols[r];
      Rational v = 0;
      for (std::size_t k = 0; k < nvar; ++k)
        if (k != p && sgn(red(r, k)) != 0) v += red(r, k) * zperm[k];
      zperm[p] = -v;
    }
    RatVector z(nvar);
    for (std::size_t k = 0; k < nvar; ++k) z[order[k]] = zperm[k];
    return z;
  };

  // Lineality: free columns without a pivot.
  std::vector<bool> free_pivoted(nfree, false);
  for (std::size_t r = 0; r < free_rows; ++r) free_pivoted[ech.pivot_cols[r]] = true;
  for (std::size_t k = 0; k < nfree; ++k) {
    if (free_pivoted[k] || sgn(cbar[k]) == 0) continue;
    RatVector free_dir(nfree, Rational(0));
    free_dir[k] = sgn(cbar[k]) < 0 ? 1 : -1;
    result.status = LPStatus::Unbounded;
    result.ray = make_direction(RatVector(nw, Rational(0)), free_dir);
    return result;
  }

  RatVector phase2(ncols, Rational(0));
  for (std::size_t k = 0; k < nw; ++k) phase2[k] = cbar[nfree + k];
  tab.set_cost(phase2);
  if (auto enter = tab.optimize(allowed)) {
    RatVector wdir(nw, Rational(0));
    wdir[*enter] = 1;
    for (std::size_t r = 0; r < w_rows; ++r)
      if (tab.basis()[r] < nw) wdir[tab.basis()[r]] = -tab.at(r, *enter);
    result.status = LPStatus::Unbounded;
    result.ray = make_direction(wdir, RatVector(nfree, Rational(0)));
    return result;
  }

  RatVector wvals(nw, Rational(0));
  for (std::size_t r = 0; r < w_rows; ++r)
    if (tab.basis()[r] < nw) wvals[tab.basis()[r]] = tab.rhs(r);
  result.status = LPStatus::Optimal;
  result.point = make_point(wvals, RatVector(nfree, Rational(0)));
  result.value = dot(lp.objective, result.point);
  for (std::size_t r = 0; r < free_rows; ++r) result.basis.push_back(order[ech.pivot_cols[r]]);
  for (std::size_t r = 0; r < w_rows; ++r)
    if (tab.basis()[r] < nw) result.basis.push_back(order[nfree + tab.basis()[r]]);
  std::sort(result.basis.begin(), result.basis.end());
  return result;
}

}  // namespace circuits
