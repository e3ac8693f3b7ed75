#pragma once

#include <cstdint>
#include <string>

#include "circuits/combinatorics.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/polyhedron.hpp"

namespace circuits {

/// Enumerates C(A,B) by intersecting every (n - rank(A) - 1)-subset of the
/// inequality rows with ker(A) and keeping the one-dimensional intersections.
inline CircuitSet naive_circuits(const Polyhedron& p) {
  CircuitSet out = CircuitSet::symmetric();
  std::size_t ra = rank(p.A());
  if (ra + 1 > p.n()) return out;  // ker(A) = {0}
  std::size_t k = p.n() - ra - 1;
  for_each_combination(p.m_b(), k, [&](const IndexSet& rows) {
    RatMatrix m = RatMatrix::vstack(p.A(), p.B().select_rows(rows));
    auto kernel = kernel_basis(m);
    if (kernel.size() == 1) {
      Circuit c = make_circuit(p, kernel.front());
      if (!out.contains(c.g)) out.insert(c);
    }
    return true;
  });
  return out;
}

/// Support-minimal vectors of ker(M) \ {0}: the circuits of the standard-form
/// polyhedron {z : Mz = q, z >= 0}.
inline CircuitSet support_minimal_kernel(const RatMatrix& m) {
  std::size_t cols = m.cols();
  Polyhedron lifted(cols, m, zeros(m.rows()), RatMatrix::identity(cols), zeros(cols));
  return naive_circuits(lifted);
}

struct StandardFormResult {
  CircuitSet circuits = CircuitSet::symmetric();
  std::size_t lifted_cardinality = 0;  // |C([A 0; B I])| before rank filtering
};

/// Enumerates C([A 0; B I]) and keeps the x-parts passing the rank test.
inline StandardFormResult standard_form_enumeration(const Polyhedron& p) {
  std::size_t n = p.n();
  std::size_t mb = p.m_b();
  RatMatrix top = RatMatrix::hstack(p.A(), RatMatrix(p.m_a(), mb));
  RatMatrix bottom = RatMatrix::hstack(p.B(), RatMatrix::identity(mb));
  CircuitSet lifted = support_minimal_kernel(RatMatrix::vstack(top, bottom));

  StandardFormResult result;
  result.lifted_cardinality = lifted.cardinality();
  for (const Circuit& c : lifted.members()) {
    RatVector x(c.g.begin(), c.g.begin() + static_cast<std::ptrdiff_t>(n));
    if (is_circuit(p, x)) result.circuits.insert(make_circuit(p, x));
  }
  return result;
}

inline CircuitSet standard_form_circuits(const Polyhedron& p) { return standard_form_enumeration(p).circuits; }

// ---------------------------------------------------------------------------
// Closed-form counts for matrices whose subdeterminants are all nonzero.

/// |C(B -B I)|, the circuits after splitting free variables and adding slacks.
inline Integer count_splitfree_standard(std::size_t n, std::size_t m_b) {
  if (n < 1 || m_b < n) throw Error(Errc::InvalidDimensions, "need n >= 1 and m_B >= n");
  Integer sum = 0;
  for (std::size_t d = 1; d <= n; ++d) {
    Integer pow2 = 1;
    pow2 <<= static_cast<mp_bitcnt_t>(d);
    sum += binomial(n, d) * binomial(m_b, d - 1) * pow2;
  }
  return 2 * Integer(static_cast<unsigned long>(n)) + 2 * sum;
}

/// |C(B I)|, the circuits after adding slacks only.
inline Integer count_slack_standard(std::size_t n, std::size_t m_b) {
  if (n < 1 || m_b < n) throw Error(Errc::InvalidDimensions, "need n >= 1 and m_B >= n");
  Integer sum = 0;
  for (std::size_t d = 1; d <= n; ++d) sum += binomial(n, d) * binomial(m_b, d - 1);
  return 2 * sum;
}

/// |C_<=([A;B])|, the circuits of the inequality-only (canonical) form.
inline Integer count_canonical(std::size_t n, std::size_t m_a, std::size_t m_b) {
  if (n < 1 || m_a + m_b + 1 < n) throw Error(Errc::InvalidDimensions, "need m_A + m_B >= n - 1");
  return 2 * binomial(m_a + m_b, n - 1);
}

struct ConversionBounds {
  Integer lower_extra = 0;  // |C(A,B)| <= |C([A 0; B I])|
  Integer upper_extra = 0;  // |C([A 0; B I])| <= |C(A,B)| + upper_extra
};

inline ConversionBounds conversion_bounds(std::size_t n, std::size_t r, std::size_t m_b) {
  if (n < 1 || r > n - 1) throw Error(Errc::InvalidDimensions, "need 0 <= r <= n - 1");
  ConversionBounds b;
  for (std::size_t d = r + 1; d + 1 <= n; ++d) b.upper_extra += binomial(n, d) * binomial(m_b, d - r - 1);
  b.upper_extra *= 2;
  return b;
}

// ---------------------------------------------------------------------------
// Brute-force verification of the counts.

inline bool all_subdeterminants_nonzero(const RatMatrix& m) {
  std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    bool ok = true;
    for_each_combination(m.rows(), k, [&](const IndexSet& rows) {
      RatMatrix sub_rows = m.select_rows(rows);
      for_each_combination(m.cols(), k, [&](const IndexSet& cols) {
        ok = sgn(determinant(sub_rows.select_cols(cols))) != 0;
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

/// Seeded random integer matrix with every square subdeterminant nonzero.
inline RatMatrix gen_generic_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                    std::int64_t magnitude = 9) {
  SeededRng rng(seed);
  for (;;) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-magnitude, magnitude);
    if (all_subdeterminants_nonzero(m)) return m;
  }
}

struct CountComparison {
  std::string name;
  Integer formula;
  Integer enumerated;
  bool matches() const { return formula == enumerated; }
};

/// Draws a generic B (m_B x n) and compares the three closed forms against
/// brute-force enumeration of C_<=(B), C(B I) and C(B -B I).
inline std::vector<CountComparison> verify_standard_form_counts(std::size_t n, std::size_t m_b,
                                                                std::uint64_t seed) {
  if (n < 1 || n > 3 || m_b < n || m_b > 5)
    throw Error(Errc::InvalidDimensions, "count verification supports 1 <= n <= 3, n <= m_B <= 5");
  RatMatrix bm = gen_generic_matrix(m_b, n, seed);
  RatMatrix id = RatMatrix::identity(m_b);
  RatMatrix neg(m_b, n);
  for (std::size_t i = 0; i < m_b; ++i)
    for (std::size_t j = 0; j < n; ++j) neg(i, j) = -bm(i, j);

  Polyhedron canonical = Polyhedron::inequalities(bm, zeros(m_b));
  std::vector<CountComparison> out;
  out.push_back({"splitfree C(B -B I)", count_splitfree_standard(n, m_b),
                 Integer(static_cast<unsigned long>(
                     support_minimal_kernel(RatMatrix::hstack(RatMatrix::hstack(bm, neg), id)).cardinality()))});
  out.push_back({"slack C(B I)", count_slack_standard(n, m_b),
                 Integer(static_cast<unsigned long>(support_minimal_kernel(RatMatrix::hstack(bm, id)).cardinality()))});
  out.push_back({"inequality C_<=(B)", count_canonical(n, 0, m_b),
                 Integer(static_cast<unsigned long>(naive_circuits(canonical).cardinality()))});
  return out;
}

}  // namespace circuits
