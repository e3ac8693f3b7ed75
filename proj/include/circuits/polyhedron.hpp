#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"

namespace circuits {

/// P = {x in R^n : Ax = b, Bx <= d}. An empty A (zero rows) means ker(A) = R^n.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(std::size_t n, RatMatrix a, RatVector b, RatMatrix bmat, RatVector d)
      : n_(n), a_(std::move(a)), b_(std::move(b)), bmat_(std::move(bmat)), d_(std::move(d)) {
    if (a_.rows() == 0) a_ = RatMatrix(0, n_);
    if (a_.cols() != n_ || bmat_.cols() != n_)
      throw Error(Errc::DimensionMismatch, "constraint matrices must have n columns");
    if (b_.size() != a_.rows()) throw Error(Errc::DimensionMismatch, "length of b differs from rows of A");
    if (d_.size() != bmat_.rows()) throw Error(Errc::DimensionMismatch, "length of d differs from rows of B");
    if (bmat_.rows() == 0) throw Error(Errc::DimensionMismatch, "at least one inequality row is required");
  }

  /// Inequality-only polyhedron {x : Bx <= d}.
  static Polyhedron inequalities(RatMatrix bmat, RatVector d) {
    std::size_t n = bmat.cols();
    return Polyhedron(n, RatMatrix(0, n), {}, std::move(bmat), std::move(d));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m_a() const noexcept { return a_.rows(); }
  std::size_t m_b() const noexcept { return bmat_.rows(); }
  const RatMatrix& A() const noexcept { return a_; }
  const RatVector& b() const noexcept { return b_; }
  const RatMatrix& B() const noexcept { return bmat_; }
  const RatVector& d() const noexcept { return d_; }

  /// D = [A; B]
  RatMatrix stacked() const { return RatMatrix::vstack(a_, bmat_); }

  friend bool operator==(const Polyhedron& x, const Polyhedron& y) {
    return x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_ && x.bmat_ == y.bmat_ && x.d_ == y.d_;
  }

 private:
  std::size_t n_ = 0;
  RatMatrix a_;
  RatVector b_;
  RatMatrix bmat_;
  RatVector d_;
};

/// Throws NotPointed when rank([A;B]) < n, InvalidDimensions when B has a
/// zero row.
inline void validate(const Polyhedron& p) {
  for (std::size_t i = 0; i < p.m_b(); ++i)
    if (is_zero(p.B().row(i)))
      throw Error(Errc::InvalidDimensions, "inequality row " + std::to_string(i + 1) + " is zero");
  if (rank(p.stacked()) != p.n()) throw Error(Errc::NotPointed, "rank([A;B]) < n");
}

inline bool is_pointed(const Polyhedron& p) { return rank(p.stacked()) == p.n(); }

inline bool contains(const Polyhedron& p, std::span<const Rational> x) {
  if (x.size() != p.n()) throw Error(Errc::DimensionMismatch, "point length differs from n");
  if (p.A() * x != p.b()) return false;
  RatVector bx = p.B() * x;
  for (std::size_t i = 0; i < bx.size(); ++i)
    if (bx[i] > p.d()[i]) return false;
  return true;
}

inline IndexSet active_rows(const Polyhedron& p, std::span<const Rational> x) {
  if (!contains(p, x)) throw Error(Errc::PointNotInPolyhedron, "active rows requested at an infeasible point");
  RatVector bx = p.B() * x;
  IndexSet active;
  for (std::size_t i = 0; i < bx.size(); ++i)
    if (bx[i] == p.d()[i]) active.push_back(i);
  return active;
}

/// rank([A; B']) where B' collects the rows of B annihilating g.
inline std::size_t annihilator_rank(const Polyhedron& p, std::span<const Rational> g) {
  RatVector bg = p.B() * g;
  IndexSet zero_rows;
  for (std::size_t i = 0; i < bg.size(); ++i)
    if (sgn(bg[i]) == 0) zero_rows.push_back(i);
  return rank(RatMatrix::vstack(p.A(), p.B().select_rows(zero_rows)));
}

/// g is a circuit direction iff g != 0, Ag = 0 and rank([A; B']) = n - 1.
inline bool is_circuit(const Polyhedron& p, std::span<const Rational> g) {
  if (g.size() != p.n()) throw Error(Errc::DimensionMismatch, "direction length differs from n");
  if (is_zero(g) || !is_zero(p.A() * g)) return false;
  return p.n() >= 1 && annihilator_rank(p, g) == p.n() - 1;
}

// ---------------------------------------------------------------------------

/// A circuit direction scaled to coprime integers, with Bg cached.
struct Circuit {
  IntVector g;
  RatVector bg;

  RatVector direction() const { return to_rational(g); }

  /// +1 when the first nonzero entry is positive.
  int sign() const {
    for (const auto& x : g)
      if (sgn(x) != 0) return sgn(x);
    return 0;
  }

  IntVector representative() const {
    if (sign() >= 0) return g;
    IntVector r = g;
    for (auto& x : r) x = -x;
    return r;
  }

  Circuit negated() const {
    Circuit c{g, bg};
    for (auto& x : c.g) x = -x;
    for (auto& x : c.bg) x = -x;
    return c;
  }

  friend bool operator==(const Circuit& a, const Circuit& b) { return a.g == b.g; }
};

inline Circuit make_circuit(const Polyhedron& p, std::span<const Rational> direction) {
  Circuit c;
  c.g = normalize_primitive(direction);
  c.bg = p.B() * to_rational(c.g);
  return c;
}

/// c.g / ||Bg||_1 steepness ratio for a direction.
inline Rational steepness(const Polyhedron& p, std::span<const Rational> c, std::span<const Rational> u) {
  return dot(c, u) / norm1(p.B() * u);
}

/// Set of circuits keyed by exact integer vector, sorted lexicographically.
///
/// A symmetric set stores g and -g together; its representatives are the
/// members whose first nonzero entry is positive and its cardinality counts
/// both members of every pair. A directed set (subsets such as the strictly
/// feasible circuits at a point) stores exactly what was inserted.
class CircuitSet {
 public:
  static CircuitSet symmetric() { return CircuitSet(true); }
  static CircuitSet directed() { return CircuitSet(false); }

  bool is_symmetric() const noexcept { return symmetric_; }

  void insert(const Circuit& c) {
    members_.emplace(c.g, c);
    if (symmetric_) {
      Circuit neg = c.negated();
      members_.emplace(neg.g, std::move(neg));
    }
  }

  bool contains(const IntVector& g) const { return members_.count(g) != 0; }

  std::size_t cardinality() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  std::vector<Circuit> representatives() const {
    std::vector<Circuit> out;
    for (const auto& [g, c] : members_)
      if (!symmetric_ || c.sign() > 0) out.push_back(c);
    return out;
  }

  std::vector<Circuit> members() const {
    std::vector<Circuit> out;
    out.reserve(members_.size());
    for (const auto& [g, c] : members_) out.push_back(c);
    return out;
  }

  std::vector<IntVector> keys() const {
    std::vector<IntVector> out;
    for (const auto& [g, c] : members_) out.push_back(g);
    return out;
  }

  friend bool operator==(const CircuitSet& a, const CircuitSet& b) { return a.keys() == b.keys(); }

 private:
  explicit CircuitSet(bool symmetric) : symmetric_(symmetric) {}

  bool symmetric_;
  std::map<IntVector, Circuit> members_;
};

// ---------------------------------------------------------------------------
// Instance generators

/// Portable seeded draws: mt19937_64 output is fixed by the standard, the
/// library distributions are not.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct RandomInstance {
  Polyhedron poly;
  RatVector x0;  // feasible, strictly inside every inequality
};

inline RandomInstance gen_random_instance(std::size_t n, std::size_t m_a, std::size_t m_b, std::uint64_t seed,
                                          std::int64_t magnitude) {
  if (n == 0 || m_b == 0 || m_a + m_b < n || magnitude < 1)
    throw Error(Errc::InvalidDimensions, "need n >= 1, m_B >= 1, m_A + m_B >= n, magnitude >= 1");
  SeededRng rng(seed);
  auto draw_matrix = [&](std::size_t rows) {
    RatMatrix m(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-magnitude, magnitude);
    return m;
  };
  for (;;) {
    RatMatrix a = draw_matrix(m_a);
    RatMatrix bm = draw_matrix(m_b);
    bool zero_row = false;
    for (std::size_t i = 0; i < m_b; ++i) zero_row = zero_row || is_zero(bm.row(i));
    if (zero_row || rank(RatMatrix::vstack(a, bm)) != n) continue;
    RatVector x0(n);
    for (auto& x : x0) x = rng.uniform(-magnitude, magnitude);
    RatVector b = a * x0;
    RatVector d = bm * x0;
    for (auto& di : d) di += rng.uniform(1, magnitude);
    return {Polyhedron(n, std::move(a), std::move(b), std::move(bm), std::move(d)), std::move(x0)};
  }
}

inline Polyhedron gen_random(std::size_t n, std::size_t m_a, std::size_t m_b, std::uint64_t seed,
                             std::int64_t magnitude) {
  return gen_random_instance(n, m_a, m_b, seed, magnitude).poly;
}

/// {(u, v) in R^{p+q} : u_i + v_j <= c_ij, u_1 = 0}; rows ordered i-major.
inline Polyhedron gen_dual_transportation(std::size_t p, std::size_t q, const RatMatrix& costs) {
  if (p == 0 || q == 0) throw Error(Errc::InvalidDimensions, "p and q must be positive");
  if (costs.rows() != p || costs.cols() != q) throw Error(Errc::DimensionMismatch, "costs must be p x q");
  std::size_t n = p + q;
  RatMatrix a(1, n);
  a(0, 0) = 1;
  RatMatrix bm(p * q, n);
  RatVector d(p * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      bm(i * q + j, i) = 1;
      bm(i * q + j, p + j) = 1;
      d[i * q + j] = costs(i, j);
    }
  return Polyhedron(n, std::move(a), RatVector{0}, std::move(bm), std::move(d));
}

}  // namespace circuits
