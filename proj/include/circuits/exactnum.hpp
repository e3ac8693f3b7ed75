#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuits/error.hpp"

namespace circuits {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;
using IndexSet = std::vector<std::size_t>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(Errc::DimensionMismatch, "row length differs from column count");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  RatVector row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  RatVector operator*(std::span<const Rational> v) const {
    if (v.size() != cols_) throw Error(Errc::DimensionMismatch, "matrix-vector product");
    RatVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const Rational& a = (*this)(i, j);
        if (sgn(a) != 0 && sgn(v[j]) != 0) acc += a * v[j];
      }
      out[i] = std::move(acc);
    }
    return out;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix select_rows(std::span<const std::size_t> indices) const {
    RatMatrix m(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(indices[k], j);
    return m;
  }

  RatMatrix select_cols(std::span<const std::size_t> indices) const {
    RatMatrix m(rows_, indices.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < indices.size(); ++k) m(i, k) = (*this)(i, indices[k]);
    return m;
  }

  /// Stacks `top` over `bottom`. Either may have zero rows; a zero-row
  /// operand with zero columns adopts the other operand's width.
  static RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom) {
    std::size_t cols = top.rows_ > 0 ? top.cols_ : bottom.cols_;
    if (top.rows_ > 0 && bottom.rows_ > 0 && top.cols_ != bottom.cols_)
      throw Error(Errc::DimensionMismatch, "vstack column counts differ");
    RatMatrix m(top.rows_ + bottom.rows_, cols);
    std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
    return m;
  }

  static RatMatrix hstack(const RatMatrix& left, const RatMatrix& right) {
    if (left.rows_ != right.rows_) throw Error(Errc::DimensionMismatch, "hstack row counts differ");
    RatMatrix m(left.rows_, left.cols_ + right.cols_);
    for (std::size_t i = 0; i < left.rows_; ++i) {
      for (std::size_t j = 0; j < left.cols_; ++j) m(i, j) = left(i, j);
      for (std::size_t j = 0; j < right.cols_; ++j) m(i, left.cols_ + j) = right(i, j);
    }
    return m;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot product");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline RatVector add(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector sum");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVector sub(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector difference");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVector scale(const Rational& s, std::span<const Rational> v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

/// a + s*b
inline RatVector axpy(std::span<const Rational> a, const Rational& s, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "axpy");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

inline Rational norm1(std::span<const Rational> v) {
  Rational acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

inline IndexSet support(std::span<const Rational> v) {
  IndexSet s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.push_back(i);
  return s;
}

inline bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

inline RatVector to_rational(std::span<const Integer> v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

inline RatVector zeros(std::size_t n) { return RatVector(n, Rational(0)); }

/// Componentwise products are all nonnegative (same closed orthant).
inline bool sign_compatible(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "sign compatibility");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) * sgn(b[i]) < 0) return false;
  return true;
}

/// Sign compatible and supp(a) ⊆ supp(b).
inline bool conformal(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "conformality");
  for (std::size_t i = 0; i < a.size(); ++i) {
    int sa = sgn(a[i]);
    if (sa != 0 && sa != sgn(b[i])) return false;
  }
  return true;
}

/// Smallest positive multiple of v with coprime integer entries.
inline IntVector normalize_primitive(std::span<const Rational> v) {
  if (is_zero(v)) throw Error(Errc::ZeroVector, "cannot normalize the zero vector");
  Integer den_lcm = 1;
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (den_lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& x : out) x /= g;
  return out;
}

// ---------------------------------------------------------------------------
// Elimination

struct Echelon {
  RatMatrix reduced;     // reduced row echelon form; zero rows at the bottom
  IndexSet pivot_cols;   // pivot column of row r is pivot_cols[r]
};

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row; exact arithmetic needs nothing smarter.
inline Echelon reduced_row_echelon(RatMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    if (m(r, c) != 1) {
      Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const RatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Forward elimination only; cheaper than the full reduction.
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// cols - rank(M) independent vectors spanning ker(M), one per non-pivot
/// column (that column's entry is 1, other non-pivot entries 0).
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v = zeros(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some z with Mz = q, non-pivot variables set to zero; nullopt when the
/// system is inconsistent.
inline std::optional<RatVector> solve_linear(const RatMatrix& m, std::span<const Rational> q) {
  if (q.size() != m.rows()) throw Error(Errc::DimensionMismatch, "right-hand side length");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = q[i];
  }
  Echelon e = reduced_row_echelon(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
  RatVector z = zeros(m.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) z[e.pivot_cols[r]] = e.reduced(r, m.cols());
  return z;
}

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
inline Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  RatMatrix a = m;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Text tokens: optional '-', digits, optionally '/' and a positive digit string.

inline std::optional<Rational> parse_rational(std::string_view token) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  std::string_view body = token;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!digits(num) || !digits(den)) return std::nullopt;
  Integer d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

inline std::string format_rational(Rational q) {
  q.canonicalize();
  return q.get_str(10);
}

}  // namespace circuits
