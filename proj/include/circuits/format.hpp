#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "circuits/augment.hpp"
#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/polyhedron.hpp"
#include "circuits/walks.hpp"

namespace circuits {

namespace detail {

struct TokenLine {
  std::size_t number;  // 1-based line in the source
  std::vector<std::string> tokens;
};

/// Splits a text into non-empty lines of whitespace-separated tokens,
/// dropping '#' comments.
inline std::vector<TokenLine> token_lines(std::istream& in) {
  std::vector<TokenLine> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    TokenLine tl{number, {}};
    for (std::string tok; ss >> tok;) tl.tokens.push_back(std::move(tok));
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
  }
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::Parse, "line " + std::to_string(line) + ": " + what);
}

inline RatVector parse_rational_row(const TokenLine& tl, std::size_t expected) {
  if (tl.tokens.size() != expected)
    parse_fail(tl.number, "expected " + std::to_string(expected) + " tokens, found " + std::to_string(tl.tokens.size()));
  RatVector row;
  row.reserve(expected);
  for (const auto& tok : tl.tokens) {
    auto r = parse_rational(tok);
    if (!r) parse_fail(tl.number, "invalid rational token '" + tok + "'");
    row.push_back(std::move(*r));
  }
  return row;
}

inline std::size_t parse_size(const TokenLine& tl, const std::string& tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) parse_fail(tl.number, "invalid size '" + tok + "'");
  return v;
}

}  // namespace detail

inline std::string format_vector(std::span<const Rational> v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_rational(v[i]);
  }
  return s;
}

inline std::string format_vector(std::span<const Integer> v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

inline Polyhedron parse_poly(std::istream& in) {
  auto lines = detail::token_lines(in);
  if (lines.empty()) detail::parse_fail(1, "empty input, expected 'poly <n> <mA> <mB>'");
  const auto& head = lines[0];
  if (head.tokens.size() != 4 || head.tokens[0] != "poly")
    detail::parse_fail(head.number, "expected 'poly <n> <mA> <mB>'");
  std::size_t n = detail::parse_size(head, head.tokens[1]);
  std::size_t ma = detail::parse_size(head, head.tokens[2]);
  std::size_t mb = detail::parse_size(head, head.tokens[3]);
  if (n == 0) detail::parse_fail(head.number, "n must be positive");
  if (mb == 0) detail::parse_fail(head.number, "mB must be positive");

  std::size_t expected = 1 + ma + (ma > 0 ? 1 : 0) + mb + 1;
  std::size_t k = 1;
  auto next = [&](const char* what) -> const detail::TokenLine& {
    if (k >= lines.size()) {
      std::size_t last = lines.back().number;
      detail::parse_fail(last + 1, std::string("unexpected end of input, expected ") + what);
    }
    return lines[k++];
  };
  std::vector<RatVector> a_rows, b_rows;
  for (std::size_t i = 0; i < ma; ++i) a_rows.push_back(detail::parse_rational_row(next("row of A"), n));
  RatVector b;
  if (ma > 0) b = detail::parse_rational_row(next("vector b"), ma);
  for (std::size_t i = 0; i < mb; ++i) b_rows.push_back(detail::parse_rational_row(next("row of B"), n));
  RatVector d = detail::parse_rational_row(next("vector d"), mb);
  if (lines.size() > expected) detail::parse_fail(lines[expected].number, "trailing content");

  for (std::size_t i = 0; i < mb; ++i)
    if (is_zero(b_rows[i])) detail::parse_fail(lines[1 + ma + (ma > 0 ? 1 : 0) + i].number, "zero row in B");
  return Polyhedron(n, RatMatrix::from_rows(a_rows, n), std::move(b), RatMatrix::from_rows(b_rows, n), std::move(d));
}

inline Polyhedron parse_poly(const std::string& text) {
  std::istringstream in(text);
  return parse_poly(in);
}

inline void write_poly(std::ostream& out, const Polyhedron& p) {
  out << "poly " << p.n() << ' ' << p.m_a() << ' ' << p.m_b() << '\n';
  for (std::size_t i = 0; i < p.m_a(); ++i) out << format_vector(p.A().row(i)) << '\n';
  if (p.m_a() > 0) out << format_vector(p.b()) << '\n';
  for (std::size_t i = 0; i < p.m_b(); ++i) out << format_vector(p.B().row(i)) << '\n';
  out << format_vector(p.d()) << '\n';
}

inline std::string serialize_poly(const Polyhedron& p) {
  std::ostringstream out;
  write_poly(out, p);
  return out.str();
}

/// A .vec file: exactly one non-comment line of rational tokens.
inline RatVector parse_vec(std::istream& in, std::optional<std::size_t> expected = std::nullopt) {
  auto lines = detail::token_lines(in);
  if (lines.empty()) detail::parse_fail(1, "empty vector file");
  if (lines.size() > 1) detail::parse_fail(lines[1].number, "trailing content");
  return detail::parse_rational_row(lines[0], expected.value_or(lines[0].tokens.size()));
}

inline RatVector parse_vec(const std::string& text, std::optional<std::size_t> expected = std::nullopt) {
  std::istringstream in(text);
  return parse_vec(in, expected);
}

inline void write_vec(std::ostream& out, std::span<const Rational> v) { out << format_vector(v) << '\n'; }

/// .circ: representatives sorted lexicographically. The header count is the
/// number of listed lines; cardinality counts every member of the set.
inline void write_circ(std::ostream& out, const CircuitSet& set, std::size_t n) {
  auto reps = set.representatives();
  out << "circuits " << reps.size() << ' ' << n << " cardinality " << set.cardinality() << '\n';
  for (const auto& c : reps) out << format_vector(std::span<const Integer>(c.g)) << '\n';
}

inline std::string serialize_circ(const CircuitSet& set, std::size_t n) {
  std::ostringstream out;
  write_circ(out, set, n);
  return out.str();
}

inline void write_trace(std::ostream& out, const AugmentationTrace& trace) {
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    out << "step " << k << ": x=" << format_vector(s.x, ',') << " g=" << format_vector(std::span<const Integer>(s.g.g), ',')
        << " alpha=" << format_rational(s.alpha) << " steepness=" << format_rational(s.steepness) << '\n';
  }
  if (trace.terminal == TraceTerminal::Optimal)
    out << "terminal: optimal value=" << format_rational(trace.value) << '\n';
  else
    out << "terminal: unbounded g=" << format_vector(std::span<const Integer>(trace.unbounded->g), ',') << '\n';
}

inline void write_walk(std::ostream& out, const CircuitWalk& walk) {
  std::size_t n = walk.points.empty() ? 0 : walk.points.front().size();
  out << "walk " << walk.steps.size() << ' ' << n << '\n';
  for (const auto& s : walk.steps)
    out << "g=" << format_vector(std::span<const Integer>(s.g.g), ',') << " lambda=" << format_rational(s.lambda) << '\n';
  out << "points:\n";
  for (const auto& y : walk.points) out << format_vector(y) << '\n';
}

inline void write_trace_report(std::ostream& out, const TraceReport& r) {
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "report: feasible_exact=" << yn(r.feasible_exact) << " steepness_monotone=" << yn(r.steepness_monotone)
      << " no_repeat=" << yn(r.no_repeat) << " orthant_rule=" << yn(r.orthant_rule) << " step_bound=" << yn(r.step_bound)
      << '\n';
  for (const auto& v : r.violations) out << "violation: " << v << '\n';
}

inline void write_walk_report(std::ostream& out, const WalkReport& r) {
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "report: feasible=" << yn(r.feasible) << " exact=" << yn(r.exact) << " sign_compatible=" << yn(r.sign_compatible)
      << " integral=" << yn(r.integral) << " steepness_monotone=" << yn(r.steepness_monotone)
      << " length_within_bound=" << yn(r.length_within_bound) << " x_support_contained=" << yn(r.x_support_contained);
  if (r.permutation_feasible) out << " permutation_feasible=" << yn(*r.permutation_feasible);
  out << '\n';
}

}  // namespace circuits
