#pragma once

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circuits/circuits.hpp"

namespace circuits::cli {

enum Exit : int {
  Ok = 0,
  ParseFailure = 2,
  NotPointedExit = 3,
  BadFlags = 4,
  UnboundedExit = 5,
  InfeasiblePoint = 6,
  SameEndpoints = 7,
  CountMismatch = 8,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Polyhedron load_poly(const std::string& path) {
  try {
    Polyhedron p = parse_poly(read_file(path));
    validate(p);
    return p;
  } catch (const Error& e) {
    if (e.code() == Errc::NotPointed) throw;
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

inline RatVector load_vec(const std::string& path, std::size_t n) {
  try {
    return parse_vec(read_file(path), n);
  } catch (const Error& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

/// Writes to the named file, or to `fallback` when the name is empty.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot write '" + path + "'");
  write(f);
}

inline int exit_for(Errc code) {
  switch (code) {
    case Errc::Parse:
    case Errc::DimensionMismatch: return ParseFailure;
    case Errc::NotPointed: return NotPointedExit;
    case Errc::InvalidDimensions: return BadFlags;
    case Errc::IdenticalEndpoints: return SameEndpoints;
    default: return InfeasiblePoint;
  }
}

struct EnumerateArgs {
  std::string input, output, method = "naive", feasible_at, sign_compatible_with;
  unsigned threads = 1;
};

inline int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  bool subset = !a.feasible_at.empty() || !a.sign_compatible_with.empty();
  if (subset && a.method != "model") {
    err << "error: --feasible-at and --sign-compatible-with require --method model\n";
    return BadFlags;
  }
  if (!a.feasible_at.empty() && !a.sign_compatible_with.empty()) {
    err << "error: --feasible-at and --sign-compatible-with are mutually exclusive\n";
    return BadFlags;
  }
  Polyhedron p = load_poly(a.input);
  auto start = std::chrono::steady_clock::now();
  CircuitSet set = CircuitSet::symmetric();
  if (a.method == "naive") {
    set = naive_circuits(p);
  } else if (a.method == "standard") {
    set = standard_form_circuits(p);
  } else if (!a.feasible_at.empty()) {
    set = feasible_circuits(p, load_vec(a.feasible_at, p.n()), a.threads);
  } else if (!a.sign_compatible_with.empty()) {
    set = sign_compatible_circuits(p, load_vec(a.sign_compatible_with, p.n()), a.threads);
  } else {
    set = model_circuits(p, a.threads);
  }
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  emit(a.output, out, [&](std::ostream& o) { write_circ(o, set, p.n()); });
  err << "cardinality " << set.cardinality() << '\n';
  err << "wall time " << std::fixed << std::setprecision(6) << elapsed.count() << " s\n";
  return Ok;
}

inline int cmd_solve(const std::string& input, const std::string& objective, const std::string& start,
                     std::ostream& out) {
  Polyhedron p = load_poly(input);
  RatVector c = load_vec(objective, p.n());
  RatVector x0 = load_vec(start, p.n());
  if (!contains(p, x0)) throw Error(Errc::PointNotInPolyhedron, "start point is not in P");
  AugmentationTrace trace = solve_steepest_descent(p, c, x0);
  write_trace(out, trace);
  write_trace_report(out, verify_trace(trace, p, c));
  return trace.terminal == TraceTerminal::Optimal ? Ok : UnboundedExit;
}

inline int cmd_walk(const std::string& input, const std::string& from, const std::string& to,
                    const std::string& objective, const std::string& picker, std::ostream& out) {
  Polyhedron p = load_poly(input);
  RatVector v1 = load_vec(from, p.n());
  RatVector v2 = load_vec(to, p.n());
  std::optional<RatVector> c;
  if (!objective.empty()) c = load_vec(objective, p.n());
  Picker pk = picker == "gaussian" ? Picker::gaussian() : Picker::steepest(c.value_or(zeros(p.n())));
  CircuitWalk walk = circuit_walk(p, v1, v2, pk);
  std::vector<std::size_t> reversed(walk.steps.size());
  for (std::size_t i = 0; i < reversed.size(); ++i) reversed[i] = reversed.size() - 1 - i;
  std::optional<std::span<const Rational>> cspan;
  if (c && pk.kind == PickerKind::SteepestLP) cspan = std::span<const Rational>(*c);
  write_walk(out, walk);
  write_walk_report(out, validate_walk(p, walk, cspan, std::span<const std::size_t>(reversed)));
  return Ok;
}

struct GenArgs {
  std::string type = "random", output;
  std::size_t n = 3, ma = 0, mb = 5, p = 3, q = 3;
  std::uint64_t seed = 1;
  std::int64_t magnitude = 5;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  Polyhedron poly = [&] {
    if (a.type == "random") return gen_random(a.n, a.ma, a.mb, a.seed, a.magnitude);
    if (a.p == 0 || a.q == 0) throw Error(Errc::InvalidDimensions, "p and q must be positive");
    SeededRng rng(a.seed);
    RatMatrix costs(a.p, a.q);
    for (std::size_t i = 0; i < a.p; ++i)
      for (std::size_t j = 0; j < a.q; ++j) costs(i, j) = rng.uniform(0, 9);
    return gen_dual_transportation(a.p, a.q, costs);
  }();
  emit(a.output, out, [&](std::ostream& o) { write_poly(o, poly); });
  return Ok;
}

inline int cmd_check_counts(std::size_t n, std::size_t mb, std::uint64_t seed, std::ostream& out) {
  bool all = true;
  for (const auto& cmp : verify_standard_form_counts(n, mb, seed)) {
    out << cmp.name << ": formula " << cmp.formula.get_str() << " enumerated " << cmp.enumerated.get_str()
        << (cmp.matches() ? " ok" : " MISMATCH") << '\n';
    all = all && cmp.matches();
  }
  return all ? Ok : CountMismatch;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuits of polyhedra: enumeration, augmentation, sign-compatible walks"};
  app.require_subcommand(1);

  detail::EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "enumerate circuits of a .poly file");
  enumerate->add_option("input", en.input, ".poly file")->required();
  enumerate->add_option("--method", en.method, "naive, standard or model")
      ->check(CLI::IsMember({"naive", "standard", "model"}));
  enumerate->add_option("--feasible-at", en.feasible_at, ".vec point; strictly feasible circuits there");
  enumerate->add_option("--sign-compatible-with", en.sign_compatible_with, ".vec direction u; circuits conformal to u");
  enumerate->add_option("-o,--output", en.output, ".circ output (stdout if omitted)");
  enumerate->add_option("--threads", en.threads, "worker threads for vertex enumeration")->check(CLI::Range(1u, 256u));

  std::string poly, objective, start, from, to, picker = "steepest";
  auto* solve = app.add_subcommand("solve", "steepest-descent circuit augmentation");
  solve->add_option("input", poly, ".poly file")->required();
  solve->add_option("objective", objective, ".vec objective c (minimized)")->required();
  solve->add_option("start", start, ".vec feasible start point")->required();

  auto* walk = app.add_subcommand("walk", "sign-compatible circuit walk between two points");
  walk->add_option("input", poly, ".poly file")->required();
  walk->add_option("from", from, ".vec start point")->required();
  walk->add_option("to", to, ".vec end point")->required();
  walk->add_option("objective", objective, ".vec objective for steepest steps");
  walk->add_option("--picker", picker, "steepest or gaussian")->check(CLI::IsMember({"steepest", "gaussian"}));

  detail::GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a .poly instance");
  g->add_option("--type", gen.type, "random or dualtp")->check(CLI::IsMember({"random", "dualtp"}));
  g->add_option("--n", gen.n, "dimension (random)");
  g->add_option("--ma", gen.ma, "equality rows (random)");
  g->add_option("--mb", gen.mb, "inequality rows (random)");
  g->add_option("--magnitude", gen.magnitude, "entry bound (random)");
  g->add_option("--p", gen.p, "sources (dualtp)");
  g->add_option("--q", gen.q, "sinks (dualtp)");
  g->add_option("--seed", gen.seed, "seed");
  g->add_option("-o,--output", gen.output, ".poly output (stdout if omitted)");

  std::size_t cn = 2, cmb = 3;
  std::uint64_t cseed = 1;
  auto* counts = app.add_subcommand("check-counts", "compare standard-form circuit counts with the formulas");
  counts->add_option("--n", cn, "dimension")->required();
  counts->add_option("--mb", cmb, "inequality rows")->required();
  counts->add_option("--seed", cseed, "seed");

  std::vector<std::string> argv_store{"circuits"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return BadFlags;
  }

  try {
    if (enumerate->parsed()) return detail::cmd_enumerate(en, out, err);
    if (solve->parsed()) return detail::cmd_solve(poly, objective, start, out);
    if (walk->parsed()) return detail::cmd_walk(poly, from, to, objective, picker, out);
    if (g->parsed()) return detail::cmd_gen(gen, out);
    return detail::cmd_check_counts(cn, cmb, cseed, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_for(e.code());
  }
}

}  // namespace circuits::cli
