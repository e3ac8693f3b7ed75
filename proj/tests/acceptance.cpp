// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "test_support.hpp"

using namespace circuits;
using namespace circuits::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && pass_) {
      pass_ = false;
      first_ = what;
    }
    if (!cond) ++failures_;
  }
  Outcome outcome(const std::string& summary) const {
    if (pass_) return {true, summary};
    return {false, first_ + " (" + std::to_string(failures_) + " failed checks)"};
  }

 private:
  bool pass_ = true;
  std::size_t failures_ = 0;
  std::string first_;
};

struct Instance {
  std::uint64_t seed;
  RandomInstance inst;
  CircuitSet circuits = CircuitSet::symmetric();  // naive enumeration
};

// Criterion-2 instance family: n in 2..5, m_A in 0..2, m_B in max(n,4)..7, |entries| <= 5.
std::vector<Instance> make_family() {
  std::vector<Instance> out;
  for (std::uint64_t k = 0; k < 50; ++k) {
    std::size_t n = 2 + k % 4;
    std::size_t ma = k % 3;
    std::size_t mb = std::max<std::size_t>(n, 4 + (k / 4) % 4);
    out.push_back({k, gen_random_instance(n, ma, mb, 1000 + k, 5)});
  }
  return out;
}

std::string label(const Instance& in) {
  const auto& p = in.inst.poly;
  std::ostringstream s;
  s << "seed " << in.seed << " (n=" << p.n() << ", mA=" << p.m_a() << ", mB=" << p.m_b() << ")";
  return s.str();
}

Outcome criterion1() {
  auto t0 = Clock::now();
  Check ck;
  auto p = triangle();
  std::set<IntVector> reps{iv({1, 0}), iv({0, 1}), iv({1, -1})};
  for (auto [name, set] : {std::pair{"naive", naive_circuits(p)}, std::pair{"standard", standard_form_circuits(p)},
                           std::pair{"model", model_circuits(p)}}) {
    ck.require(set.cardinality() == 6, std::string(name) + " cardinality != 6");
    std::set<IntVector> got;
    for (const auto& c : set.representatives()) got.insert(c.g);
    ck.require(got == reps, std::string(name) + " representatives differ");
  }
  ck.require(key_set(feasible_circuits(p, rv({0, 0}))) == std::set<IntVector>{iv({1, 0}), iv({0, 1})},
             "strictly feasible set at origin");
  auto t = solve_steepest_descent(p, rv({-1, -2}), rv({0, 0}));
  ck.require(t.terminal == TraceTerminal::Optimal, "solve not optimal");
  ck.require(t.x_final == rv({0, 1}), "solve final point");
  ck.require(t.value == -2, "solve value");
  ck.require(t.steps.size() == 1, "solve step count");
  double s = seconds_since(t0);
  ck.require(s < 1.0, "took " + std::to_string(s) + " s");
  return ck.outcome("triangle: 3 methods x cardinality 6, feasible set, 1-step solve to (0,1) value -2 in " +
                    std::to_string(s) + " s");
}

Outcome criterion2(std::vector<Instance>& family) {
  auto t0 = Clock::now();
  Check ck;
  std::size_t total_circuits = 0;
  for (auto& in : family) {
    const auto& p = in.inst.poly;
    in.circuits = naive_circuits(p);
    auto naive = key_set(in.circuits);
    ck.require(naive == key_set(standard_form_circuits(p)), "naive != standard on " + label(in));
    ck.require(naive == key_set(model_circuits(p)), "naive != model on " + label(in));
    total_circuits += naive.size();
  }
  double s = seconds_since(t0);
  ck.require(s < 300.0, "took " + std::to_string(s) + " s");
  return ck.outcome(std::to_string(family.size()) + " instances, " + std::to_string(total_circuits) +
                    " circuits in total, three-way equal in " + std::to_string(s) + " s");
}

Outcome criterion3(const std::vector<Instance>& family) {
  Check ck;
  struct Expect {
    std::size_t n, mb;
    long split, slack, ineq;
  };
  std::ostringstream summary;
  for (auto e : {Expect{2, 3, 36, 10, 6}, Expect{2, 4, 44, 12, 8}, Expect{3, 4, 210, 42, 12}}) {
    auto cmp = verify_standard_form_counts(e.n, e.mb, 1);
    long expected[3] = {e.split, e.slack, e.ineq};
    for (std::size_t i = 0; i < 3; ++i) {
      ck.require(cmp[i].formula == expected[i], cmp[i].name + " formula value");
      ck.require(cmp[i].enumerated == expected[i], cmp[i].name + " enumerated " + cmp[i].enumerated.get_str() +
                                                       " for (" + std::to_string(e.n) + "," + std::to_string(e.mb) + ")");
    }
    summary << "(" << e.n << "," << e.mb << ")=" << cmp[0].enumerated << "/" << cmp[1].enumerated << "/"
            << cmp[2].enumerated << " ";
  }
  std::size_t sandwiches = 0;
  for (const auto& in : family) {
    const auto& p = in.inst.poly;
    std::size_t r = rank(p.A());
    if (r + 1 > p.n()) continue;
    auto res = standard_form_enumeration(p);
    Integer base = static_cast<unsigned long>(res.circuits.cardinality());
    Integer lifted = static_cast<unsigned long>(res.lifted_cardinality);
    ck.require(base <= lifted, "sandwich lower bound on " + label(in));
    ck.require(lifted <= base + conversion_bounds(p.n(), r, p.m_b()).upper_extra, "sandwich upper bound on " + label(in));
    ++sandwiches;
  }
  summary << "; sandwich on " << sandwiches << " instances";
  return ck.outcome(summary.str());
}

Outcome criterion4(const std::vector<Instance>& family) {
  Check ck;
  std::size_t points = 0, dirs = 0;
  for (const auto& in : family) {
    const auto& p = in.inst.poly;
    SeededRng rng(in.seed * 7919 + 4);
    for (int k = 0; k < 5; ++k) {
      RatVector x = random_feasible_point(p, in.inst.x0, rng, k % 3 + 1);
      ck.require(key_set(feasible_circuits(p, x)) == filter_feasible(in.circuits, p, x),
                 "feasible subset mismatch on " + label(in));
      ++points;
      if (auto u = random_kernel_direction(p, rng)) {
        ck.require(key_set(sign_compatible_circuits(p, *u)) == filter_sign_compatible(in.circuits, p, *u),
                   "sign-compatible subset mismatch on " + label(in));
        ++dirs;
      }
    }
  }
  return ck.outcome(std::to_string(points) + " points, " + std::to_string(dirs) + " directions match post-filtering");
}

Outcome criterion5(const std::vector<Instance>& family) {
  Check ck;
  std::size_t sums = 0, single_point = 0;
  for (const auto& in : family) {
    const auto& p = in.inst.poly;
    if (kernel_basis(p.A()).empty()) {  // P is a single point
      ++single_point;
      continue;
    }
    SeededRng rng(in.seed * 104729 + 5);
    RatVector c(p.n());
    for (auto& x : c) x = rng.uniform(-5, 5);
    std::size_t bound = p.n() - rank(p.A());
    for (int k = 0; k < 50; ++k) {
      RatVector a, b;
      do {
        a = random_feasible_point(p, in.inst.x0, rng, 2);
        b = random_feasible_point(p, in.inst.x0, rng, 2);
      } while (a == b);
      CircuitWalk w = c_steepest_walk(p, a, b, c);
      RatVector acc = a;
      for (const auto& s : w.steps) acc = axpy(acc, s.lambda, s.g.direction());
      ck.require(acc == b, "sum does not reconstruct u on " + label(in));
      ck.require(w.steps.size() <= bound, "too many terms on " + label(in));
      for (const auto& s : w.steps) ck.require(in.circuits.contains(s.g.g), "term is not a circuit on " + label(in));
      auto rep = validate_walk(p, w, std::span<const Rational>(c));
      ck.require(rep.sign_compatible, "term not sign-compatible on " + label(in));
      ck.require(rep.feasible && rep.exact, "prefix point infeasible on " + label(in));
      ck.require(rep.steepness_monotone, "steepness not monotone on " + label(in));
      for (int q = 0; q < 3; ++q) {
        auto perm = random_permutation(w.steps.size(), rng);
        auto prep = validate_walk(p, w, std::nullopt, std::span<const std::size_t>(perm));
        ck.require(prep.permutation_feasible.value_or(false), "permuted walk infeasible on " + label(in));
      }
      ++sums;
    }
  }
  return ck.outcome(std::to_string(sums) + " sums verified, 3 permutations each (" +
                    std::to_string(single_point) + " single-point instances have no pairs)");
}

Outcome criterion6() {
  Check ck;
  std::size_t steps = 0, max_steps = 0;
  for (std::uint64_t k = 0; k < 30; ++k) {
    std::size_t n = 2 + k % 3;
    std::size_t ma = k % 2;
    std::size_t mb = 2 + k % 3;
    auto inst = bounded_instance(n, ma, mb, 5000 + k, 5, 1 + static_cast<long>(k % 4));
    const auto& p = inst.poly;
    SeededRng rng(k + 77);
    RatVector c(n);
    for (auto& x : c) x = rng.uniform(-9, 9);
    RatVector x0 = random_feasible_point(p, inst.x0, rng, 1);
    auto trace = solve_steepest_descent(p, c, x0);
    LPResult simplex = plain_simplex(p, c);
    std::string tag = "instance " + std::to_string(k);
    ck.require(trace.terminal == TraceTerminal::Optimal, tag + " not optimal");
    ck.require(simplex.status == LPStatus::Optimal && simplex.value == trace.value, tag + " value differs from simplex");
    auto rep = verify_trace(trace, p, c, naive_circuits(p).cardinality());
    ck.require(rep.ok(), tag + " verify_trace: " + (rep.violations.empty() ? "" : rep.violations.front()));
    steps += trace.steps.size();
    max_steps = std::max(max_steps, trace.steps.size());
  }
  return ck.outcome("30 polytopes, values equal simplex optimum, " + std::to_string(steps) + " steps (max " +
                    std::to_string(max_steps) + ")");
}

Outcome criterion7() {
  Check ck;
  std::size_t walks = 0, traces = 0;
  auto unit_entries = [](std::span<const Rational> v) {
    for (const auto& x : v)
      if (x != 0 && x != 1 && x != -1) return false;
    return true;
  };
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SeededRng rng(900 + seed);
    RatMatrix costs(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) costs(i, j) = rng.uniform(0, 9);
    auto p = gen_dual_transportation(3, 3, costs);
    auto vertices = brute_force_vertices(p);
    std::string tag = "dual transportation seed " + std::to_string(seed);
    ck.require(vertices.size() >= 2, tag + " has fewer than two vertices");
    if (vertices.size() < 2) continue;
    for (const auto& v : vertices) ck.require(is_integral(v), tag + " fractional vertex");
    for (int k = 0; k < 20; ++k) {
      std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vertices.size()) - 1));
      std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vertices.size()) - 2));
      if (j >= i) ++j;
      RatVector c(6);
      for (auto& x : c) x = rng.uniform(-5, 5);
      CircuitWalk w = c_steepest_walk(p, vertices[i], vertices[j], c);
      auto rep = validate_walk(p, w, std::span<const Rational>(c));
      ck.require(rep.ok() && rep.integral, tag + " walk not integral/valid");
      for (const auto& s : w.steps) {
        ck.require(is_integral(RatVector{s.lambda}), tag + " fractional lambda");
        ck.require(unit_entries(s.g.bg), tag + " walk circuit with Bg outside {0,+-1}");
      }
      ++walks;
    }
    // traces under a balanced supply/demand objective c = -(a, b)
    for (int k = 0; k < 5; ++k) {
      // supplies a and demands b with equal totals
      long a[3], b[3];
      do {
        for (auto& x : a) x = rng.uniform(1, 5);
        b[0] = rng.uniform(1, 5);
        b[1] = rng.uniform(1, 5);
        b[2] = a[0] + a[1] + a[2] - b[0] - b[1];
      } while (b[2] <= 0);
      RatVector c{-a[0], -a[1], -a[2], -b[0], -b[1], -b[2]};
      const auto& start = vertices[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vertices.size()) - 1))];
      auto trace = solve_steepest_descent(p, c, start);
      ck.require(trace.terminal == TraceTerminal::Optimal, tag + " balanced objective unbounded");
      for (const auto& s : trace.steps) {
        ck.require(is_integral(s.x) && is_integral(RatVector{s.alpha}), tag + " fractional trace point or step");
        ck.require(unit_entries(s.g.bg), tag + " trace circuit with Bg outside {0,+-1}");
      }
      ck.require(is_integral(trace.x_final), tag + " fractional optimum");
      ++traces;
    }
  }
  return ck.outcome(std::to_string(walks) + " vertex-pair walks and " + std::to_string(traces) +
                    " traces integral with Bg in {0,+-1}");
}

Outcome criterion8() {
  Check ck;
  auto p = pyramid();
  RatVector apex = rv({0, 0, 1});
  ck.require(active_rows(p, apex).size() == 4, "apex is not degenerate");
  auto sd = steepest_descent_circuit(p, rv({0, 0, 1}), apex);
  ck.require(sd.kind == SteepestKind::Descent, "no descent circuit at apex");
  if (sd.kind != SteepestKind::Descent) return ck.outcome("");
  auto step = maximal_step(p, apex, *sd.circuit);
  ck.require(step.bounded && step.alpha > 0, "zero step at apex");
  std::ostringstream s;
  s << "apex escape along " << format_vector(std::span<const Integer>(sd.circuit->g), ',') << " with alpha "
    << step.alpha;
  return ck.outcome(s.str());
}

}  // namespace

int main() {
  auto family = make_family();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 triangle end-to-end", criterion1},
      {"2 three-way enumeration agreement", [&] { return criterion2(family); }},
      {"3 count formulas and conversion sandwich", [&] { return criterion3(family); }},
      {"4 subset faces equal post-filtering", [&] { return criterion4(family); }},
      {"5 conformal sums", [&] { return criterion5(family); }},
      {"6 steepest-descent optimality", criterion6},
      {"7 TU integrality", criterion7},
      {"8 degenerate apex escape", criterion8},
  };
  int failed = 0;
  for (auto& [name, run] : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << o.detail << " ["
              << seconds_since(t0) << " s]" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
