// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "starchart/bisim.hpp"
#include "starchart/certify.hpp"
#include "starchart/generators.hpp"
#include "starchart/json_io.hpp"
#include "starchart/layering.hpp"
#include "starchart/rerouting.hpp"
#include "starchart/semantics.hpp"
#include "starchart/solution.hpp"

using namespace starchart;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kDepth = 5;
const Alphabet kAlpha({"a", "b", "c"});

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome axiom_soundness(std::uint64_t seed) {
  Rng rng(seed);
  auto t0 = Clock::now();
  std::size_t total = 0, held = 0;
  for (Axiom ax : kAllAxioms)
    for (int i = 0; i < 500; ++i) {
      auto e1 = random_expr(rng, kAlpha, 3), e2 = random_expr(rng, kAlpha, 3), e3 = random_expr(rng, kAlpha, 3);
      auto [lhs, rhs] = axiom_instance(ax, e1, e2, e3);
      ++total;
      if (bisimilar(lhs, rhs, kAlpha)) ++held;
      else std::cerr << "  " << axiom_name(ax) << " fails: " << render(lhs) << " vs " << render(rhs) << "\n";
    }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << held << "/" << total << " instances bisimilar, " << secs << " s";
  return {held == total && secs < 30.0, d.str()};
}

Outcome rsp_soundness() {
  const char* pairs[][2] = {{"a", "a"},   {"a", "0"},   {"a a", "a"}, {"a + a", "a"}, {"a", "a a"},
                            {"0", "a"},   {"a*a", "a"}, {"a", "a*a"}, {"0", "0"},     {"a", "a + a"}};
  Alphabet alpha({"a"});
  auto gs = enumerate_exprs(alpha, 5);
  std::size_t premises = 0, violations = 0;
  for (const auto& p : pairs) {
    auto e = parse(p[0], alpha), f = parse(p[1], alpha);
    auto solution = Expr::star(e, f);
    for (const auto& g : gs) {
      if (!bisimilar(g, Expr::sum(Expr::seq(e, g), f), alpha)) continue;
      ++premises;
      if (!bisimilar(g, solution, alpha)) {
        ++violations;
        std::cerr << "  RSP violated by g = " << render(g) << "\n";
      }
    }
  }
  std::ostringstream d;
  d << gs.size() << " expressions g, " << premises << " satisfy the premise, " << violations << " violations";
  return {violations == 0, d.str()};
}

Outcome fundamental(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t ok = 0;
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, kAlpha, kDepth);
    ok += bisimilar(e, unfold(e, kAlpha), kAlpha);
  }
  return {ok == 500, std::to_string(ok) + "/500 bisimilar to their unfolding"};
}

Outcome size_bound_holds(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t ok = 0, largest = 0;
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, kAlpha, kDepth);
    auto n = chart_of(e, kAlpha).chart.size();
    largest = std::max(largest, n);
    ok += n <= size_bound(e);
  }
  return {ok == 500, std::to_string(ok) + "/500 within bound, largest chart " + std::to_string(largest)};
}

Outcome well_layered(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t ok = 0;
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, kAlpha, kDepth);
    ok += verify_witness(syntactic_witness(chart_of(e, kAlpha))).ok;
  }
  return {ok == 500, std::to_string(ok) + "/500 syntactic witnesses valid"};
}

Outcome witness_count() {
  auto chart = chart_of(parse("(aa)*0")).chart;
  auto all = oracle::all_witnesses(chart);
  bool agree = true;
  if (all.size() == 2) {
    auto s1 = canonical_solution(LabelledPrechart(chart, all[0]));
    auto s2 = canonical_solution(LabelledPrechart(chart, all[1]));
    for (StateId x = 0; x < chart.size(); ++x) agree = agree && bisimilar(s1.assign[x], s2.assign[x]);
  }
  return {all.size() == 2 && agree,
          std::to_string(all.size()) + " valid labellings of " + std::to_string(1U << chart.transition_count()) +
              ", solutions " + (agree ? "bisimilar" : "differ")};
}

// Charts for the cross-witness check: expression charts and random precharts
// that admit a witness.
std::vector<Prechart> corpus(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Prechart> out;
  Alphabet ab({"a", "b"});
  while (out.size() < 25) {
    auto c = chart_of(random_expr(rng, ab, 4), ab).chart;
    if (c.size() >= 2 && c.transition_count() <= 12) out.push_back(std::move(c));
  }
  while (out.size() < 50) {
    auto x = oracle::random_prechart(rng, 3 + out.size() % 4, 2, 0.25, 0.15);
    if (x.transition_count() <= 12 && infer_witness(x)) out.push_back(std::move(x));
  }
  return out;
}

Outcome solutions(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t ok = 0;
  for (int i = 0; i < 200; ++i) {
    auto e = random_expr(rng, kAlpha, kDepth);
    auto s = canonical_solution(syntactic_witness(chart_of(e, kAlpha)));
    ok += verify_solution(s).ok && bisimilar(s.assign[0], e, kAlpha);
  }
  std::size_t multi = 0, agree = 0;
  for (const auto& x : corpus(seed + 1)) {
    auto ws = enumerate_witnesses(x, 8);
    if (ws.size() < 2) continue;
    ++multi;
    std::vector<Solution> sols;
    for (const auto& w : ws) sols.push_back(canonical_solution(w));
    bool same = true;
    for (const auto& s : sols) same = same && verify_solution(s).ok;
    for (std::size_t k = 1; k < sols.size(); ++k)
      for (StateId p = 0; p < x.size(); ++p) same = same && bisimilar(sols[0].assign[p], sols[k].assign[p], x.alphabet());
    agree += same;
  }
  std::ostringstream d;
  d << ok << "/200 solutions verified and root-bisimilar; " << agree << "/" << multi
    << " multi-witness corpus charts agree";
  return {ok == 200 && agree == multi && multi > 0, d.str()};
}

Outcome rerouting_bisim(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::size_t ok = 0, merged = 0;
  for (int i = 0; i < 200; ++i) {
    Prechart x;
    if (i % 2) {
      auto e = random_expr(rng, kAlpha, 4);
      x = chart_of(Expr::sum(e, random_rewrite(rng, kAlpha, random_rewrite(rng, kAlpha, e))), kAlpha).chart;
    } else {
      x = oracle::random_prechart(rng, 3 + i % 8, 2, 0.2, 0.3);
    }
    auto r = bisimilarity(x);
    // Any retract whose kernel lies inside R: each block keeps a random
    // survivor and sends a random subset of the others to it.
    std::vector<std::pair<StateId, StateId>> merges;
    for (const auto& block : r.blocks()) {
      StateId keep = block[std::uniform_int_distribution<std::size_t>(0, block.size() - 1)(rng)];
      for (StateId s : block)
        if (s != keep && coin(rng)) merges.emplace_back(s, keep);
    }
    auto s = Splitting::merging(x.size(), merges);
    merged += !merges.empty();
    ok += check_bisimulation(x, rerouting(x, s), restrict_relation(r, s)).ok;
  }
  return {ok == 200, std::to_string(ok) + "/200 restricted relations are bisimulations (" + std::to_string(merged) +
                         " nontrivial splittings)"};
}

Outcome collapse_closure(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t ok = 0, steps = 0, fallbacks = 0;
  for (int i = 0; i < 200; ++i) {
    auto e = random_expr(rng, kAlpha, kDepth);
    if (i % 2) e = Expr::sum(e, random_rewrite(rng, kAlpha, e));
    auto ce = chart_of(e, kAlpha);
    auto c = collapse(syntactic_witness(ce));
    steps += c.steps.size();
    for (const auto& st : c.steps) fallbacks += st.fell_back;
    bool good = verify_witness(c.result).ok && bisimilarity(c.result.base()).is_identity() &&
                kernel(c.projection) == bisimilarity(ce.chart) &&
                bisimilar(canonical_solution(c.result).assign[c.projection[0]], e, kAlpha);
    ok += good;
    if (!good) std::cerr << "  collapse fails for " << render(e) << "\n";
  }
  std::ostringstream d;
  d << ok << "/200 collapses valid, minimal, kernel-exact and solved (" << steps << " merge steps, " << fallbacks
    << " relabel fallbacks)";
  return {ok == 200, d.str()};
}

Outcome counterexample() {
  auto left = fixtures::reroute_left().base();
  auto right = fixtures::reroute_right();
  bool left_ok = infer_witness(left).has_value();
  bool right_none = !infer_witness(right).has_value();
  auto all_left = oracle::all_witnesses(left).size();
  auto all_right = oracle::all_witnesses(right).size();
  std::ostringstream d;
  d << "left: inferred=" << left_ok << " exhaustive=" << all_left << "/" << (1U << left.transition_count())
    << "; right: inferred=" << !right_none << " exhaustive=" << all_right << "/" << (1U << right.transition_count());
  return {left_ok && right_none && all_left > 0 && all_right == 0, d.str()};
}

Outcome pipeline(std::uint64_t seed, Clock::time_point suite_start) {
  Rng rng(seed);
  std::uniform_int_distribution<int> steps(1, 5);
  std::size_t eq_ok = 0;
  for (int i = 0; i < 100; ++i) {
    auto e = random_expr(rng, kAlpha, 4);
    auto f = e;
    for (int k = steps(rng); k > 0; --k) f = random_rewrite(rng, kAlpha, f);
    auto cert = certify(e, f);
    auto back = certificate_from_json(Json::parse(certificate_to_json(cert).dump()));
    bool rechecked = true;
    for (const auto& c : recheck(back)) rechecked = rechecked && c.passed;
    eq_ok += cert.verdict == Verdict::Equivalent && cert.all_passed() && rechecked;
  }
  std::size_t neq_ok = 0;
  for (int found = 0; found < 20;) {
    auto e = random_expr(rng, kAlpha, 4), f = random_expr(rng, kAlpha, 4);
    if (bisimilar(e, f, kAlpha)) continue;
    ++found;
    auto cert = certify(e, f);
    bool rechecked = true;
    for (const auto& c : recheck(certificate_from_json(certificate_to_json(cert)))) rechecked = rechecked && c.passed;
    neq_ok += cert.verdict == Verdict::Inequivalent && cert.distinction && rechecked;
  }
  double total = seconds_since(suite_start);
  std::ostringstream d;
  d << eq_ok << "/100 equivalent with self-checking certificates, " << neq_ok
    << "/20 inequivalent with verified clauses; suite " << total << " s";
  return {eq_ok == 100 && neq_ok == 20 && total < 300.0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::uint64_t seed = 20240601;
  app.add_option("--seed", seed, "Base seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);

  auto start = Clock::now();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 axiom soundness", [&] { return axiom_soundness(seed + 1); }},
      {"2 RSP soundness", [] { return rsp_soundness(); }},
      {"3 fundamental theorem", [&] { return fundamental(seed + 3); }},
      {"4 size bound", [&] { return size_bound_holds(seed + 4); }},
      {"5 expression charts well-layered", [&] { return well_layered(seed + 5); }},
      {"6 witness count of (aa)*0", [] { return witness_count(); }},
      {"7 canonical solution", [&] { return solutions(seed + 7); }},
      {"8 rerouting preserves bisimilarity", [&] { return rerouting_bisim(seed + 8); }},
      {"9 collapse closure", [&] { return collapse_closure(seed + 9); }},
      {"10 rerouting counterexample", [] { return counterexample(); }},
      {"11 completeness pipeline", [&] { return pipeline(seed + 11, start); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << " [" << secs << "]\n";
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
