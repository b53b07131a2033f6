#include "starchart/certify.hpp"

#include <algorithm>

#include "starchart/error.hpp"
#include "starchart/rerouting.hpp"
#include "starchart/semantics.hpp"
#include "starchart/solution.hpp"

namespace starchart {

bool Certificate::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

namespace {

struct Combined {
  ExpressionChart left;
  ExpressionChart right;
  Coproduct sum;
  StateId root_e;
  StateId root_f;
};

Combined combine(const Expr& e, const Expr& f, const Alphabet& alphabet) {
  auto left = chart_of(e, alphabet);
  auto right = chart_of(f, alphabet);
  auto sum = coproduct(left.chart, right.chart);
  StateId re = sum.left.at(0), rf = sum.right.at(0);
  return {std::move(left), std::move(right), std::move(sum), re, rf};
}

const char* violation_name(BisimViolation::Clause c) {
  switch (c) {
    case BisimViolation::Clause::Output: return "output";
    case BisimViolation::Clause::Forth: return "forth";
    case BisimViolation::Clause::Back: return "back";
  }
  return "?";
}

// Confirms that the recorded clause really separates the two states relative
// to the bisimilarity `bisim` of `x`.
bool distinction_holds(const Prechart& x, const Partition& bisim, const BisimViolation& v) {
  if (v.left >= x.size() || v.right >= x.size()) return false;
  if (v.clause == BisimViolation::Clause::Output) return x.outputs(v.left) != x.outputs(v.right);
  if (v.action >= x.alphabet().size() || !v.successor) return false;
  StateId from = v.clause == BisimViolation::Clause::Forth ? v.left : v.right;
  StateId other = v.clause == BisimViolation::Clause::Forth ? v.right : v.left;
  if (!x.has_transition(from, v.action, *v.successor)) return false;
  return std::none_of(x.successors(other, v.action).begin(), x.successors(other, v.action).end(),
                      [&](StateId s) { return bisim.related(s, *v.successor); });
}

}  // namespace

Certificate certify(const Expr& e, const Expr& f) {
  Certificate c;
  c.e = e;
  c.f = f;
  c.alphabet = alphabet_of({e, f});
  auto comb = combine(e, f, c.alphabet);
  const auto& x = comb.sum.chart;
  auto bisim = bisimilarity(x);

  if (!bisim.related(comb.root_e, comb.root_f)) {
    c.verdict = Verdict::Inequivalent;
    c.distinction = distinguish(x, bisim, comb.root_e, comb.root_f);
    if (!c.distinction) throw InternalError("unrelated roots without a distinguishing clause");
    bool ok = distinction_holds(x, bisim, *c.distinction);
    c.checks.push_back({"distinguishing-clause", ok, violation_name(c.distinction->clause)});
    return c;
  }

  c.verdict = Verdict::Equivalent;
  auto lw = syntactic_witness(comb.left);
  auto rw = syntactic_witness(comb.right);
  auto joint = witness_coproduct(lw, rw);
  auto col = collapse(joint);
  c.collapsed = col.result;
  c.projection = col.projection;
  c.merged_root = col.projection[comb.root_e];
  auto sol = canonical_solution(col.result);
  c.common = sol.assign[*c.merged_root];
  c.checks = recheck(c);
  if (!c.all_passed()) {
    std::string failed;
    for (const auto& ch : c.checks)
      if (!ch.passed) failed += " " + ch.name;
    throw InternalError("certificate self-check failed:" + failed);
  }
  return c;
}

std::vector<NamedCheck> recheck(const Certificate& c) {
  std::vector<NamedCheck> out;
  auto comb = combine(c.e, c.f, c.alphabet);
  const auto& x = comb.sum.chart;
  auto bisim = bisimilarity(x);

  if (c.verdict == Verdict::Inequivalent) {
    bool ok = c.distinction && !bisim.related(comb.root_e, comb.root_f) &&
              c.distinction->left == comb.root_e && c.distinction->right == comb.root_f &&
              distinction_holds(x, bisim, *c.distinction);
    out.push_back({"distinguishing-clause", ok, c.distinction ? violation_name(c.distinction->clause) : "missing"});
    return out;
  }

  out.push_back({"roots-bisimilar", bisim.related(comb.root_e, comb.root_f), ""});
  auto joint = witness_coproduct(syntactic_witness(comb.left), syntactic_witness(comb.right));
  out.push_back({"input-witness", verify_witness(joint).ok, ""});
  if (!c.collapsed || !c.common || !c.merged_root) {
    out.push_back({"certificate-complete", false, "missing collapse data"});
    return out;
  }
  const auto& y = *c.collapsed;
  auto report = verify_witness(y);
  out.push_back({"collapse-witness", report.ok, report.ok ? "" : clause_name(report.clause)});
  out.push_back({"collapse-minimal", bisimilarity(y.base()).is_identity(), ""});
  bool shape = c.projection.size() == x.size() &&
               std::all_of(c.projection.begin(), c.projection.end(), [&](StateId s) { return s < y.base().size(); });
  out.push_back({"projection-homomorphism", shape && is_homomorphism(c.projection, x, y.base()).ok, ""});
  out.push_back({"projection-kernel", shape && kernel(c.projection) == bisim, ""});
  bool merged = shape && c.projection[comb.root_e] == *c.merged_root && c.projection[comb.root_f] == *c.merged_root;
  out.push_back({"roots-merged", merged, ""});
  if (!report.ok || *c.merged_root >= y.base().size()) {
    out.push_back({"solution", false, "no valid witness to solve"});
    return out;
  }
  auto sol = canonical_solution(y);
  auto check = verify_solution(sol);
  out.push_back({"solution", check.ok && sol.assign[*c.merged_root] == *c.common,
                 check.ok ? "" : "equation fails at " + y.base().name(*check.failing)});
  out.push_back({"common-bisimilar-e", bisimilar(c.e, *c.common, c.alphabet), ""});
  out.push_back({"common-bisimilar-f", bisimilar(c.f, *c.common, c.alphabet), ""});
  return out;
}

}  // namespace starchart
