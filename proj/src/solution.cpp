#include "starchart/solution.hpp"

#include <algorithm>

#include "starchart/bisim.hpp"
#include "starchart/error.hpp"
#include "starchart/semantics.hpp"

namespace starchart {

Expr unfold(const Expr& e, const Alphabet& alphabet) {
  auto step = expr_step(e, alphabet);
  std::vector<Expr> outs, moves;
  for (ActionId a = 0; a < alphabet.size(); ++a)
    if ((step.outputs >> a) & 1U) outs.push_back(Expr::atom(alphabet.name(a)));
  for (const auto& m : step.moves) moves.push_back(Expr::seq(Expr::atom(alphabet.name(m.action)), m.target));
  return Expr::sum(gsum(outs), gsum(moves));
}

Expr unfold(const Expr& e) { return unfold(e, alphabet_of({e})); }

namespace {

Expr operand(const std::vector<Expr>& first, const std::vector<Expr>& second) {
  if (first.empty() && second.empty()) return Expr::zero();
  return Expr::sum(gsum(first), gsum(second));
}

class CanonicalSolver {
 public:
  explicit CanonicalSolver(const LabelledPrechart& l)
      : l_(l), x_(l.base()), m_(all_measures(l)), memo_s_(x_.size()), down_(x_.size(), std::vector<bool>(x_.size())) {
    for (auto [from, to] : derived_relations(l).diredge) down_[from][to] = true;
  }

  Solution run() {
    Solution out{x_, {}, {}};
    for (StateId x = 0; x < x_.size(); ++x) out.assign.push_back(s(x));
    out.companion = std::move(memo_t_);
    return out;
  }

 private:
  Expr atom(ActionId a) const { return Expr::atom(x_.alphabet().name(a)); }

  std::vector<Expr> outputs(StateId x) const {
    std::vector<Expr> out;
    for (ActionId a = 0; a < x_.alphabet().size(); ++a)
      if (x_.has_output(x, a)) out.push_back(atom(a));
    return out;
  }

  Expr loop_part(StateId x) {
    std::vector<Expr> loops, entries;
    for (std::size_t i = 0; i < l_.edges().size(); ++i) {
      const auto& e = l_.edges()[i];
      if (e.from != x || l_.tag(i) != Tag::Entry) continue;
      if (e.to == x) {
        loops.push_back(atom(e.action));
      } else {
        if (!down_[x][e.to]) throw InternalError("entry target outside the loop of its source");
        entries.push_back(Expr::seq(atom(e.action), t(e.to, x)));
      }
    }
    return operand(loops, entries);
  }

  const Expr& s(StateId x) {
    if (memo_s_[x]) return *memo_s_[x];
    Expr head = loop_part(x);
    std::vector<Expr> steps;
    for (std::size_t i = 0; i < l_.edges().size(); ++i) {
      const auto& e = l_.edges()[i];
      if (e.from != x || l_.tag(i) != Tag::Body) continue;
      if (m_[e.to].body_depth >= m_[x].body_depth) throw InternalError("body depth did not decrease");
      steps.push_back(Expr::seq(atom(e.action), s(e.to)));
    }
    memo_s_[x] = Expr::star(head, operand(outputs(x), steps));
    return *memo_s_[x];
  }

  // Invariant: anchor ↷ x, so t-calls descend in (|anchor|_en, |x|_b).
  Expr t(StateId x, StateId anchor) {
    if (auto it = memo_t_.find({x, anchor}); it != memo_t_.end()) return it->second;
    if (!down_[anchor][x]) throw InternalError("companion called outside the anchor's loop");
    if (m_[x].entry_depth >= m_[anchor].entry_depth) throw InternalError("entry depth did not decrease");
    Expr head = loop_part(x);
    std::vector<Expr> steps;
    for (std::size_t i = 0; i < l_.edges().size(); ++i) {
      const auto& e = l_.edges()[i];
      if (e.from != x || l_.tag(i) != Tag::Body) continue;
      if (e.to == anchor) {
        steps.push_back(atom(e.action));
      } else {
        if (m_[e.to].body_depth >= m_[x].body_depth) throw InternalError("body depth did not decrease");
        steps.push_back(Expr::seq(atom(e.action), t(e.to, anchor)));
      }
    }
    Expr result = Expr::star(head, operand(outputs(x), steps));
    memo_t_.emplace(std::make_pair(x, anchor), result);
    return result;
  }

  const LabelledPrechart& l_;
  const Prechart& x_;
  std::vector<Measures> m_;
  std::vector<std::optional<Expr>> memo_s_;
  std::map<std::pair<StateId, StateId>, Expr> memo_t_;
  std::vector<std::vector<bool>> down_;
};

}  // namespace

Solution canonical_solution(const LabelledPrechart& l) { return CanonicalSolver(l).run(); }

Expr equation_rhs(const Prechart& x, const std::vector<Expr>& s, StateId state) {
  std::vector<Expr> outs, steps;
  for (ActionId a = 0; a < x.alphabet().size(); ++a)
    if (x.has_output(state, a)) outs.push_back(Expr::atom(x.alphabet().name(a)));
  for (ActionId a = 0; a < x.alphabet().size(); ++a)
    for (StateId y : x.successors(state, a)) steps.push_back(Expr::seq(Expr::atom(x.alphabet().name(a)), s[y]));
  return Expr::sum(gsum(outs), gsum(steps));
}

SolutionCheck verify_solution(const Prechart& x, const std::vector<Expr>& s) {
  if (s.size() != x.size()) throw PreconditionError("assignment is not total on the prechart");
  for (StateId state = 0; state < x.size(); ++state)
    if (!bisimilar(s[state], equation_rhs(x, s, state), x.alphabet())) return {false, state};
  return {};
}

SolutionCheck verify_solution(const Solution& s) { return verify_solution(s.chart, s.assign); }

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Zero:
    case ExprKind::Atom: return e;
    case ExprKind::Sum: {
      auto l = simplify(e.lhs()), r = simplify(e.rhs());
      if (r.is_zero()) return l;
      return Expr::sum(l, r);
    }
    case ExprKind::Seq: {
      auto l = simplify(e.lhs());
      if (l.is_zero()) return l;
      return Expr::seq(l, simplify(e.rhs()));
    }
    case ExprKind::Star: return Expr::star(simplify(e.lhs()), simplify(e.rhs()));
  }
  return e;
}

}  // namespace starchart
