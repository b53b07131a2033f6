#include "starchart/semantics.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "starchart/error.hpp"

namespace starchart {

std::vector<Expr> ExprStep::successors(ActionId a) const {
  std::vector<Expr> out;
  for (const auto& m : moves)
    if (m.action == a) out.push_back(m.target);
  return out;
}

bool can_terminate(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Zero: return false;
    case ExprKind::Atom: return true;
    case ExprKind::Sum: return can_terminate(e.lhs()) || can_terminate(e.rhs());
    case ExprKind::Seq: return can_terminate(e.lhs()) && can_terminate(e.rhs());
    case ExprKind::Star: return can_terminate(e.rhs());
  }
  return false;
}

namespace {

ActionSet bit(ActionId a) { return ActionSet{1} << a; }

// Moves in rule order, possibly with duplicates; normalized by the caller.
ExprStep raw_step(const Expr& e, const Alphabet& alphabet) {
  ExprStep out;
  switch (e.kind()) {
    case ExprKind::Zero: break;
    case ExprKind::Atom: out.outputs = bit(alphabet.index(e.action())); break;
    case ExprKind::Sum: {
      auto l = raw_step(e.lhs(), alphabet);
      auto r = raw_step(e.rhs(), alphabet);
      out.outputs = l.outputs | r.outputs;
      for (auto* side : {&l, &r})
        for (auto& m : side->moves) out.moves.push_back({m.action, std::move(m.target), Tag::Body});
      break;
    }
    case ExprKind::Seq: {
      auto l = raw_step(e.lhs(), alphabet);
      for (ActionId a = 0; a < alphabet.size(); ++a)
        if ((l.outputs >> a) & 1U) out.moves.push_back({a, e.rhs(), Tag::Body});
      for (auto& m : l.moves) out.moves.push_back({m.action, Expr::seq(m.target, e.rhs()), m.tag});
      break;
    }
    case ExprKind::Star: {
      auto l = raw_step(e.lhs(), alphabet);
      auto r = raw_step(e.rhs(), alphabet);
      out.outputs = r.outputs;
      for (auto& m : r.moves) out.moves.push_back({m.action, std::move(m.target), Tag::Body});
      // Entry only when the derivative can still get back round the loop.
      for (auto& m : l.moves) {
        const Tag tag = can_terminate(m.target) ? Tag::Entry : Tag::Body;
        out.moves.push_back({m.action, Expr::seq(m.target, e), tag});
      }
      for (ActionId a = 0; a < alphabet.size(); ++a)
        if ((l.outputs >> a) & 1U) out.moves.push_back({a, e, Tag::Entry});
      break;
    }
  }
  return out;
}

}  // namespace

ExprStep expr_step(const Expr& e, const Alphabet& alphabet) {
  auto raw = raw_step(e, alphabet);
  std::stable_sort(raw.moves.begin(), raw.moves.end(),
                   [](const Move& x, const Move& y) { return x.action < y.action; });
  ExprStep out;
  out.outputs = raw.outputs;
  for (auto& m : raw.moves) {
    auto dup = std::find_if(out.moves.begin(), out.moves.end(), [&](const Move& k) {
      return k.action == m.action && k.target == m.target;
    });
    if (dup == out.moves.end()) {
      out.moves.push_back(std::move(m));
    } else if (m.tag == Tag::Entry) {
      dup->tag = Tag::Entry;
    }
  }
  return out;
}

std::optional<StateId> ExpressionChart::find(const Expr& e) const {
  auto it = std::find(exprs.begin(), exprs.end(), e);
  if (it == exprs.end()) return std::nullopt;
  return static_cast<StateId>(it - exprs.begin());
}

ExpressionChart chart_of_all(const std::vector<Expr>& roots, const Alphabet& alphabet) {
  ExpressionChart out{Prechart(alphabet), {}};
  std::unordered_map<Expr, StateId, ExprHash> ids;
  std::deque<StateId> queue;
  auto intern = [&](const Expr& e) {
    auto [it, fresh] = ids.emplace(e, static_cast<StateId>(out.exprs.size()));
    if (fresh) {
      out.chart.add_state(render(e));
      out.exprs.push_back(e);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (const auto& r : roots) intern(r);
  while (!queue.empty()) {
    StateId x = queue.front();
    queue.pop_front();
    auto step = expr_step(out.exprs[x], alphabet);
    for (ActionId a = 0; a < alphabet.size(); ++a)
      if ((step.outputs >> a) & 1U) out.chart.add_output(x, a);
    for (const auto& m : step.moves) out.chart.add_transition(x, m.action, intern(m.target));
  }
  return out;
}

ExpressionChart chart_of(const Expr& e, const Alphabet& alphabet) {
  auto out = chart_of_all({e}, alphabet);
  out.chart.set_root(StateId{0});
  return out;
}

Alphabet alphabet_of(const std::vector<Expr>& exprs) {
  std::set<std::string> names;
  for (const auto& e : exprs)
    for (auto& a : atoms_of(e)) names.insert(std::move(a));
  return Alphabet(std::vector<std::string>(names.begin(), names.end()));
}

ExpressionChart chart_of(const Expr& e) { return chart_of(e, alphabet_of({e})); }

Coproduct coproduct(const Prechart& x, const Prechart& y) {
  if (!(x.alphabet() == y.alphabet())) throw InputError("coproduct of precharts over different alphabets");
  Coproduct out{Prechart(x.alphabet()), {}, {}};
  for (StateId s = 0; s < x.size(); ++s) out.left.push_back(out.chart.add_state("1/" + x.name(s), x.outputs(s)));
  for (StateId s = 0; s < y.size(); ++s) out.right.push_back(out.chart.add_state("2/" + y.name(s), y.outputs(s)));
  for (const auto& t : x.transitions()) out.chart.add_transition(out.left[t.from], t.action, out.left[t.to]);
  for (const auto& t : y.transitions()) out.chart.add_transition(out.right[t.from], t.action, out.right[t.to]);
  return out;
}

Embedded generated(const Prechart& x, StateId state) {
  if (state >= x.size()) throw InputError("unknown state index " + std::to_string(state));
  Embedded out{Prechart(x.alphabet()), {}};
  std::vector<std::optional<StateId>> local(x.size());
  std::deque<StateId> queue{state};
  local[state] = out.chart.add_state(x.name(state), x.outputs(state));
  out.inclusion.push_back(state);
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      for (StateId t : x.successors(s, a)) {
        if (!local[t]) {
          local[t] = out.chart.add_state(x.name(t), x.outputs(t));
          out.inclusion.push_back(t);
          queue.push_back(t);
        }
        out.chart.add_transition(*local[s], a, *local[t]);
      }
  }
  out.chart.set_root(StateId{0});
  return out;
}

Quotient quotient(const Prechart& x, const Partition& r) {
  if (r.universe() != x.size()) throw PreconditionError("relation universe does not match the prechart");
  if (auto check = check_bisimulation(x, x, r.pairs()); !check.ok)
    throw PreconditionError("relation is not a bisimulation (state '" +
                            x.name(check.violation->left) + "')");
  Quotient out{Prechart(x.alphabet()), std::vector<StateId>(x.size())};
  for (std::size_t b = 0; b < r.block_count(); ++b) {
    StateId rep = r.block(b).front();
    out.chart.add_state(x.name(rep), x.outputs(rep));
  }
  for (StateId s = 0; s < x.size(); ++s) out.projection[s] = static_cast<StateId>(r.block_of(s));
  for (const auto& t : x.transitions())
    out.chart.add_transition(out.projection[t.from], t.action, out.projection[t.to]);
  if (x.root()) out.chart.set_root(out.projection[*x.root()]);
  return out;
}

HomCheck is_homomorphism(const std::vector<StateId>& h, const Prechart& x, const Prechart& y) {
  if (h.size() != x.size()) throw InputError("map is not total on the source prechart");
  if (!(x.alphabet() == y.alphabet())) throw InputError("homomorphism check across alphabets");
  for (StateId s : h)
    if (s >= y.size()) throw InputError("map image outside the target prechart");
  using C = HomViolation::Clause;
  for (StateId s = 0; s < x.size(); ++s) {
    if (x.outputs(s) != y.outputs(h[s])) {
      auto diff = x.outputs(s) ^ y.outputs(h[s]);
      ActionId a = 0;
      while (!((diff >> a) & 1U)) ++a;
      return {false, HomViolation{C::Output, s, a, std::nullopt}};
    }
    for (ActionId a = 0; a < x.alphabet().size(); ++a) {
      std::vector<StateId> image;
      for (StateId t : x.successors(s, a)) image.push_back(h[t]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      const auto& ys = y.successors(h[s], a);
      for (StateId t : image)
        if (!std::binary_search(ys.begin(), ys.end(), t)) return {false, HomViolation{C::Forth, s, a, t}};
      for (StateId t : ys)
        if (!std::binary_search(image.begin(), image.end(), t)) return {false, HomViolation{C::Back, s, a, t}};
    }
  }
  return {};
}

}  // namespace starchart
