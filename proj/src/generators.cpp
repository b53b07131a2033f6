#include "starchart/generators.hpp"

#include <optional>

#include "starchart/error.hpp"

namespace starchart {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Expr leaf(Rng& rng, const Alphabet& alphabet) {
  // 0 about one time in six.
  if (alphabet.empty() || pick(rng, 6) == 0) return Expr::zero();
  return Expr::atom(alphabet.name(static_cast<ActionId>(pick(rng, alphabet.size()))));
}

Expr make(ExprKind k, Expr l, Expr r) {
  switch (k) {
    case ExprKind::Sum: return Expr::sum(std::move(l), std::move(r));
    case ExprKind::Seq: return Expr::seq(std::move(l), std::move(r));
    case ExprKind::Star: return Expr::star(std::move(l), std::move(r));
    default: throw InternalError("not a binary kind");
  }
}

}  // namespace

Expr random_expr(Rng& rng, const Alphabet& alphabet, std::size_t max_depth) {
  if (max_depth == 0 || pick(rng, 4) == 0) return leaf(rng, alphabet);
  static constexpr ExprKind kinds[] = {ExprKind::Sum, ExprKind::Seq, ExprKind::Star};
  ExprKind k = kinds[pick(rng, 3)];
  Expr l = random_expr(rng, alphabet, max_depth - 1);
  Expr r = random_expr(rng, alphabet, max_depth - 1);
  return make(k, std::move(l), std::move(r));
}

std::vector<Expr> enumerate_exprs(const Alphabet& alphabet, std::size_t max_nodes) {
  // by_size[n]: expressions with exactly n nodes.
  std::vector<std::vector<Expr>> by_size(max_nodes + 1);
  if (max_nodes >= 1) {
    by_size[1].push_back(Expr::zero());
    for (const auto& a : alphabet.names()) by_size[1].push_back(Expr::atom(a));
  }
  for (std::size_t n = 3; n <= max_nodes; ++n)
    for (std::size_t left = 1; left + 1 < n; ++left) {
      std::size_t right = n - 1 - left;
      for (ExprKind k : {ExprKind::Sum, ExprKind::Seq, ExprKind::Star})
        for (const auto& l : by_size[left])
          for (const auto& r : by_size[right]) by_size[n].push_back(make(k, l, r));
    }
  std::vector<Expr> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::B1: return "B1";
    case Axiom::B2: return "B2";
    case Axiom::B3: return "B3";
    case Axiom::B4: return "B4";
    case Axiom::B5: return "B5";
    case Axiom::B6: return "B6";
    case Axiom::B7: return "B7";
    case Axiom::BKS1: return "BKS1";
    case Axiom::BKS2: return "BKS2";
  }
  return "?";
}

std::pair<Expr, Expr> axiom_instance(Axiom a, const Expr& e1, const Expr& e2, const Expr& e3) {
  using E = Expr;
  switch (a) {
    case Axiom::B1: return {E::sum(e1, e2), E::sum(e2, e1)};
    case Axiom::B2: return {E::sum(e1, E::sum(e2, e3)), E::sum(E::sum(e1, e2), e3)};
    case Axiom::B3: return {E::sum(e1, e1), e1};
    case Axiom::B4: return {E::seq(E::sum(e1, e2), e3), E::sum(E::seq(e1, e3), E::seq(e2, e3))};
    case Axiom::B5: return {E::seq(e1, E::seq(e2, e3)), E::seq(E::seq(e1, e2), e3)};
    case Axiom::B6: return {E::sum(e1, E::zero()), e1};
    case Axiom::B7: return {E::seq(E::zero(), e1), E::zero()};
    case Axiom::BKS1: return {E::star(e1, e2), E::sum(E::seq(e1, E::star(e1, e2)), e2)};
    case Axiom::BKS2: return {E::seq(E::star(e1, e2), e3), E::star(e1, E::seq(e2, e3))};
  }
  throw InternalError("unknown axiom");
}

std::optional<Expr> apply_axiom(Axiom a, bool forward, const Expr& e, const Expr& fresh) {
  using E = Expr;
  auto is = [](const Expr& x, ExprKind k) { return x.kind() == k; };
  if (forward) {
    switch (a) {
      case Axiom::B1:
        if (is(e, ExprKind::Sum)) return E::sum(e.rhs(), e.lhs());
        break;
      case Axiom::B2:
        if (is(e, ExprKind::Sum) && is(e.rhs(), ExprKind::Sum))
          return E::sum(E::sum(e.lhs(), e.rhs().lhs()), e.rhs().rhs());
        break;
      case Axiom::B3:
        if (is(e, ExprKind::Sum) && e.lhs() == e.rhs()) return e.lhs();
        break;
      case Axiom::B4:
        if (is(e, ExprKind::Seq) && is(e.lhs(), ExprKind::Sum))
          return E::sum(E::seq(e.lhs().lhs(), e.rhs()), E::seq(e.lhs().rhs(), e.rhs()));
        break;
      case Axiom::B5:
        if (is(e, ExprKind::Seq) && is(e.rhs(), ExprKind::Seq))
          return E::seq(E::seq(e.lhs(), e.rhs().lhs()), e.rhs().rhs());
        break;
      case Axiom::B6:
        if (is(e, ExprKind::Sum) && e.rhs().is_zero()) return e.lhs();
        break;
      case Axiom::B7:
        if (is(e, ExprKind::Seq) && e.lhs().is_zero()) return E::zero();
        break;
      case Axiom::BKS1:
        if (is(e, ExprKind::Star)) return E::sum(E::seq(e.lhs(), e), e.rhs());
        break;
      case Axiom::BKS2:
        if (is(e, ExprKind::Seq) && is(e.lhs(), ExprKind::Star))
          return E::star(e.lhs().lhs(), E::seq(e.lhs().rhs(), e.rhs()));
        break;
    }
    return std::nullopt;
  }
  switch (a) {
    case Axiom::B1: return apply_axiom(a, true, e, fresh);
    case Axiom::B2:
      if (is(e, ExprKind::Sum) && is(e.lhs(), ExprKind::Sum))
        return E::sum(e.lhs().lhs(), E::sum(e.lhs().rhs(), e.rhs()));
      break;
    case Axiom::B3: return E::sum(e, e);
    case Axiom::B4:
      if (is(e, ExprKind::Sum) && is(e.lhs(), ExprKind::Seq) && is(e.rhs(), ExprKind::Seq) &&
          e.lhs().rhs() == e.rhs().rhs())
        return E::seq(E::sum(e.lhs().lhs(), e.rhs().lhs()), e.lhs().rhs());
      break;
    case Axiom::B5:
      if (is(e, ExprKind::Seq) && is(e.lhs(), ExprKind::Seq))
        return E::seq(e.lhs().lhs(), E::seq(e.lhs().rhs(), e.rhs()));
      break;
    case Axiom::B6: return E::sum(e, E::zero());
    case Axiom::B7:
      if (e.is_zero()) return E::seq(E::zero(), fresh);
      break;
    case Axiom::BKS1:
      if (is(e, ExprKind::Sum) && is(e.lhs(), ExprKind::Seq) && is(e.lhs().rhs(), ExprKind::Star) &&
          e.lhs().lhs() == e.lhs().rhs().lhs() && e.lhs().rhs().rhs() == e.rhs())
        return e.lhs().rhs();
      break;
    case Axiom::BKS2:
      if (is(e, ExprKind::Star) && is(e.rhs(), ExprKind::Seq))
        return E::seq(E::star(e.lhs(), e.rhs().lhs()), e.rhs().rhs());
      break;
  }
  return std::nullopt;
}

namespace {

void positions(const Expr& e, std::vector<int>& path, std::vector<std::vector<int>>& out) {
  out.push_back(path);
  if (e.kind() == ExprKind::Zero || e.kind() == ExprKind::Atom) return;
  path.push_back(0);
  positions(e.lhs(), path, out);
  path.back() = 1;
  positions(e.rhs(), path, out);
  path.pop_back();
}

const Expr& at(const Expr& e, const std::vector<int>& path, std::size_t i = 0) {
  if (i == path.size()) return e;
  return at(path[i] == 0 ? e.lhs() : e.rhs(), path, i + 1);
}

Expr replace(const Expr& e, const std::vector<int>& path, const Expr& with, std::size_t i = 0) {
  if (i == path.size()) return with;
  Expr l = path[i] == 0 ? replace(e.lhs(), path, with, i + 1) : e.lhs();
  Expr r = path[i] == 1 ? replace(e.rhs(), path, with, i + 1) : e.rhs();
  return make(e.kind(), std::move(l), std::move(r));
}

}  // namespace

Expr random_rewrite(Rng& rng, const Alphabet& alphabet, const Expr& e, RewriteStep* step) {
  std::vector<std::vector<int>> all;
  std::vector<int> path;
  positions(e, path, all);
  // Prefer a rule that matches; B3/B6 right to left always do.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto& p = all[pick(rng, all.size())];
    Axiom a = kAllAxioms[pick(rng, std::size(kAllAxioms))];
    bool forward = pick(rng, 2) == 0;
    auto fresh = random_expr(rng, alphabet, 2);
    if (auto r = apply_axiom(a, forward, at(e, p), fresh)) {
      if (step) *step = {a, forward, p};
      return replace(e, p, *r);
    }
  }
  const auto& p = all[pick(rng, all.size())];
  if (step) *step = {Axiom::B6, false, p};
  return replace(e, p, Expr::sum(at(e, p), Expr::zero()));
}

}  // namespace starchart
