#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "starchart/syntax.hpp"

namespace starchart {

using Rng = std::mt19937_64;

/// Random expression of depth at most `max_depth` over the alphabet.
Expr random_expr(Rng& rng, const Alphabet& alphabet, std::size_t max_depth);

/// Every expression with at most `max_nodes` nodes, smallest first.
std::vector<Expr> enumerate_exprs(const Alphabet& alphabet, std::size_t max_nodes);

enum class Axiom { B1, B2, B3, B4, B5, B6, B7, BKS1, BKS2 };
inline constexpr Axiom kAllAxioms[] = {Axiom::B1, Axiom::B2, Axiom::B3,   Axiom::B4,  Axiom::B5,
                                       Axiom::B6, Axiom::B7, Axiom::BKS1, Axiom::BKS2};
const char* axiom_name(Axiom a);

/// lhs ≡ rhs of an axiom with its metavariables bound to e1, e2, e3.
std::pair<Expr, Expr> axiom_instance(Axiom a, const Expr& e1, const Expr& e2, const Expr& e3);

/// Rewrites at `e`'s top level by the axiom, left to right or right to left.
/// Empty when the side being rewritten does not match. `fresh` supplies the
/// subterm introduced by B7 read right to left.
std::optional<Expr> apply_axiom(Axiom a, bool forward, const Expr& e, const Expr& fresh);

struct RewriteStep {
  Axiom axiom;
  bool forward;
  std::vector<int> path;  // 0 = lhs, 1 = rhs, from the root
};

/// One random axiom application at a random subterm. Always succeeds since
/// B3 and B6 read right to left match every expression.
Expr random_rewrite(Rng& rng, const Alphabet& alphabet, const Expr& e, RewriteStep* step = nullptr);

}  // namespace starchart
