#pragma once

#include <optional>
#include <vector>

#include "starchart/bisim.hpp"
#include "starchart/prechart.hpp"
#include "starchart/syntax.hpp"

namespace starchart {

/// One derivable transition e --action--> target. `tag` is the entry/body
/// tag the syntactic layering witness assigns to the derivation.
struct Move {
  ActionId action;
  Expr target;
  Tag tag;
};

struct ExprStep {
  ActionSet outputs = 0;
  /// Ordered by action, then by rule order; no duplicate (action, target).
  std::vector<Move> moves;

  std::vector<Expr> successors(ActionId a) const;
};

/// Outputs and transitions of `e` under the operational rules.
/// Every atom of `e` must belong to `alphabet`.
ExprStep expr_step(const Expr& e, const Alphabet& alphabet);

/// Whether some g with e ->* g and g => exists.
bool can_terminate(const Expr& e);

/// A prechart whose states are expressions.
struct ExpressionChart {
  Prechart chart;
  std::vector<Expr> exprs;  // exprs[x] is the expression of state x

  std::optional<StateId> find(const Expr& e) const;
};

/// The generated chart <e>: breadth-first closure from e, rooted at e.
ExpressionChart chart_of(const Expr& e, const Alphabet& alphabet);
/// Same, over the sorted atoms of e.
ExpressionChart chart_of(const Expr& e);
/// Closure of several expressions, in order; no root.
ExpressionChart chart_of_all(const std::vector<Expr>& roots, const Alphabet& alphabet);

/// The alphabet of sorted atom names of the given expressions.
Alphabet alphabet_of(const std::vector<Expr>& exprs);

struct Coproduct {
  Prechart chart;
  std::vector<StateId> left;   // injection of the first summand
  std::vector<StateId> right;  // injection of the second summand
};

/// Disjoint union. State names are prefixed "1/" and "2/". No root.
Coproduct coproduct(const Prechart& x, const Prechart& y);

struct Embedded {
  Prechart chart;
  std::vector<StateId> inclusion;  // new state -> original state
};

/// Smallest subcoalgebra containing x, rooted at x.
Embedded generated(const Prechart& x, StateId state);

struct Quotient {
  Prechart chart;
  std::vector<StateId> projection;  // original state -> block state
};

/// X/R. R must be a bisimulation equivalence on X (checked).
Quotient quotient(const Prechart& x, const Partition& r);

struct HomViolation {
  enum class Clause { Output, Forth, Back } clause;
  StateId state;                  // x in the source
  ActionId action;
  std::optional<StateId> target;  // y' (target side) for Forth/Back
};

struct HomCheck {
  bool ok = true;
  std::optional<HomViolation> violation;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks: x => a iff h(x) => a; h(x) -a-> y' iff some x -a-> x' with h(x') = y'.
HomCheck is_homomorphism(const std::vector<StateId>& h, const Prechart& x, const Prechart& y);

}  // namespace starchart
