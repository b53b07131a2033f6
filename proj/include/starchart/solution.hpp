#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "starchart/layering.hpp"
#include "starchart/prechart.hpp"
#include "starchart/syntax.hpp"

namespace starchart {

/// gsum(outputs) + gsum(a f over transitions), both halves always present.
Expr unfold(const Expr& e, const Alphabet& alphabet);
Expr unfold(const Expr& e);

struct Solution {
  Prechart chart;
  std::vector<Expr> assign;                               // state -> expression
  std::map<std::pair<StateId, StateId>, Expr> companion;  // (x, anchor) -> t(x, anchor)
};

/// The canonical solution read off a layering witness:
///   s(x) = (loops of x + a t(y,x) over entries)*(outputs of x + a s(y) over body steps)
/// with the companion t(x,z) defined alike, except body steps recurse as t(y,z)
/// and a body step back to the anchor z contributes just its action.
Solution canonical_solution(const LabelledPrechart& l);

struct SolutionCheck {
  bool ok = true;
  std::optional<StateId> failing;
  explicit operator bool() const noexcept { return ok; }
};

/// The right-hand side of x's equation under assignment s.
Expr equation_rhs(const Prechart& x, const std::vector<Expr>& s, StateId state);

/// Checks every equation s(x) ~ rhs(x) by bisimilarity.
SolutionCheck verify_solution(const Prechart& x, const std::vector<Expr>& s);
SolutionCheck verify_solution(const Solution& s);

/// Cosmetic unit cleanups only: e + 0 -> e and 0e -> 0, bottom-up.
Expr simplify(const Expr& e);

}  // namespace starchart
