#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starchart/bisim.hpp"
#include "starchart/layering.hpp"
#include "starchart/syntax.hpp"

namespace starchart {

enum class Verdict { Equivalent, Inequivalent };

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Evidence that two expressions are (in)equivalent, checkable on its own.
///
/// States of the combined chart are those of coproduct(<e>, <f>); `projection`
/// maps them onto the collapsed chart.
struct Certificate {
  Verdict verdict = Verdict::Inequivalent;
  Expr e;
  Expr f;
  Alphabet alphabet;
  std::optional<LabelledPrechart> collapsed;
  std::vector<StateId> projection;
  std::optional<StateId> merged_root;
  std::optional<Expr> common;
  std::optional<BisimViolation> distinction;  // over the combined chart
  std::vector<NamedCheck> checks;

  bool all_passed() const;
};

/// Decides e ≡ f semantically and records every verification performed.
Certificate certify(const Expr& e, const Expr& f);

/// Re-runs every check from the certificate's own data.
std::vector<NamedCheck> recheck(const Certificate& c);

}  // namespace starchart
