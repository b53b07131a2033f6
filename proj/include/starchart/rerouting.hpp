#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starchart/bisim.hpp"
#include "starchart/layering.hpp"
#include "starchart/prechart.hpp"

namespace starchart {

/// A subset U of X's states (by inclusion) together with a retraction
/// X -> U that is the identity on U.
struct Splitting {
  std::vector<StateId> inject;   // U -> X
  std::vector<StateId> retract;  // X -> U

  static Splitting identity(std::size_t n);
  /// Removes each `from` and sends it to the image of its `into` (a survivor).
  static Splitting merging(std::size_t n, const std::vector<std::pair<StateId, StateId>>& merges);

  bool valid(std::size_t n) const;
};

struct Rerouted {
  Prechart chart;
  Splitting splitting;
};

/// X[x2/x1]: drop x1, redirect every transition into x1 to x2.
Rerouted connect_through(const Prechart& x, StateId x1, StateId x2);

/// X[i,j]: states U, structure of i(u) pushed through j.
Prechart rerouting(const Prechart& x, const Splitting& s);

enum class Condition { None, C1, C2, C3 };
const char* condition_name(Condition c);

/// The first of C1, C2, C3 that (w1, w2) satisfies in the witness.
Condition check_condition(const LabelledPrechart& l, StateId w1, StateId w2);

struct PairChoice {
  StateId w1;
  StateId w2;
  Condition condition;
};

/// First R-related distinct pair satisfying a condition, scanning w1 then w2
/// in state order. None when R is the identity.
std::optional<PairChoice> find_pair(const LabelledPrechart& l, const Partition& r);

struct Relabelled {
  LabelledPrechart labelled;  // over connect_through(l.base(), w1, w2)
  Splitting splitting;
  bool fell_back = false;  // the case relabelling failed and a search was used
};

Relabelled relabel(const LabelledPrechart& l, StateId w1, StateId w2, Condition condition);

struct CollapseStep {
  std::string w1;
  std::string w2;
  Condition condition;
  bool fell_back;
};

struct Collapse {
  LabelledPrechart result;
  std::vector<StateId> projection;  // input state -> result state
  std::vector<CollapseStep> steps;
};

/// Merges bisimilar states one witness-preserving pair at a time until the
/// chart is bisimulation-minimal.
Collapse collapse(const LabelledPrechart& l);

/// Q = R ∩ (X × U), as pairs (x, u) with u a state of the rerouted chart.
Relation restrict_relation(const Partition& r, const Splitting& s);

}  // namespace starchart
