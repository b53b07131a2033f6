#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starchart/bisim.hpp"
#include "starchart/prechart.hpp"
#include "starchart/semantics.hpp"

namespace starchart {

/// A prechart whose transitions each carry an entry or body tag.
class LabelledPrechart {
 public:
  LabelledPrechart() = default;
  /// `tags` is aligned with base.transitions(); must be total.
  LabelledPrechart(Prechart base, std::vector<Tag> tags);
  static LabelledPrechart uniform(Prechart base, Tag tag);

  const Prechart& base() const noexcept { return base_; }
  const std::vector<Transition>& edges() const noexcept { return edges_; }
  const std::vector<Tag>& tags() const noexcept { return tags_; }
  Tag tag(const Transition& t) const;
  Tag tag(std::size_t edge) const { return tags_.at(edge); }
  std::size_t edge_index(const Transition& t) const;  // throws InputError

  friend bool operator==(const LabelledPrechart& a, const LabelledPrechart& b) {
    return a.base_ == b.base_ && a.tags_ == b.tags_;
  }

 private:
  Prechart base_;
  std::vector<Transition> edges_;
  std::vector<Tag> tags_;
};

/// Per-state adjacency of the underlying transition system, split by tag.
struct TaggedGraph {
  std::vector<std::vector<StateId>> entry;  // sorted
  std::vector<std::vector<StateId>> body;   // sorted
  explicit TaggedGraph(const LabelledPrechart& l);
};

struct DerivedRelations {
  Relation diredge;    // (x, y): x ↷ y
  Relation loopright;  // (y, x): y ↺ x
};

/// x ↷ y: x -e-> v1 -b-> ... -b-> y with x not among v1..y (zero body steps allowed).
/// y ↺ x: y lies on some x -e-> v1 -b-> ... -b-> x avoiding x in between.
DerivedRelations derived_relations(const LabelledPrechart& l);

enum class WitnessClause {
  None,
  LocallyFinite,  // 1
  Flat,           // 2
  BodyCycle,      // 3(a)
  EntryNoReturn,  // 3(b)
  Layered,        // 4
  GotoFree        // 5
};

const char* clause_name(WitnessClause c);

struct WitnessReport {
  bool ok = true;
  WitnessClause clause = WitnessClause::None;
  std::vector<StateId> states;  // states exhibiting the violation
  std::string detail;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks all conditions of a layering witness; reports the first violated.
WitnessReport verify_witness(const LabelledPrechart& l);

struct Measures {
  std::size_t entry_depth = 0;  // |x|_en: longest ↷-chain from x
  std::size_t body_depth = 0;   // |x|_b: longest body path from x
};

Measures measures(const LabelledPrechart& l, StateId x);
/// Measures of every state; the witness must be valid.
std::vector<Measures> all_measures(const LabelledPrechart& l);

/// Loop depth of a transition of an expression chart under its labelling.
std::size_t loop_depth(const ExpressionChart& chart, const LabelledPrechart& l, const Transition& t);

struct WeightedLabelling {
  Prechart base;
  std::vector<Transition> edges;       // base.transitions()
  std::vector<std::uint32_t> weights;  // aligned with edges
};

/// Entry transitions from x get weight |x|_en, body transitions weight 0.
WeightedLabelling to_llee(const LabelledPrechart& l);
/// Weight n > 0 with a return path becomes entry, everything else body.
LabelledPrechart from_llee(const WeightedLabelling& w);

/// The labelling given by the derivation rules over expression states.
LabelledPrechart syntactic_witness(const ExpressionChart& chart);

/// Some layering witness of X, or none when X is not well-layered.
std::optional<LabelledPrechart> infer_witness(const Prechart& x);

/// All layering witnesses of X (up to `limit`), in a deterministic order.
std::vector<LabelledPrechart> enumerate_witnesses(const Prechart& x, std::size_t limit = SIZE_MAX);

/// Restriction of a labelling to a subcoalgebra given by its inclusion.
LabelledPrechart restrict_witness(const LabelledPrechart& l, const Embedded& sub);

/// Disjoint union of two labellings over coproduct(l.base(), r.base()).
LabelledPrechart witness_coproduct(const LabelledPrechart& l, const LabelledPrechart& r);

}  // namespace starchart
