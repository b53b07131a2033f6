#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "starchart/prechart.hpp"
#include "starchart/syntax.hpp"

namespace starchart {

using Relation = std::vector<std::pair<StateId, StateId>>;

/// An equivalence relation on {0..n-1} stored as a partition. Blocks are
/// numbered by their least member, so two equal relations compare equal.
class Partition {
 public:
  Partition() = default;
  static Partition identity(std::size_t n);
  static Partition total(std::size_t n);
  /// Groups states with equal labels.
  static Partition from_labels(const std::vector<std::size_t>& labels);
  /// Equivalence closure of the given pairs.
  static Partition closure(std::size_t n, const Relation& pairs);

  std::size_t universe() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t block_of(StateId x) const { return block_of_.at(x); }
  const std::vector<StateId>& block(std::size_t b) const { return blocks_.at(b); }
  const std::vector<std::vector<StateId>>& blocks() const noexcept { return blocks_; }
  bool related(StateId x, StateId y) const { return block_of_.at(x) == block_of_.at(y); }
  bool is_identity() const noexcept { return blocks_.size() == block_of_.size(); }
  /// Every pair (x, y) with x related to y, including x = y.
  Relation pairs() const;
  /// True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.block_of_ == b.block_of_;
  }

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<StateId>> blocks_;
};

/// Kernel of a map given as a vector.
Partition kernel(const std::vector<StateId>& map);

struct BisimViolation {
  enum class Clause { Output, Forth, Back } clause;
  StateId left;
  StateId right;
  ActionId action = 0;
  /// For Forth: the unmatched successor of `left`; for Back: of `right`.
  std::optional<StateId> successor;
};

struct BisimCheck {
  bool ok = true;
  std::optional<BisimViolation> violation;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks the three bisimulation clauses for every pair of R ⊆ X × Y.
BisimCheck check_bisimulation(const Prechart& x, const Prechart& y, const Relation& r);

/// Largest bisimulation equivalence on X (signature partition refinement).
Partition bisimilarity(const Prechart& x);

/// For states not related by `bisim` (the bisimilarity of X), a clause that
/// fails for the pair relative to `bisim`. Empty when they are related.
std::optional<BisimViolation> distinguish(const Prechart& x, const Partition& bisim, StateId s,
                                          StateId t);

bool bisimilar(const Expr& e, const Expr& f);
bool bisimilar(const Expr& e, const Expr& f, const Alphabet& alphabet);

}  // namespace starchart
