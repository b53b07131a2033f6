#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "starchart/syntax.hpp"

namespace starchart {

using StateId = std::uint32_t;

/// Entry/body tag of a transition in an entry/body labelling.
enum class Tag : std::uint8_t { Entry, Body };

struct Transition {
  StateId from;
  ActionId action;
  StateId to;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite prechart: per-state output set and per-action successor sets,
/// with an optional root. States are numbered 0..size()-1 in insertion order;
/// that order is the discovery order used for every tie-break.
class Prechart {
 public:
  Prechart() = default;
  explicit Prechart(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name, ActionSet outputs = 0);
  void add_output(StateId x, ActionId a);
  void add_transition(StateId from, ActionId a, StateId to);
  void set_root(std::optional<StateId> root);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(StateId x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<StateId> find(std::string_view name) const;
  StateId index(std::string_view name) const;  // throws InputError

  ActionSet outputs(StateId x) const { return outputs_.at(x); }
  bool has_output(StateId x) const { return outputs_.at(x) != 0; }
  bool has_output(StateId x, ActionId a) const { return (outputs_.at(x) >> a) & 1U; }
  /// Sorted, duplicate-free.
  const std::vector<StateId>& successors(StateId x, ActionId a) const { return succ_.at(x).at(a); }
  /// Successors over all actions (the underlying transition system), sorted.
  std::vector<StateId> targets(StateId x) const;
  std::optional<StateId> root() const noexcept { return root_; }

  /// All transitions ordered by (from, action, to).
  std::vector<Transition> transitions() const;
  std::size_t transition_count() const;
  bool has_transition(StateId from, ActionId a, StateId to) const;

  /// True when a root is set and every state is reachable from it.
  bool is_chart() const;

  friend bool operator==(const Prechart&, const Prechart&) = default;

 private:
  void check_state(StateId x) const;

  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> by_name_;
  std::vector<ActionSet> outputs_;
  std::vector<std::vector<std::vector<StateId>>> succ_;
  std::optional<StateId> root_;
};

/// States reachable from `from` in the underlying transition system
/// (including `from`), as a membership vector.
std::vector<bool> reachable_from(const Prechart& x, StateId from);

}  // namespace starchart
