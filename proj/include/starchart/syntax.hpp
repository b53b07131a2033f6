#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace starchart {

using ActionId = std::uint32_t;
// Output sets and action masks are bit sets over alphabet indices.
using ActionSet = std::uint64_t;
inline constexpr std::size_t kMaxActions = 64;

bool is_action_name(std::string_view name);

/// An ordered finite set of action names. Order is declaration order and
/// drives every deterministic iteration over actions.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Comma-separated list as accepted by --alphabet.
  static Alphabet from_list(std::string_view csv);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(ActionId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<ActionId> find(std::string_view name) const;
  ActionId index(std::string_view name) const;  // throws InputError
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Union preserving this alphabet's order, new names appended in `other`'s order.
  Alphabet merged(const Alphabet& other) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ActionId> index_;
};

enum class ExprKind : std::uint8_t { Zero, Atom, Sum, Seq, Star };

/// A 1-free star expression: 0, a, e + f, ef, e*f (binary star).
///
/// Immutable shared tree. Equality is structural; the hash is computed once
/// at construction so expressions can key hash tables cheaply.
class Expr {
 public:
  Expr();  // Zero

  static Expr zero();
  static Expr atom(std::string action);
  static Expr sum(Expr lhs, Expr rhs);
  static Expr seq(Expr lhs, Expr rhs);
  static Expr star(Expr body, Expr exit);

  ExprKind kind() const noexcept;
  bool is_zero() const noexcept { return kind() == ExprKind::Zero; }
  const std::string& action() const;  // Atom only
  const Expr& lhs() const;            // Sum, Seq, Star (the iterated part)
  const Expr& rhs() const;            // Sum, Seq, Star (the exit part)
  std::size_t hash() const noexcept;
  std::size_t node_count() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;
  friend bool operator!=(const Expr& a, const Expr& b) noexcept { return !(a == b); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

/// Parses the concrete syntax. With an alphabet, atoms outside it are
/// rejected; without one any well-formed action name is accepted.
Expr parse(std::string_view text, const Alphabet* alphabet = nullptr);
Expr parse(std::string_view text, const Alphabet& alphabet);

/// Minimal-parenthesis rendering; parse(render(e)) == e.
std::string render(const Expr& e);

/// Right-nested generalized sum. [] -> 0, [e] -> e.
Expr gsum(const std::vector<Expr>& terms);

std::size_t star_height(const Expr& e);

/// Upper bound on the number of states of chart_of(e). Saturates at SIZE_MAX.
std::size_t size_bound(const Expr& e);

/// Atom names occurring in e, in order of first occurrence (left to right).
std::vector<std::string> atoms_of(const Expr& e);

}  // namespace starchart
