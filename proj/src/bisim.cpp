#include "starchart/bisim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "starchart/error.hpp"
#include "starchart/semantics.hpp"

namespace starchart {

Partition Partition::identity(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

Partition Partition::total(std::size_t n) { return from_labels(std::vector<std::size_t>(n, 0)); }

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
  Partition p;
  p.block_of_.resize(labels.size());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, fresh] = renumber.emplace(labels[x], p.blocks_.size());
    if (fresh) p.blocks_.emplace_back();
    p.block_of_[x] = it->second;
    p.blocks_[it->second].push_back(static_cast<StateId>(x));
  }
  return p;
}

Partition Partition::closure(std::size_t n, const Relation& pairs) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw InputError("relation pair out of range");
    auto rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = find(v);
  return from_labels(labels);
}

Relation Partition::pairs() const {
  Relation out;
  for (std::size_t x = 0; x < block_of_.size(); ++x)
    for (StateId y : blocks_[block_of_[x]]) out.emplace_back(static_cast<StateId>(x), y);
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.universe() != universe()) return false;
  for (const auto& b : blocks_)
    for (StateId x : b)
      if (!coarser.related(b.front(), x)) return false;
  return true;
}

Partition kernel(const std::vector<StateId>& map) {
  return Partition::from_labels(std::vector<std::size_t>(map.begin(), map.end()));
}

namespace {

std::uint64_t key(StateId x, StateId y) { return (std::uint64_t{x} << 32) | y; }

}  // namespace

BisimCheck check_bisimulation(const Prechart& x, const Prechart& y, const Relation& r) {
  if (!(x.alphabet() == y.alphabet())) throw InputError("bisimulation check across alphabets");
  std::unordered_set<std::uint64_t> in_r;
  for (auto [s, t] : r) {
    if (s >= x.size() || t >= y.size()) throw InputError("relation references unknown states");
    in_r.insert(key(s, t));
  }
  const auto n_actions = x.alphabet().size();
  for (auto [s, t] : r) {
    if (x.outputs(s) != y.outputs(t)) {
      auto diff = x.outputs(s) ^ y.outputs(t);
      ActionId a = 0;
      while (!((diff >> a) & 1U)) ++a;
      return {false, BisimViolation{BisimViolation::Clause::Output, s, t, a, std::nullopt}};
    }
    for (ActionId a = 0; a < n_actions; ++a) {
      const auto& ys = y.successors(t, a);
      for (StateId s2 : x.successors(s, a)) {
        bool matched = std::any_of(ys.begin(), ys.end(),
                                   [&](StateId t2) { return in_r.count(key(s2, t2)) > 0; });
        if (!matched) return {false, BisimViolation{BisimViolation::Clause::Forth, s, t, a, s2}};
      }
      const auto& xs = x.successors(s, a);
      for (StateId t2 : ys) {
        bool matched = std::any_of(xs.begin(), xs.end(),
                                   [&](StateId s2) { return in_r.count(key(s2, t2)) > 0; });
        if (!matched) return {false, BisimViolation{BisimViolation::Clause::Back, s, t, a, t2}};
      }
    }
  }
  return {};
}

Partition bisimilarity(const Prechart& x) {
  const auto n = x.size();
  const auto n_actions = x.alphabet().size();
  std::vector<std::size_t> label(n);
  for (StateId s = 0; s < n; ++s) label[s] = static_cast<std::size_t>(x.outputs(s));
  auto current = Partition::from_labels(label);
  for (;;) {
    // signature: own block, then per action the sorted set of successor blocks
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{current.block_of(s)};
      for (ActionId a = 0; a < n_actions; ++a) {
        std::vector<std::size_t> blocks;
        for (StateId t : x.successors(s, a)) blocks.push_back(current.block_of(t));
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
        sig.push_back(blocks.size());
        sig.insert(sig.end(), blocks.begin(), blocks.end());
      }
      next[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    auto refined = Partition::from_labels(next);
    if (refined.block_count() == current.block_count()) return refined;
    current = std::move(refined);
  }
}

std::optional<BisimViolation> distinguish(const Prechart& x, const Partition& bisim, StateId s,
                                          StateId t) {
  if (bisim.related(s, t)) return std::nullopt;
  Relation rel = bisim.pairs();
  rel.emplace_back(s, t);
  auto check = check_bisimulation(x, x, rel);
  if (check.ok || check.violation->left != s || check.violation->right != t)
    throw InternalError("bisimilarity is not the greatest bisimulation");
  return check.violation;
}

bool bisimilar(const Expr& e, const Expr& f, const Alphabet& alphabet) {
  if (e == f) return true;
  auto both = chart_of_all({e, f}, alphabet);
  auto r = bisimilarity(both.chart);
  return r.related(*both.find(e), *both.find(f));
}

bool bisimilar(const Expr& e, const Expr& f) { return bisimilar(e, f, alphabet_of({e, f})); }

}  // namespace starchart
