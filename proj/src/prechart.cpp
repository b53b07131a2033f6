#include "starchart/prechart.hpp"

#include <algorithm>
#include <deque>

#include "starchart/error.hpp"

namespace starchart {

StateId Prechart::add_state(std::string name, ActionSet outputs) {
  if (alphabet_.size() < kMaxActions && (outputs >> alphabet_.size()) != 0)
    throw InputError("output set of '" + name + "' uses actions outside the alphabet");
  auto id = static_cast<StateId>(names_.size());
  if (!by_name_.emplace(name, id).second) throw InputError("duplicate state '" + name + "'");
  names_.push_back(std::move(name));
  outputs_.push_back(outputs);
  succ_.emplace_back(alphabet_.size());
  return id;
}

void Prechart::check_state(StateId x) const {
  if (x >= names_.size()) throw InputError("state index " + std::to_string(x) + " out of range");
}

void Prechart::add_output(StateId x, ActionId a) {
  check_state(x);
  if (a >= alphabet_.size()) throw InputError("action index out of range");
  outputs_[x] |= ActionSet{1} << a;
}

void Prechart::add_transition(StateId from, ActionId a, StateId to) {
  check_state(from);
  check_state(to);
  if (a >= alphabet_.size()) throw InputError("action index out of range");
  auto& row = succ_[from][a];
  auto it = std::lower_bound(row.begin(), row.end(), to);
  if (it == row.end() || *it != to) row.insert(it, to);
}

void Prechart::set_root(std::optional<StateId> root) {
  if (root) check_state(*root);
  root_ = root;
}

std::optional<StateId> Prechart::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

StateId Prechart::index(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw InputError("unknown state '" + std::string(name) + "'");
}

std::vector<StateId> Prechart::targets(StateId x) const {
  std::vector<StateId> out;
  for (const auto& row : succ_.at(x)) out.insert(out.end(), row.begin(), row.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Transition> Prechart::transitions() const {
  std::vector<Transition> out;
  for (StateId x = 0; x < size(); ++x)
    for (ActionId a = 0; a < alphabet_.size(); ++a)
      for (StateId y : succ_[x][a]) out.push_back({x, a, y});
  return out;
}

std::size_t Prechart::transition_count() const {
  std::size_t n = 0;
  for (const auto& rows : succ_)
    for (const auto& row : rows) n += row.size();
  return n;
}

bool Prechart::has_transition(StateId from, ActionId a, StateId to) const {
  const auto& row = successors(from, a);
  return std::binary_search(row.begin(), row.end(), to);
}

bool Prechart::is_chart() const {
  if (!root_) return false;
  auto seen = reachable_from(*this, *root_);
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<bool> reachable_from(const Prechart& x, StateId from) {
  std::vector<bool> seen(x.size(), false);
  std::deque<StateId> queue{from};
  seen.at(from) = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      for (StateId t : x.successors(s, a))
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
  }
  return seen;
}

}  // namespace starchart
