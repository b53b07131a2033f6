#include "starchart/rerouting.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "starchart/error.hpp"

namespace starchart {

Splitting Splitting::identity(std::size_t n) {
  Splitting s;
  s.inject.resize(n);
  std::iota(s.inject.begin(), s.inject.end(), 0);
  s.retract = s.inject;
  return s;
}

Splitting Splitting::merging(std::size_t n, const std::vector<std::pair<StateId, StateId>>& merges) {
  std::vector<std::optional<StateId>> into(n);
  for (auto [from, to] : merges) {
    if (from >= n || to >= n) throw InputError("merge references unknown state");
    if (from == to) throw InputError("cannot merge a state into itself");
    into[from] = to;
  }
  Splitting s;
  s.retract.assign(n, 0);
  std::vector<StateId> local(n, 0);
  for (StateId x = 0; x < n; ++x)
    if (!into[x]) {
      local[x] = static_cast<StateId>(s.inject.size());
      s.inject.push_back(x);
    }
  for (StateId x = 0; x < n; ++x) {
    StateId target = into[x] ? *into[x] : x;
    if (into[target]) throw InputError("merge target is itself merged away");
    s.retract[x] = local[target];
  }
  return s;
}

bool Splitting::valid(std::size_t n) const {
  if (retract.size() != n) return false;
  for (std::size_t u = 0; u < inject.size(); ++u)
    if (inject[u] >= n || retract[inject[u]] != u) return false;
  return std::all_of(retract.begin(), retract.end(), [&](StateId u) { return u < inject.size(); });
}

Rerouted connect_through(const Prechart& x, StateId x1, StateId x2) {
  if (x1 >= x.size() || x2 >= x.size()) throw InputError("unknown state");
  if (x1 == x2) throw InputError("connect-through needs two distinct states");
  Rerouted out{Prechart(x.alphabet()), Splitting::merging(x.size(), {{x1, x2}})};
  const auto& local = out.splitting.retract;
  for (StateId s = 0; s < x.size(); ++s)
    if (s != x1) out.chart.add_state(x.name(s), x.outputs(s));
  for (StateId s = 0; s < x.size(); ++s) {
    if (s == x1) continue;
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      for (StateId t : x.successors(s, a)) out.chart.add_transition(local[s], a, local[t == x1 ? x2 : t]);
  }
  if (auto r = x.root()) out.chart.set_root(local[*r == x1 ? x2 : *r]);
  return out;
}

Prechart rerouting(const Prechart& x, const Splitting& s) {
  if (!s.valid(x.size())) throw PreconditionError("not a splitting: retract after inject is not the identity");
  Prechart out(x.alphabet());
  for (StateId i : s.inject) out.add_state(x.name(i), x.outputs(i));
  for (StateId u = 0; u < s.inject.size(); ++u)
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      for (StateId t : x.successors(s.inject[u], a)) out.add_transition(u, a, s.retract[t]);
  if (auto r = x.root()) out.set_root(s.retract[*r]);
  return out;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::None: return "none";
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3: return "C3";
  }
  return "?";
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

Matrix closure(Matrix m, bool reflexive) {
  const auto n = m.size();
  if (reflexive)
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

// Relations every condition is evaluated over.
struct ConditionContext {
  std::size_t n;
  Matrix reach;       // ->*
  Matrix body_reach;  // ->b*
  Matrix loop;        // loop[y][x]: y ↺ x
  Matrix loop_plus;   // ↺+
  Matrix loop_star;   // ↺*
  std::vector<bool> has_down_in;  // some x with x ↷ w
  std::vector<bool> reaches_output;

  explicit ConditionContext(const LabelledPrechart& l) : n(l.base().size()) {
    if (auto r = verify_witness(l); !r.ok)
      throw PreconditionError(std::string("invalid layering witness: clause ") + clause_name(r.clause));
    const auto& x = l.base();
    Matrix step(n, std::vector<bool>(n)), body(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < l.edges().size(); ++i) {
      const auto& t = l.edges()[i];
      step[t.from][t.to] = true;
      if (l.tag(i) == Tag::Body) body[t.from][t.to] = true;
    }
    reach = closure(step, true);
    body_reach = closure(body, true);
    auto rel = derived_relations(l);
    loop.assign(n, std::vector<bool>(n));
    for (auto [y, xx] : rel.loopright) loop[y][xx] = true;
    loop_plus = closure(loop, false);
    loop_star = closure(loop, true);
    has_down_in.assign(n, false);
    for (auto [from, to] : rel.diredge) has_down_in[to] = true;
    reaches_output.assign(n, false);
    for (StateId s = 0; s < n; ++s)
      for (StateId y = 0; y < n; ++y)
        if (reach[s][y] && x.has_output(y)) reaches_output[s] = true;
  }

  bool c1(StateId w1, StateId w2) const {
    return !reach[w2][w1] && (!has_down_in[w1] || !reaches_output[w2]);
  }

  bool c2(StateId w1, StateId w2) const { return loop_plus[w2][w1]; }

  bool c3(StateId w1, StateId w2) const {
    if (body_reach[w2][w1]) return false;
    for (StateId x = 0; x < n; ++x) {
      if (!loop[w1][x] || !loop_plus[w2][x]) continue;
      bool dominated = true;
      for (StateId y = 0; y < n && dominated; ++y)
        if (y != x && loop[w1][y] && !loop[x][y]) dominated = false;
      if (dominated) return true;
    }
    return false;
  }

  Condition check(StateId w1, StateId w2) const {
    if (c1(w1, w2)) return Condition::C1;
    if (c2(w1, w2)) return Condition::C2;
    if (c3(w1, w2)) return Condition::C3;
    return Condition::None;
  }
};

}  // namespace

Condition check_condition(const LabelledPrechart& l, StateId w1, StateId w2) {
  if (w1 >= l.base().size() || w2 >= l.base().size()) throw InputError("unknown state");
  if (w1 == w2) throw PreconditionError("condition check needs two distinct states");
  return ConditionContext(l).check(w1, w2);
}

std::optional<PairChoice> find_pair(const LabelledPrechart& l, const Partition& r) {
  if (r.universe() != l.base().size()) throw PreconditionError("relation universe does not match the chart");
  if (r.is_identity()) return std::nullopt;
  ConditionContext ctx(l);
  const auto n = static_cast<StateId>(l.base().size());
  for (StateId w1 = 0; w1 < n; ++w1)
    for (StateId w2 : r.block(r.block_of(w1))) {
      if (w2 == w1) continue;
      if (auto c = ctx.check(w1, w2); c != Condition::None) return PairChoice{w1, w2, c};
    }
  throw InternalError("no (C1)-(C3) pair in a nontrivial bisimulation equivalence");
}

Relabelled relabel(const LabelledPrechart& l, StateId w1, StateId w2, Condition condition) {
  if (condition == Condition::None) throw PreconditionError("relabel needs a satisfied condition");
  ConditionContext ctx(l);
  if (ctx.check(w1, w2) != condition)
    throw PreconditionError(std::string("pair does not satisfy ") + condition_name(condition));

  auto rer = connect_through(l.base(), w1, w2);
  const auto& y = rer.chart;
  const auto& retract = rer.splitting.retract;

  // Tags of the rerouted labelling; a transition may inherit both tags.
  std::vector<std::set<Tag>> tags(y.transition_count());
  Relabelled out{LabelledPrechart::uniform(y, Tag::Body), rer.splitting, false};
  const auto& new_edges = out.labelled.edges();
  auto index_of = [&](const Transition& t) {
    return static_cast<std::size_t>(std::lower_bound(new_edges.begin(), new_edges.end(), t) - new_edges.begin());
  };
  for (std::size_t i = 0; i < l.edges().size(); ++i) {
    const auto& t = l.edges()[i];
    if (t.from == w1) continue;
    StateId to = t.to == w1 ? w2 : t.to;
    tags[index_of({retract[t.from], t.action, retract[to]})].insert(l.tag(i));
  }

  if (condition == Condition::C2) {
    std::optional<StateId> head;
    for (StateId v = 0; v < ctx.n && !head; ++v) {
      if (v == w1 || !ctx.loop_star[w2][v] || !ctx.loop[v][w1]) continue;
      bool dominated = true;
      for (StateId u = 0; u < ctx.n && dominated; ++u)
        if (u != w1 && ctx.loop[v][u] && !ctx.loop[w1][u]) dominated = false;
      if (dominated) head = v;
    }
    if (!head) throw InternalError("no new loop head for a C2 pair");
    StateId h = retract[*head];
    for (std::size_t i = 0; i < new_edges.size(); ++i)
      if (new_edges[i].from == h && tags[i].erase(Tag::Body)) tags[i].insert(Tag::Entry);
  }

  // Demote entries without a path back.
  std::vector<std::vector<bool>> reach(y.size(), std::vector<bool>(y.size()));
  for (StateId s = 0; s < y.size(); ++s) {
    std::vector<StateId> stack = y.targets(s);
    while (!stack.empty()) {
      StateId v = stack.back();
      stack.pop_back();
      if (reach[s][v]) continue;
      reach[s][v] = true;
      for (StateId w : y.targets(v)) stack.push_back(w);
    }
  }
  std::set<std::pair<StateId, StateId>> entry_pairs;
  for (std::size_t i = 0; i < new_edges.size(); ++i) {
    const auto& t = new_edges[i];
    if (tags[i].count(Tag::Entry) && reach[t.to][t.from]) entry_pairs.emplace(t.from, t.to);
  }
  std::vector<Tag> final_tags;
  for (const auto& t : new_edges) final_tags.push_back(entry_pairs.count({t.from, t.to}) ? Tag::Entry : Tag::Body);
  out.labelled = LabelledPrechart(y, std::move(final_tags));

  if (!verify_witness(out.labelled).ok) {
    auto inferred = infer_witness(y);
    if (!inferred) throw InternalError("rerouted chart has no layering witness");
    out.labelled = std::move(*inferred);
    out.fell_back = true;
  }
  return out;
}

Collapse collapse(const LabelledPrechart& l) {
  if (auto r = verify_witness(l); !r.ok)
    throw PreconditionError(std::string("invalid layering witness: clause ") + clause_name(r.clause));
  const auto initial = bisimilarity(l.base());
  Collapse out{l, std::vector<StateId>(l.base().size()), {}};
  std::iota(out.projection.begin(), out.projection.end(), 0);
  for (;;) {
    auto r = bisimilarity(out.result.base());
    if (r.is_identity()) break;
    auto pair = find_pair(out.result, r);
    const auto& names = out.result.base();
    out.steps.push_back({names.name(pair->w1), names.name(pair->w2), pair->condition, false});
    auto next = relabel(out.result, pair->w1, pair->w2, pair->condition);
    out.steps.back().fell_back = next.fell_back;
    for (auto& p : out.projection) p = next.splitting.retract[p];
    out.result = std::move(next.labelled);
  }
  if (!verify_witness(out.result).ok) throw InternalError("collapse lost the layering witness");
  if (!(kernel(out.projection) == initial)) throw InternalError("collapse kernel differs from bisimilarity");
  if (!is_homomorphism(out.projection, l.base(), out.result.base()).ok)
    throw InternalError("collapse projection is not a homomorphism");
  return out;
}

Relation restrict_relation(const Partition& r, const Splitting& s) {
  const auto n = r.universe();
  if (!s.valid(n)) throw PreconditionError("not a splitting");
  for (StateId x = 0; x < n; ++x)
    if (!r.related(x, s.inject[s.retract[x]]))
      throw PreconditionError("kernel of the retraction is not inside the relation");
  Relation q;
  for (StateId x = 0; x < n; ++x)
    for (StateId u = 0; u < s.inject.size(); ++u)
      if (r.related(x, s.inject[u])) q.emplace_back(x, u);
  return q;
}

}  // namespace starchart
