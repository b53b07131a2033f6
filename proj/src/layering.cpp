#include "starchart/layering.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "starchart/error.hpp"

namespace starchart {

LabelledPrechart::LabelledPrechart(Prechart base, std::vector<Tag> tags)
    : base_(std::move(base)), edges_(base_.transitions()), tags_(std::move(tags)) {
  if (tags_.size() != edges_.size())
    throw InputError("labelling is not total: " + std::to_string(tags_.size()) + " tags for " +
                     std::to_string(edges_.size()) + " transitions");
}

LabelledPrechart LabelledPrechart::uniform(Prechart base, Tag tag) {
  auto n = base.transition_count();
  return LabelledPrechart(std::move(base), std::vector<Tag>(n, tag));
}

std::size_t LabelledPrechart::edge_index(const Transition& t) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), t);
  if (it == edges_.end() || *it != t) throw InputError("no such transition");
  return static_cast<std::size_t>(it - edges_.begin());
}

Tag LabelledPrechart::tag(const Transition& t) const { return tags_[edge_index(t)]; }

TaggedGraph::TaggedGraph(const LabelledPrechart& l)
    : entry(l.base().size()), body(l.base().size()) {
  for (std::size_t i = 0; i < l.edges().size(); ++i) {
    const auto& t = l.edges()[i];
    (l.tag(i) == Tag::Entry ? entry : body)[t.from].push_back(t.to);
  }
  for (auto* adj : {&entry, &body})
    for (auto& row : *adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
}

namespace {

using Adjacency = std::vector<std::vector<StateId>>;

// States y with x ↷ y.
std::vector<StateId> down_set(const Adjacency& entry, const Adjacency& body, StateId x) {
  std::vector<bool> seen(entry.size(), false);
  std::vector<StateId> stack, out;
  for (StateId y : entry[x])
    if (y != x) stack.push_back(y);
  while (!stack.empty()) {
    StateId v = stack.back();
    stack.pop_back();
    if (v == x || seen[v]) continue;
    seen[v] = true;
    out.push_back(v);
    for (StateId w : body[v]) stack.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// States that reach x by a nonempty body path not passing through x.
std::vector<bool> body_back_set(const Adjacency& body_rev, StateId x) {
  std::vector<bool> seen(body_rev.size(), false);
  std::vector<StateId> stack(body_rev[x].begin(), body_rev[x].end());
  while (!stack.empty()) {
    StateId v = stack.back();
    stack.pop_back();
    if (v == x || seen[v]) continue;
    seen[v] = true;
    for (StateId w : body_rev[v]) stack.push_back(w);
  }
  return seen;
}

Adjacency reverse(const Adjacency& adj) {
  Adjacency rev(adj.size());
  for (StateId v = 0; v < adj.size(); ++v)
    for (StateId w : adj[v]) rev[w].push_back(v);
  return rev;
}

// Some cycle of the graph as a state list, or empty when acyclic.
std::vector<StateId> find_cycle(const Adjacency& adj) {
  const auto n = adj.size();
  std::vector<int> color(n, 0);
  std::vector<StateId> parent(n, 0);
  for (StateId root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i == adj[v].size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      StateId w = adj[v][i++];
      if (color[w] == 1) {
        std::vector<StateId> cycle{w};
        for (auto it = stack.rbegin(); it != stack.rend() && it->first != w; ++it)
          cycle.push_back(it->first);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return {};
}

// Longest path length from each vertex of a DAG.
std::vector<std::size_t> longest_paths(const Adjacency& dag) {
  const auto n = dag.size();
  std::vector<std::size_t> depth(n, 0);
  std::vector<int> state(n, 0);
  std::function<void(StateId)> visit = [&](StateId v) {
    state[v] = 1;
    for (StateId w : dag[v]) {
      if (state[w] == 1) throw PreconditionError("graph has a cycle");
      if (state[w] == 0) visit(w);
      depth[v] = std::max(depth[v], depth[w] + 1);
    }
    state[v] = 2;
  };
  for (StateId v = 0; v < n; ++v)
    if (!state[v]) visit(v);
  return depth;
}

std::vector<std::vector<bool>> strict_reach(const Prechart& x) {
  std::vector<std::vector<bool>> reach(x.size());
  for (StateId s = 0; s < x.size(); ++s) {
    std::vector<bool> seen(x.size(), false);
    std::vector<StateId> stack = x.targets(s);
    while (!stack.empty()) {
      StateId v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = true;
      for (StateId w : x.targets(v)) stack.push_back(w);
    }
    reach[s] = std::move(seen);
  }
  return reach;
}

}  // namespace

DerivedRelations derived_relations(const LabelledPrechart& l) {
  TaggedGraph g(l);
  auto rev = reverse(g.body);
  DerivedRelations out;
  for (StateId x = 0; x < l.base().size(); ++x) {
    auto down = down_set(g.entry, g.body, x);
    auto back = body_back_set(rev, x);
    for (StateId y : down) {
      out.diredge.emplace_back(x, y);
      if (back[y]) out.loopright.emplace_back(y, x);
    }
  }
  std::sort(out.loopright.begin(), out.loopright.end());
  return out;
}

const char* clause_name(WitnessClause c) {
  switch (c) {
    case WitnessClause::None: return "none";
    case WitnessClause::LocallyFinite: return "1 (locally finite)";
    case WitnessClause::Flat: return "2 (flat)";
    case WitnessClause::BodyCycle: return "3(a) (no body cycle)";
    case WitnessClause::EntryNoReturn: return "3(b) (entry transitions return)";
    case WitnessClause::Layered: return "4 (layered)";
    case WitnessClause::GotoFree: return "5 (goto-free)";
  }
  return "?";
}

WitnessReport verify_witness(const LabelledPrechart& l) {
  const auto& x = l.base();
  const auto n = x.size();
  auto fail = [&](WitnessClause c, std::vector<StateId> states, std::string detail) {
    return WitnessReport{false, c, std::move(states), std::move(detail)};
  };
  // 1: finiteness holds for every Prechart value; checked for form's sake.
  if (l.tags().size() != x.transition_count())
    return fail(WitnessClause::LocallyFinite, {}, "labelling not total over the transitions");

  TaggedGraph g(l);
  for (StateId s = 0; s < n; ++s)
    for (StateId t : g.entry[s])
      if (std::binary_search(g.body[s].begin(), g.body[s].end(), t))
        return fail(WitnessClause::Flat, {s, t},
                    x.name(s) + " -> " + x.name(t) + " is tagged both entry and body");

  if (auto cycle = find_cycle(g.body); !cycle.empty()) {
    std::string d = "body cycle";
    for (StateId s : cycle) d += " " + x.name(s);
    return fail(WitnessClause::BodyCycle, cycle, d);
  }

  auto reach = strict_reach(x);
  for (StateId s = 0; s < n; ++s)
    for (StateId t : g.entry[s])
      if (t != s && !reach[t][s])
        return fail(WitnessClause::EntryNoReturn, {s, t},
                    "entry " + x.name(s) + " -> " + x.name(t) + " has no path back");

  Adjacency down(n);
  for (StateId s = 0; s < n; ++s) down[s] = down_set(g.entry, g.body, s);
  if (auto cycle = find_cycle(down); !cycle.empty()) {
    std::string d = "cycle in the loop-descent relation:";
    for (StateId s : cycle) d += " " + x.name(s);
    return fail(WitnessClause::Layered, cycle, d);
  }

  for (StateId s = 0; s < n; ++s)
    for (StateId t : down[s])
      if (x.has_output(t))
        return fail(WitnessClause::GotoFree, {s, t},
                    "state " + x.name(t) + " inside the loop of " + x.name(s) + " has output");
  return {};
}

std::vector<Measures> all_measures(const LabelledPrechart& l) {
  if (auto r = verify_witness(l); !r.ok)
    throw PreconditionError(std::string("invalid layering witness: clause ") + clause_name(r.clause));
  TaggedGraph g(l);
  const auto n = l.base().size();
  Adjacency down(n);
  for (StateId s = 0; s < n; ++s) down[s] = down_set(g.entry, g.body, s);
  auto en = longest_paths(down);
  auto b = longest_paths(g.body);
  std::vector<Measures> out(n);
  for (StateId s = 0; s < n; ++s) out[s] = {en[s], b[s]};
  return out;
}

Measures measures(const LabelledPrechart& l, StateId x) { return all_measures(l).at(x); }

// ---------------------------------------------------------------------------

namespace {

std::size_t entry_loop_depth(const Expr& src, const Expr& dst) {
  switch (src.kind()) {
    case ExprKind::Star:
      if (dst == src || (dst.kind() == ExprKind::Seq && dst.rhs() == src))
        return star_height(src.lhs()) + 1;
      break;
    case ExprKind::Seq:
      if (dst.kind() == ExprKind::Seq && dst.rhs() == src.rhs())
        return entry_loop_depth(src.lhs(), dst.lhs());
      break;
    default: break;
  }
  throw PreconditionError("entry transition " + render(src) + " -> " + render(dst) +
                          " is not a loop transition of the expression");
}

}  // namespace

std::size_t loop_depth(const ExpressionChart& chart, const LabelledPrechart& l, const Transition& t) {
  if (chart.exprs.size() != l.base().size()) throw PreconditionError("labelling is not over this expression chart");
  if (l.tag(t) == Tag::Body) return 0;
  return entry_loop_depth(chart.exprs.at(t.from), chart.exprs.at(t.to));
}

WeightedLabelling to_llee(const LabelledPrechart& l) {
  auto m = all_measures(l);
  WeightedLabelling w{l.base(), l.edges(), {}};
  for (std::size_t i = 0; i < l.edges().size(); ++i) {
    if (l.tag(i) == Tag::Body) {
      w.weights.push_back(0);
    } else {
      // A state whose only entries are self-loops has |x|_en = 0; weight 1 keeps it an entry.
      w.weights.push_back(static_cast<std::uint32_t>(std::max<std::size_t>(1, m[l.edges()[i].from].entry_depth)));
    }
  }
  return w;
}

LabelledPrechart from_llee(const WeightedLabelling& w) {
  if (w.edges != w.base.transitions() || w.weights.size() != w.edges.size())
    throw PreconditionError("weights are not aligned with the transitions");
  auto reach = strict_reach(w.base);
  std::vector<Tag> tags;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const auto& t = w.edges[i];
    tags.push_back(w.weights[i] > 0 && reach[t.to][t.from] ? Tag::Entry : Tag::Body);
  }
  LabelledPrechart out(w.base, std::move(tags));
  if (auto r = verify_witness(out); !r.ok)
    throw PreconditionError(std::string("weighted labelling does not yield a layering witness: clause ") +
                            clause_name(r.clause));
  return out;
}

LabelledPrechart syntactic_witness(const ExpressionChart& chart) {
  const auto& x = chart.chart;
  std::vector<Tag> tags;
  tags.reserve(x.transition_count());
  for (StateId s = 0; s < x.size(); ++s) {
    auto step = expr_step(chart.exprs[s], x.alphabet());
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      for (StateId t : x.successors(s, a)) {
        auto it = std::find_if(step.moves.begin(), step.moves.end(), [&](const Move& m) {
          return m.action == a && m.target == chart.exprs[t];
        });
        if (it == step.moves.end()) throw PreconditionError("chart transition not derivable from its expression");
        tags.push_back(it->tag);
      }
  }
  return LabelledPrechart(x, std::move(tags));
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

class WitnessSearch {
 public:
  WitnessSearch(const Prechart& x, std::size_t limit) : x_(x), limit_(limit), entry_(x.size()), body_(x.size()) {
    const auto n = x.size();
    scc_of_ = tarjan();
    for (StateId s = 0; s < n; ++s)
      for (StateId t : x.targets(s)) {
        if (s == t) {
          entry_[s].push_back(t);
        } else if (scc_of_[s] != scc_of_[t]) {
          body_[s].push_back(t);
        } else {
          cands_[scc_of_[s]].emplace_back(s, t);
        }
      }
    members_.resize(scc_count_);
    for (StateId s = 0; s < n; ++s) members_[scc_of_[s]].push_back(s);
    // Tarjan numbers sink components first, which is the order we need.
    for (std::size_t c = 0; c < scc_count_; ++c)
      for (auto p : cands_[c]) order_.push_back({p.first, p.second, c});
    choice_.resize(order_.size());
  }

  std::vector<LabelledPrechart> run() {
    search(0, 0);
    return std::move(found_);
  }

 private:
  struct Cand {
    StateId from, to;
    std::size_t scc;
  };

  std::vector<std::size_t> tarjan() {
    const auto n = x_.size();
    std::vector<std::size_t> comp(n, SIZE_MAX), index(n, SIZE_MAX), low(n, 0);
    std::vector<StateId> stack;
    std::vector<bool> on(n, false);
    std::size_t counter = 0;
    std::function<void(StateId)> dfs = [&](StateId v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on[v] = true;
      for (StateId w : x_.targets(v)) {
        if (index[w] == SIZE_MAX) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        for (;;) {
          StateId w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = scc_count_;
          if (w == v) break;
        }
        cands_.emplace_back();
        ++scc_count_;
      }
    };
    for (StateId v = 0; v < n; ++v)
      if (index[v] == SIZE_MAX) dfs(v);
    return comp;
  }

  bool body_reaches(StateId from, StateId to) const {
    std::vector<bool> seen(x_.size(), false);
    std::vector<StateId> stack{from};
    while (!stack.empty()) {
      StateId v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      if (seen[v]) continue;
      seen[v] = true;
      for (StateId w : body_[v])
        if (scc_of_[w] == scc_of_[to]) stack.push_back(w);
    }
    return false;
  }

  // Layered and goto-free for the states of one component; everything they
  // can reach is already labelled.
  bool component_ok(std::size_t c) const {
    const auto& mem = members_[c];
    Adjacency down(x_.size());
    for (StateId s : mem) {
      down[s] = down_set(entry_, body_, s);
      for (StateId t : down[s])
        if (x_.has_output(t)) return false;
    }
    for (StateId s : mem) {
      auto& row = down[s];
      row.erase(std::remove_if(row.begin(), row.end(), [&](StateId t) { return scc_of_[t] != c; }), row.end());
    }
    return find_cycle(down).empty();
  }

  void search(std::size_t i, std::size_t scc_done) {
    if (found_.size() >= limit_) return;
    // Check every component whose candidates are all assigned.
    std::size_t next_scc = i < order_.size() ? order_[i].scc : scc_count_;
    for (std::size_t c = scc_done; c < next_scc; ++c)
      if (!cands_[c].empty() && !component_ok(c)) return;
    if (i == order_.size()) {
      emit();
      return;
    }
    const auto& cd = order_[i];
    if (!body_reaches(cd.to, cd.from)) {
      body_[cd.from].push_back(cd.to);
      choice_[i] = Tag::Body;
      search(i + 1, next_scc);
      body_[cd.from].pop_back();
    }
    entry_[cd.from].push_back(cd.to);
    choice_[i] = Tag::Entry;
    search(i + 1, next_scc);
    entry_[cd.from].pop_back();
  }

  void emit() {
    std::vector<Tag> tags;
    for (const auto& t : x_.transitions()) {
      if (t.from == t.to) {
        tags.push_back(Tag::Entry);
        continue;
      }
      auto it = std::find_if(order_.begin(), order_.end(),
                             [&](const Cand& c) { return c.from == t.from && c.to == t.to; });
      tags.push_back(it == order_.end() ? Tag::Body : choice_[static_cast<std::size_t>(it - order_.begin())]);
    }
    found_.emplace_back(x_, std::move(tags));
  }

  const Prechart& x_;
  std::size_t limit_;
  Adjacency entry_, body_;
  std::vector<std::size_t> scc_of_;
  std::size_t scc_count_ = 0;
  std::vector<std::vector<std::pair<StateId, StateId>>> cands_;
  std::vector<std::vector<StateId>> members_;
  std::vector<Cand> order_;
  std::vector<Tag> choice_;
  std::vector<LabelledPrechart> found_;
};

}  // namespace

std::vector<LabelledPrechart> enumerate_witnesses(const Prechart& x, std::size_t limit) {
  return WitnessSearch(x, limit).run();
}

std::optional<LabelledPrechart> infer_witness(const Prechart& x) {
  auto found = enumerate_witnesses(x, 1);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

LabelledPrechart restrict_witness(const LabelledPrechart& l, const Embedded& sub) {
  std::vector<Tag> tags;
  for (const auto& t : sub.chart.transitions())
    tags.push_back(l.tag({sub.inclusion.at(t.from), t.action, sub.inclusion.at(t.to)}));
  return LabelledPrechart(sub.chart, std::move(tags));
}

LabelledPrechart witness_coproduct(const LabelledPrechart& l, const LabelledPrechart& r) {
  auto sum = coproduct(l.base(), r.base());
  std::vector<Tag> tags;
  const auto split = static_cast<StateId>(l.base().size());
  for (const auto& t : sum.chart.transitions()) {
    if (t.from < split)
      tags.push_back(l.tag({t.from, t.action, t.to}));
    else
      tags.push_back(r.tag({t.from - split, t.action, t.to - split}));
  }
  return LabelledPrechart(std::move(sum.chart), std::move(tags));
}

}  // namespace starchart
