#include "oracles.hpp"

#include <deque>
#include <functional>

namespace oracle {

using starchart::ExprKind;

namespace {

void add_move(Step& s, const std::string& a, const Expr& t) {
  if (s.moves.emplace(a, starchart::render(t)).second) s.targets.emplace_back(a, t);
}

}  // namespace

Step rules(const Expr& e) {
  Step s;
  switch (e.kind()) {
    case ExprKind::Zero: break;
    case ExprKind::Atom: s.outputs.insert(e.action()); break;
    case ExprKind::Sum:
      for (const auto* side : {&e.lhs(), &e.rhs()}) {
        auto sub = rules(*side);
        s.outputs.insert(sub.outputs.begin(), sub.outputs.end());
        for (const auto& [a, t] : sub.targets) add_move(s, a, t);
      }
      break;
    case ExprKind::Seq: {
      auto sub = rules(e.lhs());
      for (const auto& a : sub.outputs) add_move(s, a, e.rhs());
      for (const auto& [a, t] : sub.targets) add_move(s, a, Expr::seq(t, e.rhs()));
      break;
    }
    case ExprKind::Star: {
      auto body = rules(e.lhs());
      auto exit = rules(e.rhs());
      s.outputs = exit.outputs;
      for (const auto& [a, t] : exit.targets) add_move(s, a, t);
      for (const auto& [a, t] : body.targets) add_move(s, a, Expr::seq(t, e));
      for (const auto& a : body.outputs) add_move(s, a, e);
      break;
    }
  }
  return s;
}

std::map<std::string, Step> closure(const Expr& e) {
  std::map<std::string, Step> seen;
  std::deque<Expr> todo{e};
  while (!todo.empty()) {
    Expr cur = todo.front();
    todo.pop_front();
    auto key = starchart::render(cur);
    if (seen.count(key)) continue;
    auto st = rules(cur);
    for (const auto& [a, t] : st.targets) todo.push_back(t);
    seen.emplace(key, std::move(st));
  }
  return seen;
}

namespace {

// Generic greatest fixpoint over an explicit graph.
struct Graph {
  std::vector<std::set<std::string>> out;
  std::vector<std::map<std::string, std::set<std::size_t>>> succ;
};

std::vector<std::vector<bool>> gfp(const Graph& g) {
  auto n = g.out.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, true));
  auto matched = [&](std::size_t p, std::size_t q) {
    for (const auto& [a, ts] : g.succ[p])
      for (auto t : ts) {
        bool found = false;
        auto it = g.succ[q].find(a);
        if (it != g.succ[q].end())
          for (auto u : it->second) found = found || r[t][u];
        if (!found) return false;
      }
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (r[p][q] && (g.out[p] != g.out[q] || !matched(p, q) || !matched(q, p))) {
          r[p][q] = false;
          changed = true;
        }
  }
  return r;
}

}  // namespace

std::vector<std::vector<bool>> naive_bisimilarity(const Prechart& x) {
  Graph g;
  for (starchart::StateId s = 0; s < x.size(); ++s) {
    std::set<std::string> outs;
    std::map<std::string, std::set<std::size_t>> succ;
    for (starchart::ActionId a = 0; a < x.alphabet().size(); ++a) {
      if (x.has_output(s, a)) outs.insert(x.alphabet().name(a));
      for (auto t : x.successors(s, a)) succ[x.alphabet().name(a)].insert(t);
    }
    g.out.push_back(outs);
    g.succ.push_back(succ);
  }
  return gfp(g);
}

bool naive_bisimilar(const Expr& e, const Expr& f) {
  auto ce = closure(e), cf = closure(f);
  std::map<std::string, std::size_t> index;
  Graph g;
  auto add = [&](const std::map<std::string, Step>& c, const std::string& prefix) {
    for (const auto& [k, st] : c) index.emplace(prefix + k, index.size());
  };
  add(ce, "1/");
  add(cf, "2/");
  g.out.resize(index.size());
  g.succ.resize(index.size());
  auto fill = [&](const std::map<std::string, Step>& c, const std::string& prefix) {
    for (const auto& [k, st] : c) {
      auto i = index.at(prefix + k);
      g.out[i] = st.outputs;
      for (const auto& [a, t] : st.moves) g.succ[i][a].insert(index.at(prefix + t));
    }
  };
  fill(ce, "1/");
  fill(cf, "2/");
  auto r = gfp(g);
  return r[index.at("1/" + starchart::render(e))][index.at("2/" + starchart::render(f))];
}

bool is_witness(const Prechart& x, const std::vector<Tag>& tags) {
  auto edges = x.transitions();
  auto n = x.size();
  std::vector<std::vector<bool>> entry(n, std::vector<bool>(n)), body(n, std::vector<bool>(n)),
      any(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [f, a, t] = edges[i];
    (tags[i] == Tag::Entry ? entry : body)[f][t] = true;
    any[f][t] = true;
  }
  // flat
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (entry[p][q] && body[p][q]) return false;
  // Enumerate simple body paths from `start`, never visiting `avoid`.
  // visit(v) is called on every vertex reached, path included.
  std::function<void(std::size_t, std::size_t, std::vector<bool>&, const std::function<void(std::size_t)>&)> walk =
      [&](std::size_t v, std::size_t avoid, std::vector<bool>& on, const std::function<void(std::size_t)>& visit) {
        visit(v);
        on[v] = true;
        for (std::size_t w = 0; w < n; ++w)
          if (body[v][w] && !on[w] && w != avoid) walk(w, avoid, on, visit);
        on[v] = false;
      };
  // no body cycle: no body path returns to its start
  for (std::size_t v = 0; v < n; ++v) {
    bool cyc = false;
    std::vector<bool> on(n);
    walk(v, n, on, [&](std::size_t u) { cyc = cyc || body[u][v]; });
    if (cyc) return false;
  }
  // entries return
  auto reach = any;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (entry[p][q] && p != q && !reach[q][p]) return false;
  // x ↷ y
  std::vector<std::vector<bool>> down(n, std::vector<bool>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t v = 0; v < n; ++v)
      if (entry[p][v] && v != p) {
        std::vector<bool> on(n);
        walk(v, p, on, [&](std::size_t u) { down[p][u] = true; });
      }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (down[p][q] && x.has_output(static_cast<starchart::StateId>(q))) return false;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (down[i][k] && down[k][j]) down[i][j] = true;
  for (std::size_t p = 0; p < n; ++p)
    if (down[p][p]) return false;
  return true;
}

std::vector<std::vector<Tag>> all_witnesses(const Prechart& x) {
  auto m = x.transition_count();
  std::vector<std::vector<Tag>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Tag> tags(m);
    for (std::size_t i = 0; i < m; ++i) tags[i] = (mask >> i) & 1 ? Tag::Entry : Tag::Body;
    if (is_witness(x, tags)) out.push_back(std::move(tags));
  }
  return out;
}

std::vector<std::vector<std::size_t>> simple_cycles(const Prechart& x) {
  auto edges = x.transitions();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::vector<bool> on(x.size());
  // Cycles are reported from their least state to avoid rotations.
  std::function<void(starchart::StateId, starchart::StateId)> dfs = [&](starchart::StateId start,
                                                                        starchart::StateId v) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].from != v || edges[i].to < start) continue;
      path.push_back(i);
      if (edges[i].to == start) out.push_back(path);
      else if (!on[edges[i].to]) {
        on[edges[i].to] = true;
        dfs(start, edges[i].to);
        on[edges[i].to] = false;
      }
      path.pop_back();
    }
  };
  for (starchart::StateId s = 0; s < x.size(); ++s) {
    on[s] = true;
    dfs(s, s);
    on[s] = false;
  }
  return out;
}

Prechart random_prechart(starchart::Rng& rng, std::size_t states, std::size_t actions, double density,
                         double output_p) {
  std::vector<std::string> names{"a", "b", "c"};
  names.resize(actions);
  Prechart x{starchart::Alphabet(names)};
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::size_t s = 0; s < states; ++s) x.add_state("x" + std::to_string(s));
  for (starchart::StateId s = 0; s < states; ++s)
    for (starchart::ActionId a = 0; a < actions; ++a) {
      if (coin(rng) < output_p) x.add_output(s, a);
      for (starchart::StateId t = 0; t < states; ++t)
        if (coin(rng) < density) x.add_transition(s, a, t);
    }
  return x;
}

}  // namespace oracle
