#include "starchart/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "starchart/error.hpp"

namespace starchart {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json outputs_json(const Prechart& x) {
  Json out = Json::object();
  for (StateId s = 0; s < x.size(); ++s) {
    Json acts = Json::array();
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      if (x.has_output(s, a)) acts.push_back(x.alphabet().name(a));
    if (!acts.empty()) out[x.name(s)] = std::move(acts);
  }
  return out;
}

Json transition_json(const Prechart& x, const Transition& t) {
  return Json{{"from", x.name(t.from)}, {"action", x.alphabet().name(t.action)}, {"to", x.name(t.to)}};
}

Json chart_skeleton(const Prechart& x) {
  Json j;
  j["alphabet"] = x.alphabet().names();
  j["states"] = x.names();
  j["root"] = x.root() ? Json(x.name(*x.root())) : Json(nullptr);
  j["outputs"] = outputs_json(x);
  j["transitions"] = Json::array();
  return j;
}

Tag tag_of(const Json& t) {
  auto s = text(field(t, "tag"), "tag");
  if (s == "e") return Tag::Entry;
  if (s == "b") return Tag::Body;
  throw InputError("tag must be \"e\" or \"b\", got \"" + s + "\"");
}

Transition transition_of(const Prechart& x, const Json& t) {
  return {x.index(text(field(t, "from"), "from")), x.alphabet().index(text(field(t, "action"), "action")),
          x.index(text(field(t, "to"), "to"))};
}

}  // namespace

Json chart_to_json(const Prechart& x) {
  Json j = chart_skeleton(x);
  for (const auto& t : x.transitions()) j["transitions"].push_back(transition_json(x, t));
  return j;
}

Prechart chart_from_json(const Json& j) {
  std::vector<std::string> names;
  const auto& alpha = field(j, "alphabet");
  if (!alpha.is_array()) throw InputError("alphabet must be an array");
  for (const auto& a : alpha) names.push_back(text(a, "action"));
  Prechart x{Alphabet(std::move(names))};
  const auto& states = field(j, "states");
  if (!states.is_array()) throw InputError("states must be an array");
  for (const auto& s : states) x.add_state(text(s, "state"));
  if (j.contains("outputs")) {
    const auto& outs = j.at("outputs");
    if (!outs.is_object()) throw InputError("outputs must be an object");
    for (const auto& [state, acts] : outs.items()) {
      if (!acts.is_array()) throw InputError("outputs of a state must be an array");
      for (const auto& a : acts) x.add_output(x.index(state), x.alphabet().index(text(a, "action")));
    }
  }
  if (j.contains("transitions")) {
    const auto& ts = j.at("transitions");
    if (!ts.is_array()) throw InputError("transitions must be an array");
    for (const auto& t : ts) {
      auto tr = transition_of(x, t);
      x.add_transition(tr.from, tr.action, tr.to);
    }
  }
  if (j.contains("root") && !j.at("root").is_null()) x.set_root(x.index(text(j.at("root"), "root")));
  return x;
}

Json witness_to_json(const LabelledPrechart& l) {
  Json j = chart_skeleton(l.base());
  for (std::size_t i = 0; i < l.edges().size(); ++i) {
    Json t = transition_json(l.base(), l.edges()[i]);
    t["tag"] = l.tag(i) == Tag::Entry ? "e" : "b";
    j["transitions"].push_back(std::move(t));
  }
  return j;
}

LabelledPrechart witness_from_json(const Json& j) { return witness_from_json(j, chart_from_json(j)); }

LabelledPrechart witness_from_json(const Json& j, const Prechart& base) {
  auto edges = base.transitions();
  std::vector<std::optional<Tag>> tags(edges.size());
  for (const auto& t : field(j, "transitions")) {
    auto tr = transition_of(base, t);
    auto it = std::lower_bound(edges.begin(), edges.end(), tr);
    if (it == edges.end() || *it != tr) throw InputError("witness labels a transition the chart does not have");
    auto& slot = tags[static_cast<std::size_t>(it - edges.begin())];
    Tag tag = tag_of(t);
    if (slot && *slot != tag) throw InputError("transition labelled twice with different tags");
    slot = tag;
  }
  std::vector<Tag> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!tags[i]) throw InputError("witness leaves a transition unlabelled");
    out.push_back(*tags[i]);
  }
  return LabelledPrechart(base, std::move(out));
}

Json weighted_to_json(const WeightedLabelling& w) {
  Json j = chart_skeleton(w.base);
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    Json t = transition_json(w.base, w.edges[i]);
    t["weight"] = w.weights[i];
    j["transitions"].push_back(std::move(t));
  }
  return j;
}

WeightedLabelling weighted_from_json(const Json& j) {
  WeightedLabelling w{chart_from_json(j), {}, {}};
  w.edges = w.base.transitions();
  w.weights.assign(w.edges.size(), 0);
  for (const auto& t : field(j, "transitions")) {
    auto tr = transition_of(w.base, t);
    auto i = static_cast<std::size_t>(std::lower_bound(w.edges.begin(), w.edges.end(), tr) - w.edges.begin());
    const auto& wt = field(t, "weight");
    if (!wt.is_number_unsigned()) throw InputError("weight must be a natural number");
    w.weights[i] = wt.get<std::uint32_t>();
  }
  return w;
}

Json solution_to_json(const Solution& s, bool simplified) {
  Json j = Json::object();
  for (StateId x = 0; x < s.chart.size(); ++x)
    j[s.chart.name(x)] = render(simplified ? simplify(s.assign[x]) : s.assign[x]);
  return j;
}

Json relation_to_json(const Prechart& x, const Prechart& y, const Relation& r) {
  Json j = Json::array();
  for (auto [a, b] : r) j.push_back(Json::array({x.name(a), y.name(b)}));
  return j;
}

Json partition_to_json(const Prechart& x, const Partition& p) {
  Json j = Json::array();
  for (const auto& block : p.blocks()) {
    Json b = Json::array();
    for (StateId s : block) b.push_back(x.name(s));
    j.push_back(std::move(b));
  }
  return j;
}

Json violation_to_json(const Prechart& x, const Prechart& y, const BisimViolation& v) {
  Json j;
  switch (v.clause) {
    case BisimViolation::Clause::Output: j["clause"] = "output"; break;
    case BisimViolation::Clause::Forth: j["clause"] = "forth"; break;
    case BisimViolation::Clause::Back: j["clause"] = "back"; break;
  }
  j["left"] = x.name(v.left);
  j["right"] = y.name(v.right);
  if (v.clause != BisimViolation::Clause::Output) {
    j["action"] = x.alphabet().name(v.action);
    const auto& side = v.clause == BisimViolation::Clause::Forth ? x : y;
    if (v.successor) j["successor"] = side.name(*v.successor);
  }
  return j;
}

Json collapse_to_json(const Prechart& input, const Collapse& c) {
  Json j;
  j["chart"] = witness_to_json(c.result);
  Json proj = Json::object();
  for (StateId x = 0; x < input.size(); ++x) proj[input.name(x)] = c.result.base().name(c.projection[x]);
  j["projection"] = std::move(proj);
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"w1", s.w1}, {"w2", s.w2}, {"condition", condition_name(s.condition)}, {"fallback", s.fell_back}});
  j["steps"] = std::move(steps);
  return j;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["verdict"] = c.verdict == Verdict::Equivalent ? "equivalent" : "inequivalent";
  j["e"] = render(c.e);
  j["f"] = render(c.f);
  j["alphabet"] = c.alphabet.names();
  if (c.collapsed) {
    j["collapsed"] = witness_to_json(*c.collapsed);
    j["projection"] = c.projection;
    j["merged_root"] = c.collapsed->base().name(*c.merged_root);
  }
  if (c.common) j["common"] = render(*c.common);
  if (c.distinction) {
    Json d;
    const auto& v = *c.distinction;
    d["clause"] = v.clause == BisimViolation::Clause::Output  ? "output"
                  : v.clause == BisimViolation::Clause::Forth ? "forth"
                                                              : "back";
    d["left"] = v.left;
    d["right"] = v.right;
    d["action"] = v.action;
    if (v.successor) d["successor"] = *v.successor;
    j["distinction"] = std::move(d);
  }
  Json checks = Json::array();
  for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  j["checks"] = std::move(checks);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    auto verdict = text(field(j, "verdict"), "verdict");
    if (verdict != "equivalent" && verdict != "inequivalent") throw InputError("unknown verdict " + verdict);
    c.verdict = verdict == "equivalent" ? Verdict::Equivalent : Verdict::Inequivalent;
    std::vector<std::string> names;
    for (const auto& a : field(j, "alphabet")) names.push_back(text(a, "action"));
    c.alphabet = Alphabet(std::move(names));
    c.e = parse(text(field(j, "e"), "e"), c.alphabet);
    c.f = parse(text(field(j, "f"), "f"), c.alphabet);
    if (j.contains("collapsed")) {
      c.collapsed = witness_from_json(j.at("collapsed"));
      c.projection = field(j, "projection").get<std::vector<StateId>>();
      c.merged_root = c.collapsed->base().index(text(field(j, "merged_root"), "merged_root"));
    }
    if (j.contains("common")) c.common = parse(text(j.at("common"), "common"), c.alphabet);
    if (j.contains("distinction")) {
      const auto& d = j.at("distinction");
      auto clause = text(field(d, "clause"), "clause");
      BisimViolation v{clause == "output"  ? BisimViolation::Clause::Output
                       : clause == "forth" ? BisimViolation::Clause::Forth
                                           : BisimViolation::Clause::Back,
                       field(d, "left").get<StateId>(), field(d, "right").get<StateId>(),
                       field(d, "action").get<ActionId>(), std::nullopt};
      if (d.contains("successor")) v.successor = d.at("successor").get<StateId>();
      c.distinction = v;
    }
    for (const auto& ch : field(j, "checks"))
      c.checks.push_back({text(field(ch, "name"), "name"), field(ch, "passed").get<bool>(),
                          text(field(ch, "detail"), "detail")});
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed certificate: ") + ex.what());
  }
}

Json read_json_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

}  // namespace starchart
