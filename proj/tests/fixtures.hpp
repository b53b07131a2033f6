#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "starchart/layering.hpp"
#include "starchart/prechart.hpp"

namespace fixtures {

using starchart::Alphabet;
using starchart::LabelledPrechart;
using starchart::Prechart;
using starchart::Tag;

struct Edge {
  const char* from;
  const char* to;
  char tag;  // 'e' or 'b'
};

inline LabelledPrechart single_action(const std::vector<std::string>& states, const std::vector<Edge>& edges) {
  Prechart x{Alphabet({"a"})};
  for (const auto& s : states) x.add_state(s);
  for (const auto& e : edges) x.add_transition(x.index(e.from), 0, x.index(e.to));
  std::vector<Tag> tags(x.transition_count(), Tag::Body);
  auto all = x.transitions();
  for (const auto& e : edges) {
    starchart::Transition t{x.index(e.from), 0, x.index(e.to)};
    auto i = std::lower_bound(all.begin(), all.end(), t) - all.begin();
    tags[static_cast<std::size_t>(i)] = e.tag == 'e' ? Tag::Entry : Tag::Body;
  }
  return LabelledPrechart(x, tags);
}

/// A well-layered chart, with a witness, in which x1 ~ x2 yet connecting x1
/// through to x2 leaves no layering witness.
inline LabelledPrechart reroute_left() {
  return single_action({"x1", "x2", "v", "v'"}, {{"x2", "v", 'e'},
                                                 {"x2", "v'", 'e'},
                                                 {"v", "x2", 'b'},
                                                 {"v", "v'", 'e'},
                                                 {"v'", "v", 'b'},
                                                 {"v'", "x1", 'b'},
                                                 {"x1", "v", 'b'}});
}

/// reroute_left() with x1 connected through to x2.
inline Prechart reroute_right() {
  return single_action({"x2", "v", "v'"}, {{"x2", "v", 'b'},
                                           {"x2", "v'", 'b'},
                                           {"v", "x2", 'b'},
                                           {"v", "v'", 'b'},
                                           {"v'", "v", 'b'},
                                           {"v'", "x2", 'b'}})
      .base();
}

/// r -a-> w1, r -a-> w2, w1 -a-> w1, w2 -a-> w2, entries exactly the self-loops.
inline LabelledPrechart two_loops() {
  auto l = single_action({"r", "w1", "w2"},
                         {{"r", "w1", 'b'}, {"r", "w2", 'b'}, {"w1", "w1", 'e'}, {"w2", "w2", 'e'}});
  auto x = l.base();
  x.set_root(0);
  return LabelledPrechart(x, l.tags());
}

}  // namespace fixtures
