#pragma once

// Brute-force reference implementations used to pin down the library.
// They share no code with the library beyond the data types.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "starchart/generators.hpp"
#include "starchart/prechart.hpp"
#include "starchart/syntax.hpp"

namespace oracle {

using starchart::Expr;
using starchart::Prechart;
using starchart::Tag;

struct Step {
  std::set<std::string> outputs;
  std::set<std::pair<std::string, std::string>> moves;  // (action, rendered target)
  std::vector<std::pair<std::string, Expr>> targets;
};

/// One application of every operational rule to e.
Step rules(const Expr& e);

/// All expressions reachable from e by the rules, keyed by rendering.
std::map<std::string, Step> closure(const Expr& e);

/// Greatest bisimulation by deleting violating pairs until nothing changes.
std::vector<std::vector<bool>> naive_bisimilarity(const Prechart& x);

/// Bisimilarity of two expressions over their rule-generated graphs.
bool naive_bisimilar(const Expr& e, const Expr& f);

/// The witness conditions checked by explicit path enumeration; `tags`
/// is aligned with x.transitions().
bool is_witness(const Prechart& x, const std::vector<Tag>& tags);

/// Every valid labelling, by trying all 2^m of them.
std::vector<std::vector<Tag>> all_witnesses(const Prechart& x);

/// Simple cycles of the underlying graph as lists of transition indices.
std::vector<std::vector<std::size_t>> simple_cycles(const Prechart& x);

/// Random prechart over the first `actions` of a, b, c.
Prechart random_prechart(starchart::Rng& rng, std::size_t states, std::size_t actions, double density,
                         double output_p);

}  // namespace oracle
