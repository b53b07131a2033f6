#pragma once

#include <string>

#include "starchart/layering.hpp"
#include "starchart/prechart.hpp"

namespace starchart {

/// Graphviz rendering: states as circles, the root double-circled, outputs
/// as "⇒a" annotations.
std::string to_dot(const Prechart& x);
/// Same, drawing entry transitions with thick strokes.
std::string to_dot(const LabelledPrechart& l);

}  // namespace starchart
