#include "starchart/dot.hpp"

#include <sstream>

namespace starchart {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string render_dot(const Prechart& x, const LabelledPrechart* l) {
  std::ostringstream out;
  out << "digraph chart {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId s = 0; s < x.size(); ++s) {
    std::string label = x.name(s);
    for (ActionId a = 0; a < x.alphabet().size(); ++a)
      if (x.has_output(s, a)) label += "\n⇒" + x.alphabet().name(a);
    out << "  s" << s << " [label=" << quoted(label);
    if (x.root() == s) out << ", shape=doublecircle";
    out << "];\n";
  }
  auto edges = x.transitions();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& t = edges[i];
    out << "  s" << t.from << " -> s" << t.to << " [label=" << quoted(x.alphabet().name(t.action));
    if (l && l->tag(i) == Tag::Entry) out << ", penwidth=3";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const Prechart& x) { return render_dot(x, nullptr); }
std::string to_dot(const LabelledPrechart& l) { return render_dot(l.base(), &l); }

}  // namespace starchart
