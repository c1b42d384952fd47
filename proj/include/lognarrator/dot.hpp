#pragma once

// Graphviz DOT emitter for process models. Node and edge order is
// lexicographic so output bytes are stable for a given model.

#include <sstream>
#include <string>

#include "lognarrator/model.hpp"

namespace lognar {

namespace dot_detail {
inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace dot_detail

inline std::string to_dot(const ProcessModel& model) {
  std::ostringstream os;
  os << "digraph process {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  for (const auto& [label, node] : model.activities)
    os << "  \"" << dot_detail::escape(label) << "\" [label=\"" << dot_detail::escape(label)
       << " (" << node.total_count << ")\"];\n";
  for (const auto& [key, edge] : model.arcs)
    os << "  \"" << dot_detail::escape(key.first) << "\" -> \"" << dot_detail::escape(key.second)
       << "\" [label=\"" << edge.count << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace lognar
