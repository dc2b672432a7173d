#pragma once

#include "cfsem/graph.hpp"

#include <string>
#include <string_view>

namespace cfsem {

// Line-oriented graph text:
//
//   # comment
//   L            node declaration
//   L -> A       edge
//
// Edges may refer to nodes declared further down. Errors carry line numbers.
Dag parse_graph_text(std::string_view text);

// Inverse of parse_graph_text: node lines in declaration order, then edges.
std::string format_graph_text(const Dag& g);

// Rejects labels that the text formats and query grammar cannot carry.
bool is_valid_label(std::string_view label);

}  // namespace cfsem
