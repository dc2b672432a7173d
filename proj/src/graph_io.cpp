#include "cfsem/graph_io.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cfsem {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_valid_label(std::string_view label) {
  if (label.empty() || label.find("->") != std::string_view::npos) return false;
  return std::none_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isspace(c) || c == ',' || c == '|' || c == '=' || c == '(' || c == ')' ||
           c == '#' || c == '"';
  });
}

Dag parse_graph_text(std::string_view text) {
  std::vector<std::string> nodes;
  std::unordered_map<std::string, std::size_t> declared_on;
  struct PendingEdge {
    std::string tail, head;
    std::size_t line;
  };
  std::vector<PendingEdge> pending;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t arrow = line.find("->", pos);
      parts.push_back(trim(line.substr(pos, arrow == std::string_view::npos ? arrow : arrow - pos)));
      if (arrow == std::string_view::npos) break;
      pos = arrow + 2;
    }
    for (auto part : parts) {
      if (!is_valid_label(part)) {
        throw ParseError("invalid node label '" + std::string(part) + "'", line_no);
      }
    }
    if (parts.size() == 1) {
      std::string label(parts.front());
      if (auto [it, fresh] = declared_on.emplace(label, line_no); !fresh) {
        throw ParseError("node '" + label + "' already declared on line " +
                             std::to_string(it->second),
                         line_no);
      }
      nodes.push_back(std::move(label));
    } else {
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        pending.push_back({std::string(parts[i]), std::string(parts[i + 1]), line_no});
      }
    }
  }

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<Edge> edges;
  for (const auto& e : pending) {
    for (const auto* end : {&e.tail, &e.head}) {
      if (!declared_on.contains(*end)) {
        throw ParseError("edge endpoint '" + *end + "' is not a declared node", e.line);
      }
    }
    if (e.tail == e.head) throw ParseError("self-loop on '" + e.tail + "'", e.line);
    if (!seen.emplace(e.tail, e.head).second) {
      throw ParseError("duplicate edge " + e.tail + " -> " + e.head, e.line);
    }
    edges.emplace_back(e.tail, e.head);
  }
  return Dag(std::move(nodes), edges);
}

std::string format_graph_text(const Dag& g) {
  std::ostringstream out;
  for (const auto& label : g.labels()) out << label << '\n';
  for (const auto& [tail, head] : g.edges()) out << tail << " -> " << head << '\n';
  return out.str();
}

}  // namespace cfsem
