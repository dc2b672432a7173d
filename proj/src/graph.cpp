#include "cfsem/graph.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace cfsem {

namespace {

// Returns one directed cycle (as a node sequence) or an empty vector.
std::vector<NodeId> find_cycle(const std::vector<std::vector<NodeId>>& children) {
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(children.size(), kWhite);
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;

  std::function<bool(NodeId)> visit = [&](NodeId v) {
    colour[v] = kGrey;
    stack.push_back(v);
    for (NodeId w : children[v]) {
      if (colour[w] == kGrey) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        return true;
      }
      if (colour[w] == kWhite && visit(w)) return true;
    }
    stack.pop_back();
    colour[v] = kBlack;
    return false;
  };

  for (NodeId v = 0; v < children.size(); ++v) {
    if (colour[v] == kWhite && visit(v)) break;
  }
  return cycle;
}

template <typename Next>
NodeMask closure(Next next, std::size_t n, std::span<const NodeId> from) {
  NodeMask seen(n, 0);
  std::vector<NodeId> frontier;
  for (NodeId v : from) {
    for (NodeId w : next(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  while (!frontier.empty()) {
    NodeId v = frontier.back();
    frontier.pop_back();
    for (NodeId w : next(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

Dag::Dag(std::vector<std::string> nodes, const std::vector<Edge>& edges)
    : labels_(std::move(nodes)) {
  const std::size_t n = labels_.size();
  for (NodeId i = 0; i < n; ++i) {
    if (labels_[i].empty()) throw InputError("empty node label");
    if (!index_.emplace(labels_[i], i).second) {
      throw InputError("duplicate node '" + labels_[i] + "'");
    }
  }
  parents_.assign(n, {});
  children_.assign(n, {});
  for (const auto& [tail, head] : edges) {
    NodeId t = id(tail);
    NodeId h = id(head);
    if (t == h) throw InputError("self-loop on '" + tail + "'");
    if (std::find(children_[t].begin(), children_[t].end(), h) != children_[t].end()) {
      throw InputError("duplicate edge " + tail + " -> " + head);
    }
    children_[t].push_back(h);
    parents_[h].push_back(t);
  }
  for (NodeId i = 0; i < n; ++i) {
    std::sort(parents_[i].begin(), parents_[i].end());
    std::sort(children_[i].begin(), children_[i].end());
  }

  if (auto cycle = find_cycle(children_); !cycle.empty()) {
    std::vector<std::string> named;
    for (NodeId v : cycle) named.push_back(labels_[v]);
    throw CycleError(std::move(named));
  }

  // Kahn's algorithm; the min-heap keeps declaration order among ready nodes.
  std::vector<std::size_t> indegree(n);
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId i = 0; i < n; ++i) {
    indegree[i] = parents_[i].size();
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order_.push_back(v);
    for (NodeId w : children_[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
}

std::optional<NodeId> Dag::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Dag::id(std::string_view label) const {
  if (auto found = find(label)) return *found;
  throw InputError("unknown node '" + std::string(label) + "'");
}

bool Dag::has_edge(NodeId tail, NodeId head) const {
  const auto& c = children_.at(tail);
  return std::binary_search(c.begin(), c.end(), head);
}

std::size_t Dag::edge_count() const {
  std::size_t count = 0;
  for (const auto& c : children_) count += c.size();
  return count;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (NodeId t = 0; t < size(); ++t) {
    for (NodeId h : children_[t]) out.emplace_back(labels_[t], labels_[h]);
  }
  return out;
}

bool operator==(const Dag& a, const Dag& b) {
  return a.labels_ == b.labels_ && a.children_ == b.children_;
}

std::vector<std::string> topological_sort(const Dag& g) {
  std::vector<std::string> out;
  out.reserve(g.size());
  for (NodeId v : g.topological_ids()) out.push_back(g.label(v));
  return out;
}

NodeSet parents(const Dag& g, std::string_view v) { return labels_of(g, g.parent_ids(g.id(v))); }

NodeSet children(const Dag& g, std::string_view v) { return labels_of(g, g.child_ids(g.id(v))); }

std::vector<NodeId> resolve(const Dag& g, const NodeSet& vs) {
  std::vector<NodeId> ids;
  ids.reserve(vs.size());
  for (const auto& v : vs) ids.push_back(g.id(v));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

NodeMask mask_of(const Dag& g, std::span<const NodeId> ids) {
  NodeMask m(g.size(), 0);
  for (NodeId v : ids) m.at(v) = 1;
  return m;
}

NodeSet labels_of(const Dag& g, const NodeMask& mask) {
  NodeSet out;
  for (NodeId v = 0; v < g.size(); ++v) {
    if (mask[v]) out.push_back(g.label(v));
  }
  return out;
}

NodeSet labels_of(const Dag& g, std::span<const NodeId> ids) {
  NodeSet out;
  out.reserve(ids.size());
  for (NodeId v : ids) out.push_back(g.label(v));
  return out;
}

NodeMask descendant_mask(const Dag& g, std::span<const NodeId> from) {
  return closure([&g](NodeId v) -> const auto& { return g.child_ids(v); }, g.size(), from);
}

NodeMask ancestor_mask(const Dag& g, std::span<const NodeId> from) {
  return closure([&g](NodeId v) -> const auto& { return g.parent_ids(v); }, g.size(), from);
}

NodeSet ancestors(const Dag& g, const NodeSet& vs) {
  auto ids = resolve(g, vs);
  return labels_of(g, ancestor_mask(g, ids));
}

NodeSet descendants(const Dag& g, const NodeSet& vs) {
  auto ids = resolve(g, vs);
  return labels_of(g, descendant_mask(g, ids));
}

Dag remove_outgoing(const Dag& g, const NodeSet& a_set) {
  NodeMask drop = mask_of(g, resolve(g, a_set));
  std::vector<Edge> kept;
  for (NodeId t = 0; t < g.size(); ++t) {
    if (drop[t]) continue;
    for (NodeId h : g.child_ids(t)) kept.emplace_back(g.label(t), g.label(h));
  }
  return Dag(g.labels(), kept);
}

}  // namespace cfsem
