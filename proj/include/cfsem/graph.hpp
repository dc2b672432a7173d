#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cfsem {

// Dense node index; equals the node's position in declaration order.
using NodeId = std::size_t;

// A set of node labels. Operations accept any order and report results in
// the graph's declaration order.
using NodeSet = std::vector<std::string>;

using Edge = std::pair<std::string, std::string>;

// Membership mask indexed by NodeId.
using NodeMask = std::vector<char>;

/// Immutable directed acyclic graph over string-labelled nodes.
///
/// The constructor enforces every invariant: unique non-empty labels, declared
/// endpoints, no self-loops, no duplicate edges and no directed cycle
/// (CycleError carries the offending cycle).
class Dag {
 public:
  Dag() = default;
  Dag(std::vector<std::string> nodes, const std::vector<Edge>& edges);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId id) const { return labels_.at(id); }

  std::optional<NodeId> find(std::string_view label) const;
  // Throws InputError for unknown labels.
  NodeId id(std::string_view label) const;

  // Ascending NodeId order.
  const std::vector<NodeId>& parent_ids(NodeId id) const { return parents_.at(id); }
  const std::vector<NodeId>& child_ids(NodeId id) const { return children_.at(id); }

  bool has_edge(NodeId tail, NodeId head) const;
  std::size_t edge_count() const;

  // Sorted by (tail id, head id).
  std::vector<Edge> edges() const;

  // Cached topological order; ties broken by declaration order.
  const std::vector<NodeId>& topological_ids() const { return order_; }

  friend bool operator==(const Dag& a, const Dag& b);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> order_;
};

std::vector<std::string> topological_sort(const Dag& g);

NodeSet parents(const Dag& g, std::string_view v);
NodeSet children(const Dag& g, std::string_view v);

// Strict closures: a node is not its own ancestor or descendant.
NodeSet ancestors(const Dag& g, const NodeSet& vs);
NodeSet descendants(const Dag& g, const NodeSet& vs);

// G with every arrow whose tail lies in `a_set` deleted.
Dag remove_outgoing(const Dag& g, const NodeSet& a_set);

// Id-level helpers shared by the other modules.
std::vector<NodeId> resolve(const Dag& g, const NodeSet& vs);
NodeMask mask_of(const Dag& g, std::span<const NodeId> ids);
NodeSet labels_of(const Dag& g, const NodeMask& mask);
NodeSet labels_of(const Dag& g, std::span<const NodeId> ids);
NodeMask descendant_mask(const Dag& g, std::span<const NodeId> from);
NodeMask ancestor_mask(const Dag& g, std::span<const NodeId> from);

}  // namespace cfsem
