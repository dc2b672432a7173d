#pragma once

#include "cfsem/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfsem {

inline constexpr std::size_t kDefaultPathCap = 100'000;

/// A simple path in the skeleton of a Dag. `forward[i]` is true when the
/// step between nodes[i] and nodes[i+1] follows the arrow nodes[i] -> nodes[i+1].
struct Path {
  std::vector<std::string> nodes;
  std::vector<bool> forward;

  std::size_t length() const { return forward.size(); }
  // "A <- L -> Y"
  std::string to_string() const;

  friend bool operator==(const Path&, const Path&) = default;
};

struct SeparationQuery {
  NodeSet x;
  NodeSet y;
  NodeSet z;
};

// Throws InputError if the path does not exist in `g` with the stated
// orientations or repeats a node.
void validate_path(const Dag& g, const Path& p);

// True iff some interior node blocks `p` given `z`: a chain/fork node in z,
// or a collider that is outside z and has no descendant in z.
bool is_blocked(const Dag& g, const Path& p, const NodeSet& z);

// Every simple path between x and y, depth-first with neighbours visited in
// declaration order. Throws CapacityError past `cap` paths.
std::vector<Path> enumerate_paths(const Dag& g, std::string_view x, std::string_view y,
                                  std::size_t cap = kDefaultPathCap);

// Active-trail reachability, linear in the size of the graph.
bool is_d_separated(const Dag& g, const SeparationQuery& q);

// Path-enumeration oracle: every path between every (x, y) pair is blocked.
bool is_d_separated_oracle(const Dag& g, const SeparationQuery& q,
                           std::size_t cap = kDefaultPathCap);

// First unblocked path in oracle enumeration order, if any.
std::optional<Path> find_active_path(const Dag& g, const SeparationQuery& q,
                                     std::size_t cap = kDefaultPathCap);

struct BackdoorPath {
  Path path;
  // The path visits a treatment other than its starting node.
  bool through_other_treatment = false;
};

// Paths from some member of `a_set` to `y` whose first step enters the
// treatment node.
std::vector<BackdoorPath> backdoor_paths(const Dag& g, const NodeSet& a_set, std::string_view y,
                                         std::size_t cap = kDefaultPathCap);

struct CriterionReport {
  bool disjoint = true;        // l and a_set share no node
  bool no_descendants = true;  // no member of l descends from a_set
  bool blocks_backdoor = true; // every back-door path is blocked by l
  NodeSet descendant_members;  // members of l violating the first condition
  std::optional<Path> witness; // first unblocked back-door path

  bool holds() const { return disjoint && no_descendants && blocks_backdoor; }
};

// Throws PreconditionError when l meets a_set or y lies in a_set or l.
CriterionReport backdoor_criterion(const Dag& g, const NodeSet& a_set, std::string_view y,
                                   const NodeSet& l, std::size_t cap = kDefaultPathCap);

struct AdmissibleSet {
  NodeSet nodes;
  bool minimal = false;
};

// All subsets of `candidates` satisfying the criterion, ordered by size and
// then lexicographically by declaration order.
std::vector<AdmissibleSet> enumerate_admissible_sets(const Dag& g, const NodeSet& a_set,
                                                     std::string_view y,
                                                     const NodeSet& candidates,
                                                     std::size_t cap = kDefaultPathCap);

}  // namespace cfsem
