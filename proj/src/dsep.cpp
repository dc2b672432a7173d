#include "cfsem/dsep.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <functional>

namespace cfsem {

namespace {

struct IdPath {
  std::vector<NodeId> nodes;
  std::vector<bool> forward;
};

Path to_path(const Dag& g, const IdPath& p) {
  Path out;
  out.nodes = labels_of(g, p.nodes);
  out.forward = p.forward;
  return out;
}

// Neighbours of every node in ascending id order, tagged with whether the
// step v -> w follows the arrow.
std::vector<std::vector<std::pair<NodeId, bool>>> skeleton(const Dag& g) {
  std::vector<std::vector<std::pair<NodeId, bool>>> adj(g.size());
  for (NodeId v = 0; v < g.size(); ++v) {
    for (NodeId w : g.parent_ids(v)) adj[v].emplace_back(w, false);
    for (NodeId w : g.child_ids(v)) adj[v].emplace_back(w, true);
    std::sort(adj[v].begin(), adj[v].end());
  }
  return adj;
}

// Depth-first enumeration of simple paths from `source` to `target`. When
// `first_backward` is set, the first step must enter `source`.
std::vector<IdPath> simple_paths(const Dag& g, NodeId source, NodeId target, bool first_backward,
                                 std::size_t cap) {
  const auto adj = skeleton(g);
  std::vector<IdPath> found;
  std::vector<char> on_path(g.size(), 0);
  IdPath current;
  current.nodes.push_back(source);
  on_path[source] = 1;

  std::function<void(NodeId)> extend = [&](NodeId v) {
    for (auto [w, fwd] : adj[v]) {
      if (on_path[w]) continue;
      if (first_backward && current.forward.empty() && fwd) continue;
      current.nodes.push_back(w);
      current.forward.push_back(fwd);
      if (w == target) {
        if (found.size() == cap) {
          throw CapacityError("path enumeration between '" + g.label(source) + "' and '" +
                                  g.label(target) + "'",
                              cap + 1, cap);
        }
        found.push_back(current);
      } else {
        on_path[w] = 1;
        extend(w);
        on_path[w] = 0;
      }
      current.nodes.pop_back();
      current.forward.pop_back();
    }
  };
  extend(source);
  return found;
}

// `open_colliders` marks z together with the ancestors of z.
bool blocked(const IdPath& p, const NodeMask& z, const NodeMask& open_colliders) {
  for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
    NodeId w = p.nodes[i];
    bool collider = p.forward[i - 1] && !p.forward[i];
    if (collider ? !open_colliders[w] : static_cast<bool>(z[w])) return true;
  }
  return false;
}

NodeMask open_collider_mask(const Dag& g, std::span<const NodeId> z) {
  NodeMask open = ancestor_mask(g, z);
  for (NodeId v : z) open[v] = 1;
  return open;
}

IdPath to_ids(const Dag& g, const Path& p) {
  validate_path(g, p);
  IdPath out;
  for (const auto& v : p.nodes) out.nodes.push_back(g.id(v));
  out.forward = p.forward;
  return out;
}

struct ResolvedQuery {
  std::vector<NodeId> x, y, z;
};

ResolvedQuery resolve_query(const Dag& g, const SeparationQuery& q) {
  ResolvedQuery r{resolve(g, q.x), resolve(g, q.y), resolve(g, q.z)};
  if (r.x.empty() || r.y.empty()) throw InputError("separation query needs non-empty x and y");
  NodeMask used(g.size(), 0);
  for (const auto* set : {&r.x, &r.y, &r.z}) {
    for (NodeId v : *set) {
      if (used[v]) throw InputError("separation query sets overlap at '" + g.label(v) + "'");
      used[v] = 1;
    }
  }
  return r;
}

}  // namespace

std::string Path::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) out += forward[i - 1] ? " -> " : " <- ";
    out += nodes[i];
  }
  return out;
}

void validate_path(const Dag& g, const Path& p) {
  if (p.nodes.size() < 2 || p.forward.size() + 1 != p.nodes.size()) {
    throw InputError("path must have at least one step and one orientation per step");
  }
  NodeMask seen(g.size(), 0);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    NodeId v = g.id(p.nodes[i]);
    if (seen[v]) throw InputError("path repeats node '" + p.nodes[i] + "'");
    seen[v] = 1;
    if (i + 1 < p.nodes.size()) {
      NodeId w = g.id(p.nodes[i + 1]);
      bool ok = p.forward[i] ? g.has_edge(v, w) : g.has_edge(w, v);
      if (!ok) {
        throw InputError("path step " + p.nodes[i] + (p.forward[i] ? " -> " : " <- ") +
                         p.nodes[i + 1] + " is not an edge of the graph");
      }
    }
  }
}

bool is_blocked(const Dag& g, const Path& p, const NodeSet& z) {
  IdPath ids = to_ids(g, p);
  auto z_ids = resolve(g, z);
  NodeMask z_mask = mask_of(g, z_ids);
  // Collider rule as stated: the collider or one of its descendants is in z.
  for (std::size_t i = 1; i + 1 < ids.nodes.size(); ++i) {
    NodeId w = ids.nodes[i];
    bool collider = ids.forward[i - 1] && !ids.forward[i];
    if (!collider) {
      if (z_mask[w]) return true;
      continue;
    }
    if (z_mask[w]) continue;
    std::vector<NodeId> single{w};
    NodeMask below = descendant_mask(g, single);
    bool opened = std::any_of(z_ids.begin(), z_ids.end(), [&](NodeId v) { return below[v]; });
    if (!opened) return true;
  }
  return false;
}

std::vector<Path> enumerate_paths(const Dag& g, std::string_view x, std::string_view y,
                                  std::size_t cap) {
  NodeId from = g.id(x);
  NodeId to = g.id(y);
  if (from == to) throw InputError("path endpoints must differ");
  std::vector<Path> out;
  for (const auto& p : simple_paths(g, from, to, false, cap)) out.push_back(to_path(g, p));
  return out;
}

bool is_d_separated(const Dag& g, const SeparationQuery& q) {
  const ResolvedQuery r = resolve_query(g, q);
  const NodeMask in_z = mask_of(g, r.z);
  const NodeMask open = open_collider_mask(g, r.z);
  const NodeMask in_y = mask_of(g, r.y);

  // States are (node, arrived-from-child) / (node, arrived-from-parent).
  enum Direction : std::size_t { kUp = 0, kDown = 1 };
  std::vector<char> visited(2 * g.size(), 0);
  std::vector<std::pair<NodeId, Direction>> stack;
  for (NodeId x : r.x) stack.emplace_back(x, kUp);

  while (!stack.empty()) {
    auto [v, dir] = stack.back();
    stack.pop_back();
    if (visited[2 * v + dir]) continue;
    visited[2 * v + dir] = 1;
    if (!in_z[v] && in_y[v]) return false;

    if (dir == kUp && !in_z[v]) {
      for (NodeId p : g.parent_ids(v)) stack.emplace_back(p, kUp);
      for (NodeId c : g.child_ids(v)) stack.emplace_back(c, kDown);
    } else if (dir == kDown) {
      if (!in_z[v]) {
        for (NodeId c : g.child_ids(v)) stack.emplace_back(c, kDown);
      }
      if (open[v]) {
        for (NodeId p : g.parent_ids(v)) stack.emplace_back(p, kUp);
      }
    }
  }
  return true;
}

std::optional<Path> find_active_path(const Dag& g, const SeparationQuery& q, std::size_t cap) {
  const ResolvedQuery r = resolve_query(g, q);
  const NodeMask z = mask_of(g, r.z);
  const NodeMask open = open_collider_mask(g, r.z);
  for (NodeId x : r.x) {
    for (NodeId y : r.y) {
      for (const auto& p : simple_paths(g, x, y, false, cap)) {
        if (!blocked(p, z, open)) return to_path(g, p);
      }
    }
  }
  return std::nullopt;
}

bool is_d_separated_oracle(const Dag& g, const SeparationQuery& q, std::size_t cap) {
  return !find_active_path(g, q, cap).has_value();
}

std::vector<BackdoorPath> backdoor_paths(const Dag& g, const NodeSet& a_set, std::string_view y,
                                         std::size_t cap) {
  const auto treatments = resolve(g, a_set);
  const NodeId target = g.id(y);
  const NodeMask is_treatment = mask_of(g, treatments);
  if (is_treatment[target]) throw PreconditionError("outcome '" + std::string(y) + "' is a treatment");

  std::vector<BackdoorPath> out;
  for (NodeId a : treatments) {
    for (const auto& p : simple_paths(g, a, target, true, cap)) {
      BackdoorPath bp;
      bp.path = to_path(g, p);
      bp.through_other_treatment =
          std::any_of(p.nodes.begin() + 1, p.nodes.end(), [&](NodeId v) { return is_treatment[v]; });
      out.push_back(std::move(bp));
    }
  }
  return out;
}

namespace {

struct CriterionContext {
  std::vector<NodeId> treatments;
  NodeId outcome;
  NodeMask below_treatment;
  std::vector<IdPath> paths;
};

CriterionContext prepare_criterion(const Dag& g, const NodeSet& a_set, std::string_view y,
                                   std::size_t cap) {
  CriterionContext ctx;
  ctx.treatments = resolve(g, a_set);
  ctx.outcome = g.id(y);
  if (ctx.treatments.empty()) throw PreconditionError("treatment set is empty");
  if (std::binary_search(ctx.treatments.begin(), ctx.treatments.end(), ctx.outcome)) {
    throw PreconditionError("outcome '" + std::string(y) + "' is a treatment");
  }
  ctx.below_treatment = descendant_mask(g, ctx.treatments);
  for (NodeId a : ctx.treatments) {
    auto paths = simple_paths(g, a, ctx.outcome, true, cap);
    ctx.paths.insert(ctx.paths.end(), paths.begin(), paths.end());
  }
  return ctx;
}

CriterionReport evaluate_criterion(const Dag& g, const CriterionContext& ctx,
                                   const std::vector<NodeId>& l) {
  CriterionReport report;
  for (NodeId v : l) {
    if (ctx.below_treatment[v]) {
      report.no_descendants = false;
      report.descendant_members.push_back(g.label(v));
    }
  }
  const NodeMask z = mask_of(g, l);
  const NodeMask open = open_collider_mask(g, l);
  for (const auto& p : ctx.paths) {
    if (!blocked(p, z, open)) {
      report.blocks_backdoor = false;
      report.witness = to_path(g, p);
      break;
    }
  }
  return report;
}

}  // namespace

CriterionReport backdoor_criterion(const Dag& g, const NodeSet& a_set, std::string_view y,
                                   const NodeSet& l, std::size_t cap) {
  const auto l_ids = resolve(g, l);
  const auto treatments = resolve(g, a_set);
  const NodeId outcome = g.id(y);
  for (NodeId v : l_ids) {
    if (std::binary_search(treatments.begin(), treatments.end(), v)) {
      throw PreconditionError("adjustment set and treatment set share '" + g.label(v) + "'");
    }
    if (v == outcome) throw PreconditionError("outcome '" + g.label(v) + "' is in the adjustment set");
  }
  const auto ctx = prepare_criterion(g, a_set, y, cap);
  return evaluate_criterion(g, ctx, l_ids);
}

std::vector<AdmissibleSet> enumerate_admissible_sets(const Dag& g, const NodeSet& a_set,
                                                     std::string_view y,
                                                     const NodeSet& candidates,
                                                     std::size_t cap) {
  constexpr std::size_t kMaxCandidates = 20;
  const auto pool = resolve(g, candidates);
  const auto ctx = prepare_criterion(g, a_set, y, cap);
  for (NodeId v : pool) {
    if (v == ctx.outcome ||
        std::binary_search(ctx.treatments.begin(), ctx.treatments.end(), v)) {
      throw PreconditionError("candidate '" + g.label(v) + "' is a treatment or the outcome");
    }
  }
  if (pool.size() > kMaxCandidates) {
    throw CapacityError("admissible-set search", std::size_t{1} << pool.size(),
                        std::size_t{1} << kMaxCandidates);
  }

  std::vector<AdmissibleSet> out;
  std::vector<std::vector<NodeId>> found;
  const std::size_t n = pool.size();
  for (std::size_t k = 0; k <= n; ++k) {
    // Lexicographic k-combinations of pool positions.
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::vector<NodeId> subset;
      for (std::size_t i : pick) subset.push_back(pool[i]);
      if (evaluate_criterion(g, ctx, subset).holds()) {
        bool minimal = std::none_of(found.begin(), found.end(), [&](const auto& smaller) {
          return std::includes(subset.begin(), subset.end(), smaller.begin(), smaller.end());
        });
        out.push_back({labels_of(g, subset), minimal});
        found.push_back(subset);
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace cfsem
