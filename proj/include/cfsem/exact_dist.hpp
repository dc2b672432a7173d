#pragma once

#include "cfsem/graph.hpp"
#include "cfsem/rational.hpp"
#include "cfsem/sem.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfsem {

/// Exact pmf over the joint values of an ordered set of variables. Cells are
/// stored row-major (last variable fastest); every cell exists, zero or not.
class ProbTable {
 public:
  ProbTable() = default;
  ProbTable(std::vector<std::string> scope, std::vector<Domain> domains);

  const std::vector<std::string>& scope() const { return scope_; }
  const std::vector<Domain>& domains() const { return domains_; }
  const std::vector<Rational>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }

  // Position of `label` in the scope; throws InputError when absent.
  std::size_t position(std::string_view label) const;
  bool contains(std::string_view label) const;

  std::size_t flat_index(std::span<const std::size_t> values) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  const Rational& at(std::span<const std::size_t> values) const;
  Rational& at(std::span<const std::size_t> values);
  const Rational& cell(std::size_t flat) const { return cells_[flat]; }
  Rational& cell(std::size_t flat) { return cells_[flat]; }

  Rational total() const;
  // Probability of the textual assignment, e.g. {{"Y", "1"}}; scope must cover it exactly.
  Rational probability(const std::vector<std::pair<std::string, std::string>>& assignment) const;

  friend bool operator==(const ProbTable&, const ProbTable&) = default;

 private:
  std::vector<std::string> scope_;
  std::vector<Domain> domains_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> cells_;
};

// Pushforward of the disturbance law through `read`, which maps a disturbance
// tuple to one value index per scope variable. Throws CapacityError when the
// weighted disturbance space exceeds the cap.
ProbTable pushforward(const SemModel& m, std::vector<std::string> scope, std::vector<Domain> domains,
                      const std::function<void(const State& u, std::vector<std::size_t>& out)>& read,
                      const EnumerationLimits& limits = {});

// P(V = v) over all nodes, scope in declaration order.
ProbTable exact_joint(const SemModel& m, const EnumerationLimits& limits = {});

// Scope follows the order of `t`.
ProbTable marginal(const ProbTable& t, const NodeSet& s);

using TextAssignment = std::vector<std::pair<std::string, std::string>>;

// P(target | given). Throws PositivityError when P(given) = 0.
ProbTable conditional(const ProbTable& t, const NodeSet& target, const TextAssignment& given);

// Exact X _||_ Y | Z: P(x,y,z) P(z) = P(x,z) P(y,z) for every cell.
bool check_ci(const ProbTable& t, const NodeSet& x, const NodeSet& y, const NodeSet& z);

// P(v) = prod_i P(v_i | v_pa(i)) at every v; terms with a zero parent
// marginal are consistent only where P(v) = 0.
bool check_markov(const ProbTable& t, const Dag& g);

// Every treatment level is reachable in every positive stratum of L.
bool check_positivity(const ProbTable& t, const NodeSet& a_set, const NodeSet& l);

// First stratum ell with P(L=ell) > 0 and P(A=a, L=ell) = 0 for the given
// level, rendered as text; nullopt when positivity holds at that level.
std::optional<std::string> positivity_violation(const ProbTable& t, const TextAssignment& level,
                                                const NodeSet& l);

// sum_ell P(Y=y | A=a, L=ell) P(L=ell), skipping strata with P(L=ell) = 0.
// Throws PositivityError naming the offending (a, ell).
ProbTable adjustment_formula(const ProbTable& observed, const Intervention& iv, std::string_view y,
                             const NodeSet& l);

// Marginal of exact_joint(surgery_new(m, iv)) on `targets`.
ProbTable counterfactual_dist(const SemModel& m, const Intervention& iv, const NodeSet& targets,
                              const EnumerationLimits& limits = {});
// Same quantity routed through surgery_pearl.
ProbTable counterfactual_dist_pearl(const SemModel& m, const Intervention& iv,
                                    const NodeSet& targets, const EnumerationLimits& limits = {});

}  // namespace cfsem
