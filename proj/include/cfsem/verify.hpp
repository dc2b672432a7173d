#pragma once

#include "cfsem/dsep.hpp"
#include "cfsem/exact_dist.hpp"
#include "cfsem/sem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfsem {

/// Counterexample to one of the pointwise identities between M, M_a and M^a.
struct LemmaWitness {
  // "pearl-vs-new": V_{a,i}(u) != V^a_i(u) for a non-intervened node
  // "treatment":    A^a(u) != A(u); for a treatment that descends from
  //                 another treatment, only on the event {A = a}
  // "non-descendant": V_i(u), V_{a,i}(u), V^a_i(u) not all equal off the descendants
  std::string clause;
  std::string node;
  State u;
};

struct LemmaReport {
  bool pearl_matches_new = true;
  bool treatment_unchanged = true;
  bool nondescendants_unchanged = true;
  std::size_t tuples_checked = 0;
  // First witness per failing clause.
  std::vector<LemmaWitness> counterexamples;

  bool passed() const { return pearl_matches_new && treatment_unchanged && nondescendants_unchanged; }
};

// Walks every disturbance tuple of the product space (probability ignored).
LemmaReport check_lemma_equalities(const SemModel& m, const Intervention& iv,
                                   const EnumerationLimits& limits = {});

// Same checks against caller-supplied surgeries; the entry point for
// mutation testing.
LemmaReport check_lemma_equalities(const SemModel& m, const Intervention& iv,
                                   const SemModel& pearl_model, const SemModel& new_model,
                                   const EnumerationLimits& limits = {});

struct ConsistencyReport {
  bool holds = true;
  std::size_t events_compared = 0;
  // A disturbance tuple lying in exactly one of the two events.
  std::optional<State> witness;
};

// {u : A^a(u) = a, W^a(u) = w} == {u : A(u) = a, W(u) = w} for every w.
// Throws PreconditionError when w meets the intervened set.
ConsistencyReport check_consistency_event(const SemModel& m, const Intervention& iv,
                                          const NodeSet& w, const EnumerationLimits& limits = {});

struct TheoremReport {
  CriterionReport criterion;
  bool positivity = false;
  std::optional<std::string> positivity_violation;
  bool ignorability = false;
  bool formula_equal = false;
  // Adjustment formula on the observed law; empty when positivity fails.
  std::optional<ProbTable> adjusted;
  ProbTable counterfactual;

  // criterion and positivity imply ignorability and the formula.
  bool confirmed() const {
    return !(criterion.holds() && positivity) || (ignorability && formula_equal);
  }
};

// Positivity is required only at the intervened level. Ignorability is
// Y_a _||_ A | L on the shared disturbance space, Y_a read off M^a.
TheoremReport check_backdoor_theorem(const SemModel& m, const Intervention& iv, std::string_view y,
                                     const NodeSet& l, const EnumerationLimits& limits = {});

// The factual joint extended with the counterfactual outcome: scope is
// a_set, l (declaration order) followed by "<y>_a".
ProbTable ignorability_table(const SemModel& m, const Intervention& iv, std::string_view y,
                             const NodeSet& l, const EnumerationLimits& limits = {});

struct FfrcistgReport {
  bool holds = true;
  std::size_t assignments_checked = 0;
  // Node assignment v at which the f_i(v_pa, U_i) fail to be independent.
  std::optional<State> witness;
};

// For every full node assignment v the variables f_i(v_pa(i), U_i) are
// mutually independent. Independent disturbance laws pass without enumeration.
FfrcistgReport check_ffrcistg(const SemModel& m, const EnumerationLimits& limits = {});

// check_ffrcistg and the Markov factorization on the surged model and graph.
// Throws PreconditionError when `m` itself fails check_ffrcistg.
bool check_ffrcistg_preserved(const SemModel& m, const Intervention& iv,
                              const EnumerationLimits& limits = {});

/// Deliberately broken surgeries used to show the checkers are not vacuous.
enum class Mutant {
  // M_a applies the constant to a child of the treatment instead.
  constant_on_wrong_node,
  // M^a plugs a different level into the children.
  wrong_level_in_children,
  // M^a also overwrites the treatment's own function.
  treatment_overwritten,
};

inline constexpr Mutant kAllMutants[] = {Mutant::constant_on_wrong_node,
                                         Mutant::wrong_level_in_children,
                                         Mutant::treatment_overwritten};

std::string_view to_string(Mutant mutant);

struct SurgeryPair {
  SemModel pearl;
  SemModel fresh;
};

// Single-node interventions only; the treatment needs a child and a domain of
// at least two values. Throws PreconditionError otherwise.
SurgeryPair mutant_surgeries(const SemModel& m, const Intervention& iv, Mutant mutant);

}  // namespace cfsem
