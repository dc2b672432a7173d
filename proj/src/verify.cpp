#include "cfsem/verify.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cfsem {

namespace {

void require_tuple_budget(const SemModel& m, const EnumerationLimits& limits) {
  const std::size_t needed = m.disturbances().tuple_count();
  if (needed > limits.max_tuples) throw CapacityError("disturbance enumeration", needed, limits.max_tuples);
}

// Intervention with values spelled exactly as in the model's domains.
Intervention canonical(const SemModel& m, const BoundIntervention& b) {
  Intervention iv;
  for (std::size_t k = 0; k < b.nodes.size(); ++k) {
    iv.settings.emplace_back(m.dag().label(b.nodes[k]), m.domain(b.nodes[k])[b.values[k]].text());
  }
  return iv;
}

std::string fresh_label(const Dag& g, std::string base) {
  while (g.find(base)) base += "'";
  return base;
}

}  // namespace

LemmaReport check_lemma_equalities(const SemModel& m, const Intervention& iv,
                                   const EnumerationLimits& limits) {
  return check_lemma_equalities(m, iv, surgery_pearl(m, iv), surgery_new(m, iv), limits);
}

LemmaReport check_lemma_equalities(const SemModel& m, const Intervention& iv,
                                   const SemModel& pearl_model, const SemModel& new_model,
                                   const EnumerationLimits& limits) {
  require_tuple_budget(m, limits);
  const auto b = bind(m, iv);
  const Dag& g = m.dag();
  const NodeMask below = descendant_mask(g, b.nodes);

  LemmaReport report;
  auto note = [&](bool& flag, const char* clause, NodeId node, const State& u) {
    if (flag) report.counterexamples.push_back({clause, g.label(node), u});
    flag = false;
  };

  auto at_level = [&](const State& s) {
    for (std::size_t k = 0; k < b.nodes.size(); ++k) {
      if (s[b.nodes[k]] != b.values[k]) return false;
    }
    return true;
  };

  m.disturbances().for_each_tuple([&](const State& u) {
    ++report.tuples_checked;
    const State factual = m.evaluate(u);
    const State pearl = pearl_model.evaluate(u);
    const State fresh = new_model.evaluate(u);
    // A treatment downstream of another treatment reads the fixed level in
    // M^a, so A^a = A is only claimed on the event {A = a} (equivalently {A^a = a}).
    const bool on_event = at_level(factual) || at_level(fresh);
    for (NodeId i = 0; i < g.size(); ++i) {
      if (b.contains(i)) {
        if ((!below[i] || on_event) && fresh[i] != factual[i]) {
          note(report.treatment_unchanged, "treatment", i, u);
        }
        continue;
      }
      if (pearl[i] != fresh[i]) note(report.pearl_matches_new, "pearl-vs-new", i, u);
      if (!below[i] && (factual[i] != pearl[i] || factual[i] != fresh[i])) {
        note(report.nondescendants_unchanged, "non-descendant", i, u);
      }
    }
  });
  return report;
}

ConsistencyReport check_consistency_event(const SemModel& m, const Intervention& iv,
                                          const NodeSet& w, const EnumerationLimits& limits) {
  require_tuple_budget(m, limits);
  const auto b = bind(m, iv);
  const auto w_ids = resolve(m.dag(), w);
  for (NodeId v : w_ids) {
    if (b.contains(v)) {
      throw PreconditionError("event variables must avoid the intervened set ('" + m.dag().label(v) +
                              "')");
    }
  }
  const SemModel surged = surgery_new(m, iv);

  // Event {A = a, W = w} for every w, as sets of tuple indices.
  using Events = std::map<State, std::set<std::size_t>>;
  Events factual_events, surged_events;
  std::vector<State> tuples;
  auto record = [&](Events& events, const State& s, std::size_t index) {
    for (std::size_t k = 0; k < b.nodes.size(); ++k) {
      if (s[b.nodes[k]] != b.values[k]) return;
    }
    State key;
    for (NodeId v : w_ids) key.push_back(s[v]);
    events[key].insert(index);
  };
  m.disturbances().for_each_tuple([&](const State& u) {
    const std::size_t index = tuples.size();
    tuples.push_back(u);
    record(factual_events, m.evaluate(u), index);
    record(surged_events, surged.evaluate(u), index);
  });

  ConsistencyReport report;
  std::set<State> keys;
  for (const auto& [k, _] : factual_events) keys.insert(k);
  for (const auto& [k, _] : surged_events) keys.insert(k);
  report.events_compared = keys.size();
  for (const auto& key : keys) {
    const auto& left = factual_events[key];
    const auto& right = surged_events[key];
    if (left == right) continue;
    report.holds = false;
    std::vector<std::size_t> diff;
    std::set_symmetric_difference(left.begin(), left.end(), right.begin(), right.end(),
                                  std::back_inserter(diff));
    report.witness = tuples[diff.front()];
    break;
  }
  return report;
}

ProbTable ignorability_table(const SemModel& m, const Intervention& iv, std::string_view y,
                             const NodeSet& l, const EnumerationLimits& limits) {
  const auto b = bind(m, iv);
  const Dag& g = m.dag();
  const NodeId outcome = g.id(y);
  NodeSet observed = labels_of(g, b.nodes);
  for (const auto& v : l) observed.push_back(v);
  auto ids = resolve(g, observed);
  const SemModel surged = surgery_new(m, iv);

  std::vector<std::string> scope = labels_of(g, ids);
  std::vector<Domain> domains;
  for (NodeId v : ids) domains.push_back(m.domain(v));
  scope.push_back(fresh_label(g, std::string(y) + "_a"));
  domains.push_back(m.domain(outcome));
  return pushforward(m, std::move(scope), std::move(domains),
                     [&](const State& u, std::vector<std::size_t>& out) {
                       const State factual = m.evaluate(u);
                       for (std::size_t k = 0; k < ids.size(); ++k) out[k] = factual[ids[k]];
                       out[ids.size()] = surged.evaluate(u)[outcome];
                     },
                     limits);
}

TheoremReport check_backdoor_theorem(const SemModel& m, const Intervention& iv, std::string_view y,
                                     const NodeSet& l, const EnumerationLimits& limits) {
  const auto b = bind(m, iv);
  const Intervention level = canonical(m, b);
  const NodeSet a_set = labels_of(m.dag(), b.nodes);

  TheoremReport report;
  report.criterion = backdoor_criterion(m.dag(), a_set, y, l);

  const ProbTable observed = exact_joint(m, limits);
  report.positivity_violation = positivity_violation(observed, level.settings, l);
  report.positivity = !report.positivity_violation.has_value();

  const ProbTable extended = ignorability_table(m, level, y, l, limits);
  report.ignorability = check_ci(extended, a_set, {extended.scope().back()}, l);

  report.counterfactual = counterfactual_dist(m, level, {std::string(y)}, limits);
  if (report.positivity) {
    report.adjusted = adjustment_formula(observed, level, y, l);
    report.formula_equal = *report.adjusted == report.counterfactual;
  }
  return report;
}

FfrcistgReport check_ffrcistg(const SemModel& m, const EnumerationLimits& limits) {
  FfrcistgReport report;
  const auto& dist = m.disturbances();
  if (dist.kind() == DisturbanceModel::Kind::independent) return report;

  const std::size_t n = m.size();
  std::size_t assignments = 1;
  for (const auto& d : m.domains()) assignments *= d.size();
  const std::size_t work = assignments * std::max<std::size_t>(dist.weighted_count(), 1);
  if (work > limits.max_tuples) throw CapacityError("FFRCISTG check", work, limits.max_tuples);

  std::vector<std::size_t> strides(n, 1);
  for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * m.domain(i).size();

  std::vector<Rational> joint(assignments);
  std::vector<std::vector<Rational>> marginals(n);
  State v(n, 0);
  State w(n, 0);
  for (std::size_t a = 0; a < assignments; ++a) {
    ++report.assignments_checked;
    for (auto& cell : joint) cell = 0;
    for (NodeId i = 0; i < n; ++i) marginals[i].assign(m.domain(i).size(), Rational(0));

    for (const auto& e : dist.entries()) {
      std::size_t flat = 0;
      for (NodeId i = 0; i < n; ++i) {
        w[i] = m.function(i)(v, e.u[i]);
        flat += w[i] * strides[i];
        marginals[i][w[i]] += e.p;
      }
      joint[flat] += e.p;
    }

    // Compare on the product of the marginal supports; elsewhere both sides vanish.
    std::vector<std::vector<std::size_t>> live(n);
    for (NodeId i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < marginals[i].size(); ++k) {
        if (marginals[i][k] != 0) live[i].push_back(k);
      }
    }
    std::vector<std::size_t> pos(n, 0);
    bool independent = true;
    for (bool done = false; !done && independent;) {
      std::size_t flat = 0;
      Rational product = 1;
      for (NodeId i = 0; i < n; ++i) {
        flat += live[i][pos[i]] * strides[i];
        product *= marginals[i][live[i][pos[i]]];
      }
      independent = joint[flat] == product;
      for (std::size_t i = n;;) {
        if (i == 0) {
          done = true;
          break;
        }
        --i;
        if (++pos[i] < live[i].size()) break;
        pos[i] = 0;
      }
    }
    if (!independent) {
      report.holds = false;
      report.witness = v;
      return report;
    }

    for (std::size_t i = n; i > 0; --i) {
      if (++v[i - 1] < m.domain(i - 1).size()) break;
      v[i - 1] = 0;
    }
  }
  return report;
}

bool check_ffrcistg_preserved(const SemModel& m, const Intervention& iv,
                              const EnumerationLimits& limits) {
  if (!check_ffrcistg(m, limits).holds) {
    throw PreconditionError("model does not satisfy the FFRCISTG independence condition");
  }
  const SemModel surged = surgery_new(m, iv);
  return check_ffrcistg(surged, limits).holds &&
         check_markov(exact_joint(surged, limits), surged.dag());
}

std::string_view to_string(Mutant mutant) {
  switch (mutant) {
    case Mutant::constant_on_wrong_node:
      return "constant-on-wrong-node";
    case Mutant::wrong_level_in_children:
      return "wrong-level-in-children";
    case Mutant::treatment_overwritten:
      return "treatment-overwritten";
  }
  return "unknown";
}

SurgeryPair mutant_surgeries(const SemModel& m, const Intervention& iv, Mutant mutant) {
  const auto b = bind(m, iv);
  if (b.nodes.size() != 1) throw PreconditionError("mutants are defined for single-node interventions");
  const NodeId a = b.nodes.front();
  const std::size_t level = b.values.front();
  const Dag& g = m.dag();

  switch (mutant) {
    case Mutant::constant_on_wrong_node: {
      if (g.child_ids(a).empty()) throw PreconditionError("treatment has no child");
      const NodeId child = g.child_ids(a).front();
      Intervention wrong{{{g.label(child), m.domain(child).front().text()}}};
      return {surgery_pearl(m, wrong), surgery_new(m, iv)};
    }
    case Mutant::wrong_level_in_children: {
      if (m.domain(a).size() < 2) throw PreconditionError("treatment domain has a single value");
      const std::size_t other = (level + 1) % m.domain(a).size();
      Intervention wrong{{{g.label(a), m.domain(a)[other].text()}}};
      return {surgery_pearl(m, iv), surgery_new(m, wrong)};
    }
    case Mutant::treatment_overwritten: {
      SemModel fresh = surgery_new(m, iv);
      auto functions = fresh.functions();
      const auto& f = functions[a];
      functions[a] = StructFn::constant(f.parents(), f.parent_sizes(), f.u_size(), f.out_size(), level);
      return {surgery_pearl(m, iv), SemModel(fresh.dag(), fresh.domains(), std::move(functions),
                                             fresh.disturbances(), fresh.model_class())};
    }
  }
  throw PreconditionError("unknown mutant");
}

}  // namespace cfsem
