// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "cfsem/dsep.hpp"
#include "cfsem/exact_dist.hpp"
#include "cfsem/generator.hpp"
#include "cfsem/sem_io.hpp"
#include "cfsem/verify.hpp"

#include "support/corpus.hpp"
#include "support/toy_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace cfsem {
namespace {

namespace t = testing;

constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kMultiCorpusSize = 100;
constexpr std::size_t kDagCount = 300;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0;  // 0: no runtime bound
};

GeneratorProfile corpus_profile() {
  GeneratorProfile p;
  p.max_nodes = 6;
  p.max_domain = 3;
  p.max_disturbance = 3;
  return p;
}

const std::vector<SemModel>& corpus() {
  static const std::vector<SemModel> models = [] {
    std::vector<SemModel> out;
    for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
      out.push_back(generate_random_sem(seed, corpus_profile()));
    }
    return out;
  }();
  return models;
}

std::string describe_model(std::size_t index) { return "corpus model " + std::to_string(index); }

// x, y of size 1 or 2 (x before y, disjoint) and z of size 0..2 from the rest.
std::vector<SeparationQuery> triples(const NodeSet& nodes) {
  std::vector<SeparationQuery> out;
  const auto sides = t::subsets(nodes, 1, 2);
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      if (t::minus(sides[j], sides[i]).size() != sides[j].size()) continue;
      const NodeSet rest = t::minus(t::minus(nodes, sides[i]), sides[j]);
      for (const auto& z : t::subsets(rest, 0, 2)) out.push_back({sides[i], sides[j], z});
    }
  }
  return out;
}

std::string text(const SeparationQuery& q) {
  auto set = [](const NodeSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    return out + "}";
  };
  return set(q.x) + " _||_ " + set(q.y) + " | " + set(q.z);
}

// ---------------------------------------------------------------------------

Outcome figure_fidelity() {
  Outcome o{.limit_seconds = 1.0};
  const Dag fig1 = t::figure1();
  const Dag fig2 = t::figure2();
  const Dag surged = remove_outgoing(fig1, {"A"});
  const bool same_edges = surged.edges() == fig2.edges() && surged.labels() == fig2.labels();
  const bool criterion = backdoor_criterion(fig1, {"A"}, "Y", {"L"}).holds();
  const bool separated = is_d_separated(fig2, {{"A"}, {"Y"}, {"L"}});
  o.pass = same_edges && criterion && separated;
  o.detail = std::string("surgery==Fig2 ") + (same_edges ? "yes" : "no") + ", criterion " +
             (criterion ? "holds" : "fails") + ", A _||_ Y | L in Fig2 " + (separated ? "yes" : "no");
  return o;
}

Outcome dsep_oracle() {
  Outcome o{.limit_seconds = 60.0};
  std::size_t queries = 0, disagreements = 0, separated = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < kDagCount; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const Dag g = t::random_dag(1000 + seed, n, 0.45);
    for (const auto& q : triples(g.labels())) {
      ++queries;
      const bool fast = is_d_separated(g, q);
      if (fast) ++separated;
      if (fast != is_d_separated_oracle(g, q)) {
        if (disagreements++ == 0) first = "dag " + std::to_string(seed) + ": " + text(q);
      }
    }
  }
  o.pass = disagreements == 0;
  o.detail = std::to_string(queries) + " queries over " + std::to_string(kDagCount) + " DAGs, " +
             std::to_string(separated) + " separated, " + std::to_string(disagreements) + " disagreements";
  if (!first.empty()) o.detail += " (first: " + first + ")";
  return o;
}

Outcome lemma_equalities() {
  Outcome o{.limit_seconds = 300.0};
  std::size_t checks = 0, failures = 0, tuples = 0;
  std::string first;
  auto run = [&](std::size_t index, const Intervention& iv) {
    const auto report = check_lemma_equalities(corpus()[index], iv);
    ++checks;
    tuples += report.tuples_checked;
    if (!report.passed() && failures++ == 0) {
      first = describe_model(index) + " do(" + iv.to_string() + ") clause " + report.counterexamples.front().clause;
    }
  };
  for (std::size_t i = 0; i < kCorpusSize; ++i) {
    for (const auto& iv : t::single_interventions(corpus()[i])) run(i, iv);
  }
  for (std::size_t i = 0; i < kMultiCorpusSize; ++i) {
    for (const auto& iv : t::pair_interventions(corpus()[i])) run(i, iv);
  }
  o.pass = failures == 0;
  o.detail = std::to_string(checks) + " interventions, " + std::to_string(tuples) + " disturbance tuples, " +
             std::to_string(failures) + " with counterexamples";
  if (!first.empty()) o.detail += " (first: " + first + ")";
  return o;
}

Outcome backdoor_theorem() {
  Outcome o;
  std::size_t positive = 0, holding_violations = 0, failing = 0, failing_unequal = 0, skipped_positivity = 0;
  std::string first;
  auto visit = [&](std::size_t index, const Intervention& iv) {
    const SemModel& m = corpus()[index];
    const NodeSet treated = iv.nodes();
    const NodeSet others = t::minus(m.dag().labels(), treated);
    for (const auto& y : others) {
      for (const auto& l : t::subsets(t::minus(others, {y}), 0, 2)) {
        const auto report = check_backdoor_theorem(m, iv, y, l);
        if (report.criterion.holds()) {
          if (!report.positivity) {
            ++skipped_positivity;
            continue;
          }
          ++positive;
          if (!(report.formula_equal && report.ignorability)) {
            if (holding_violations++ == 0) {
              first = describe_model(index) + " do(" + iv.to_string() + ") y=" + y;
            }
          }
        } else {
          ++failing;
          if (report.positivity && !report.formula_equal) ++failing_unequal;
        }
      }
    }
  };
  for (std::size_t i = 0; i < kCorpusSize; ++i) {
    for (const auto& iv : t::single_interventions(corpus()[i])) visit(i, iv);
  }
  for (std::size_t i = 0; i < kMultiCorpusSize; ++i) {
    for (const auto& iv : t::pair_interventions(corpus()[i])) visit(i, iv);
  }
  o.pass = holding_violations == 0 && positive >= 500 && failing_unequal >= 20;
  o.detail = std::to_string(positive) + " positive instances (need >= 500), " +
             std::to_string(holding_violations) + " violations; " + std::to_string(failing_unequal) + " of " +
             std::to_string(failing) + " criterion-failing instances show formula inequality (need >= 20)";
  if (skipped_positivity) o.detail += "; " + std::to_string(skipped_positivity) + " lacked positivity";
  if (!first.empty()) o.detail += " (first violation: " + first + ")";
  return o;
}

Outcome global_markov() {
  Outcome o;
  std::size_t implications = 0, violations = 0;
  std::string first;
  auto check = [&](const std::string& where, const Dag& g, const ProbTable& joint) {
    for (const auto& q : triples(g.labels())) {
      if (!is_d_separated(g, q)) continue;
      ++implications;
      if (!check_ci(joint, q.x, q.y, q.z) && violations++ == 0) first = where + ": " + text(q);
    }
  };
  for (std::size_t i = 0; i < kCorpusSize; ++i) {
    const SemModel& m = corpus()[i];
    check(describe_model(i), m.dag(), exact_joint(m));
    // One level per treatment node: the surged graph does not depend on the level.
    for (NodeId a = 0; a < m.size(); ++a) {
      const Intervention iv{{{m.dag().label(a), m.domain(a).front().text()}}};
      const SemModel fresh = surgery_new(m, iv);
      check(describe_model(i) + " do(" + iv.to_string() + ")", fresh.dag(), exact_joint(fresh));
    }
  }
  o.pass = violations == 0;
  o.detail = std::to_string(implications) + " d-separations checked against exact CI, " +
             std::to_string(violations) + " violations";
  if (!first.empty()) o.detail += " (first: " + first + ")";
  return o;
}

Outcome consistency_event() {
  Outcome o;
  std::size_t instances = 0, failures = 0;
  std::string first;
  for (std::size_t i = 0; i < kMultiCorpusSize; ++i) {
    const SemModel& m = corpus()[i];
    for (const auto& iv : t::pair_interventions(m)) {
      const NodeSet w = t::minus(m.dag().labels(), iv.nodes());
      ++instances;
      if (!check_consistency_event(m, iv, w).holds && failures++ == 0) {
        first = describe_model(i) + " do(" + iv.to_string() + ")";
      }
    }
  }
  o.pass = failures == 0 && instances > 0;
  o.detail = std::to_string(instances - failures) + "/" + std::to_string(instances) + " instances hold";
  if (!first.empty()) o.detail += " (first failure: " + first + ")";
  return o;
}

Outcome ffrcistg() {
  Outcome o;
  const SemModel dependent = load_sem_file(t::fixture("ffrcistg_dependent.json"));
  const SemModel violating = load_sem_file(t::fixture("ffrcistg_violating.json"));
  const bool dependent_passes = check_ffrcistg(dependent).holds;
  std::size_t preserved = 0, interventions = 0;
  auto ivs = t::single_interventions(dependent);
  for (const auto& iv : t::pair_interventions(dependent)) ivs.push_back(iv);
  for (const auto& iv : ivs) {
    ++interventions;
    if (check_ffrcistg_preserved(dependent, iv)) ++preserved;
  }
  const bool violating_fails = !check_ffrcistg(violating).holds;

  GeneratorProfile profile = corpus_profile();
  profile.ffrcistg = true;
  std::size_t corpus_pass = 0, corpus_preserved = 0, corpus_ivs = 0;
  constexpr std::size_t kProfileModels = 100;
  for (std::uint64_t seed = 0; seed < kProfileModels; ++seed) {
    const SemModel m = generate_random_sem(seed, profile);
    if (!check_ffrcistg(m).holds) continue;
    ++corpus_pass;
    for (const auto& iv : t::single_interventions(m)) {
      ++corpus_ivs;
      if (check_ffrcistg_preserved(m, iv)) ++corpus_preserved;
    }
  }
  o.pass = dependent_passes && preserved == interventions && violating_fails && corpus_pass == kProfileModels &&
           corpus_preserved == corpus_ivs;
  std::ostringstream d;
  d << "dependent fixture " << (dependent_passes ? "passes" : "fails") << ", preserved " << preserved << "/"
    << interventions << "; violating fixture " << (violating_fails ? "fails" : "passes") << "; profile "
    << corpus_pass << "/" << kProfileModels << " pass, preserved " << corpus_preserved << "/" << corpus_ivs;
  o.detail = d.str();
  return o;
}

Outcome toy_golden() {
  Outcome o;
  const SemModel m = t::toy_sem();
  const Rational y1 = counterfactual_dist(m, Intervention::parse("A=1"), {"Y"}).probability({{"Y", "1"}});
  const Rational y0 = counterfactual_dist(m, Intervention::parse("A=0"), {"Y"}).probability({{"Y", "1"}});
  const Rational cond =
      conditional(exact_joint(m), {"Y"}, {{"A", "1"}, {"L", "1"}}).probability({{"Y", "1"}});
  const bool oracle_agrees = y1 == t::toy::counterfactual(1, 1) && y0 == t::toy::counterfactual(0, 1) &&
                             cond == t::toy::conditional_y(1, 1, 1);
  o.pass = y1 == Rational(1, 2) && y0 == Rational(1, 10) && cond == Rational(9, 10) && oracle_agrees;
  o.detail = "P(Y_1=1)=" + to_string(y1) + ", P(Y_0=1)=" + to_string(y0) + ", P(Y=1|A=1,L=1)=" +
             to_string(cond) + (oracle_agrees ? ", oracle agrees" : ", ORACLE DISAGREES");
  return o;
}

Outcome mutants() {
  Outcome o;
  const SemModel m = t::toy_sem();
  const Intervention iv = Intervention::parse("A=1");
  std::vector<std::string> parts;
  for (Mutant mutant : kAllMutants) {
    const auto pair = mutant_surgeries(m, iv, mutant);
    const auto report = check_lemma_equalities(m, iv, pair.pearl, pair.fresh);
    bool caught = !report.passed() && !report.counterexamples.empty();
    std::string part = std::string(to_string(mutant)) + ": ";
    if (caught) {
      // The witness must reproduce: some evaluation differs at that tuple.
      const LemmaWitness& w = report.counterexamples.front();
      const NodeId node = m.dag().id(w.node);
      const State factual = m.evaluate(w.u), pearl = pair.pearl.evaluate(w.u), fresh = pair.fresh.evaluate(w.u);
      caught = factual[node] != fresh[node] || pearl[node] != fresh[node] || factual[node] != pearl[node];
      part += "caught (" + w.clause + " at " + w.node + ", u = " + format_disturbance(m, w.u) + ")";
    } else {
      part += "MISSED";
    }
    o.pass = o.pass && caught;
    parts.push_back(part);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
  return o;
}

}  // namespace
}  // namespace cfsem

int main() {
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    int number;
    const char* name;
    std::function<cfsem::Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "figure fidelity", cfsem::figure_fidelity},
      {2, "d-separation oracle equivalence", cfsem::dsep_oracle},
      {3, "pointwise surgery equalities", cfsem::lemma_equalities},
      {4, "back-door theorem, exact", cfsem::backdoor_theorem},
      {5, "global Markov property", cfsem::global_markov},
      {6, "consistency event equality", cfsem::consistency_event},
      {7, "FFRCISTG condition", cfsem::ffrcistg},
      {8, "toy model golden numbers", cfsem::toy_golden},
      {9, "mutation sensitivity", cfsem::mutants},
  };
  // Build the shared corpus up front so its cost is not charged to one criterion.
  cfsem::corpus();

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    cfsem::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.limit_seconds > 0 && seconds > o.limit_seconds) {
      o.pass = false;
      o.detail += "; exceeded " + std::to_string(o.limit_seconds) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.number, c.name, o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
