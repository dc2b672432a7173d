#include "cli.hpp"

#include "cfsem/dsep.hpp"
#include "cfsem/error.hpp"
#include "cfsem/exact_dist.hpp"
#include "cfsem/generator.hpp"
#include "cfsem/query.hpp"
#include "cfsem/sem_io.hpp"
#include "cfsem/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace cfsem::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  std::string format = "text";
  std::optional<std::size_t> cap;
  int precision = 12;
  EnumerationLimits limits;

  bool json() const { return format == "json"; }
};

// Text and structured renderings of one command's report, built side by side.
struct Report {
  std::ostringstream text;
  Json doc = Json::object();
};

NodeSet split_set(const std::string& text) {
  NodeSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

NodeSet split_all(const std::vector<std::string>& items) {
  NodeSet out;
  for (const auto& item : items) {
    for (auto& v : split_set(item)) out.push_back(std::move(v));
  }
  return out;
}

std::string braces(const NodeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i];
  return out + "}";
}

Json prob_json(const Rational& p, int precision) {
  return Json{{"p", to_string(p)}, {"approx", to_decimal(p, precision)}};
}

std::string cell_text(const ProbTable& t, std::size_t flat) {
  const auto values = t.unflatten(flat);
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += t.scope()[k] + "=" + t.domains()[k][values[k]].text();
  }
  return out;
}

void render_table(const ProbTable& t, const std::string& indent, int precision, std::ostream& text,
                  Json& rows) {
  rows = Json::array();
  for (std::size_t f = 0; f < t.cell_count(); ++f) {
    text << indent << cell_text(t, f) << ": " << describe(t.cell(f), precision) << "\n";
    Json row = Json::object();
    const auto values = t.unflatten(f);
    for (std::size_t k = 0; k < values.size(); ++k) row[t.scope()[k]] = t.domains()[k][values[k]].text();
    Json cell = prob_json(t.cell(f), precision);
    row["p"] = cell["p"];
    row["approx"] = cell["approx"];
    rows.push_back(std::move(row));
  }
}

std::string verdict(bool ok, const char* yes = "pass", const char* no = "fail") { return ok ? yes : no; }

// ---------------------------------------------------------------- dsep

struct DsepArgs {
  std::string graph;
  std::vector<std::string> x, y, z;
};

int cmd_dsep(const DsepArgs& a, const Settings&, Report& r) {
  const Dag g = load_graph_file(a.graph);
  SeparationQuery q{split_all(a.x), split_all(a.y), split_all(a.z)};
  const bool separated = is_d_separated(g, q);
  r.doc["command"] = "dsep";
  r.doc["x"] = q.x;
  r.doc["y"] = q.y;
  r.doc["z"] = q.z;
  r.doc["separated"] = separated;
  r.text << "query: " << braces(q.x) << " _||_ " << braces(q.y) << " | " << braces(q.z) << "\n";
  r.text << "verdict: " << (separated ? "d-separated" : "d-connected") << "\n";
  if (!separated) {
    auto witness = find_active_path(g, q);
    if (witness) {
      r.text << "witness: " << witness->to_string() << "\n";
      r.doc["witness"] = witness->to_string();
    }
  }
  return separated ? kPass : kFail;
}

// ---------------------------------------------------------------- backdoor

struct BackdoorArgs {
  std::string graph;
  std::vector<std::string> treatment;
  std::string outcome;
  std::vector<std::string> adjust;
  bool enumerate = false;
};

int cmd_backdoor(const BackdoorArgs& a, const Settings&, Report& r) {
  const Dag g = load_graph_file(a.graph);
  const NodeSet a_set = split_all(a.treatment);
  const NodeSet l = split_all(a.adjust);
  r.doc["command"] = "backdoor";
  r.doc["treatment"] = a_set;
  r.doc["outcome"] = a.outcome;
  r.text << "treatment: " << braces(a_set) << "\n";
  r.text << "outcome: " << a.outcome << "\n";

  if (a.enumerate) {
    NodeSet candidates = l;
    if (candidates.empty()) {
      for (const auto& v : g.labels()) {
        if (v != a.outcome && std::find(a_set.begin(), a_set.end(), v) == a_set.end()) {
          candidates.push_back(v);
        }
      }
    }
    const auto sets = enumerate_admissible_sets(g, a_set, a.outcome, candidates);
    r.text << "candidates: " << braces(candidates) << "\n";
    r.doc["candidates"] = candidates;
    Json found = Json::array();
    for (const auto& s : sets) {
      r.text << "admissible: " << braces(s.nodes) << (s.minimal ? " (minimal)" : "") << "\n";
      found.push_back(Json{{"set", s.nodes}, {"minimal", s.minimal}});
    }
    if (sets.empty()) r.text << "admissible: none\n";
    r.doc["admissible"] = std::move(found);
    return sets.empty() ? kFail : kPass;
  }

  const auto report = backdoor_criterion(g, a_set, a.outcome, l);
  r.doc["adjustment"] = l;
  r.text << "adjustment: " << braces(l) << "\n";
  r.text << "condition 1 (no member of L descends from the treatment): " << verdict(report.no_descendants);
  if (!report.no_descendants) r.text << ", descendants " << braces(report.descendant_members);
  r.text << "\n";
  r.text << "condition 2 (L blocks every back-door path): " << verdict(report.blocks_backdoor);
  if (report.witness) r.text << ", witness " << report.witness->to_string();
  r.text << "\n";

  Json paths = Json::array();
  const auto back = backdoor_paths(g, a_set, a.outcome);
  if (!back.empty()) r.text << "back-door paths:\n";
  for (const auto& bp : back) {
    const bool blocked = is_blocked(g, bp.path, l);
    r.text << "  " << bp.path.to_string() << "  " << (blocked ? "blocked" : "open") << "\n";
    paths.push_back(Json{{"path", bp.path.to_string()}, {"blocked", blocked}});
  }

  r.doc["condition1"] = report.no_descendants;
  r.doc["descendant_members"] = report.descendant_members;
  r.doc["condition2"] = report.blocks_backdoor;
  if (report.witness) r.doc["witness"] = report.witness->to_string();
  r.doc["backdoor_paths"] = std::move(paths);
  r.doc["holds"] = report.holds();

  r.text << "verdict: ";
  if (report.holds()) {
    r.text << "criterion holds\n";
  } else if (!report.no_descendants) {
    r.text << "criterion fails (condition 1, " << braces(report.descendant_members) << ")\n";
  } else {
    r.text << "criterion fails (condition 2, witness " << report.witness->to_string() << ")\n";
  }
  return report.holds() ? kPass : kFail;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string model;
  std::string intervention;
  std::optional<std::string> l;
  std::string outcome;
  bool all_lemmas = false;
  bool ffrcistg = false;
};

// "Y_1" for do(A=1); "Y_(1,0)" for several treatments.
std::string potential_outcome(const std::string& y, const Intervention& iv) {
  if (iv.settings.size() == 1) return y + "_" + iv.settings.front().second;
  std::string out = y + "_(";
  for (std::size_t i = 0; i < iv.settings.size(); ++i) out += (i ? "," : "") + iv.settings[i].second;
  return out + ")";
}

// First stratum (a', l) where P(Y_a | A=a', L=l) differs from P(Y_a | L=l).
std::optional<std::string> ignorability_evidence(const ProbTable& t, const NodeSet& l,
                                                  const std::string& ya_label, const std::string& ya_name,
                                                  int precision) {
  NodeSet cond_scope;
  for (const auto& v : t.scope()) {
    if (v != t.scope().back()) cond_scope.push_back(v);
  }
  const ProbTable strata = marginal(t, cond_scope);
  for (std::size_t f = 0; f < strata.cell_count(); ++f) {
    if (strata.cell(f) == 0) continue;
    const auto values = strata.unflatten(f);
    TextAssignment full, only_l;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto& name = strata.scope()[k];
      std::string value = strata.domains()[k][values[k]].text();
      full.emplace_back(name, value);
      if (std::find(l.begin(), l.end(), name) != l.end()) only_l.emplace_back(name, value);
    }
    const ProbTable given_a = conditional(t, {ya_label}, full);
    const ProbTable given_l = only_l.empty() ? marginal(t, {ya_label}) : conditional(t, {ya_label}, only_l);
    for (std::size_t c = 0; c < given_a.cell_count(); ++c) {
      if (given_a.cell(c) == given_l.cell(c)) continue;
      const std::string value = given_a.domains()[0][c].text();
      auto render = [](const TextAssignment& as) {
        std::string s;
        for (std::size_t i = 0; i < as.size(); ++i) s += (i ? ", " : "") + as[i].first + "=" + as[i].second;
        return s;
      };
      std::string out = "P(" + ya_name + "=" + value + " | " + render(full) + ") = " +
                        describe(given_a.cell(c), precision) + " but P(" + ya_name + "=" + value +
                        (only_l.empty() ? "" : " | " + render(only_l)) + ") = " +
                        describe(given_l.cell(c), precision);
      return out;
    }
  }
  return std::nullopt;
}

std::string default_outcome(const SemModel& m, const NodeSet& a_set) {
  const auto& labels = m.dag().labels();
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    if (std::find(a_set.begin(), a_set.end(), *it) == a_set.end()) return *it;
  }
  throw InputError("every node is intervened on; no outcome left");
}

Json witness_json(const LemmaWitness& w, const SemModel& m) {
  return Json{{"clause", w.clause}, {"node", w.node}, {"u", format_disturbance(m, w.u)}};
}

int cmd_verify(const VerifyArgs& a, const Settings& s, Report& r) {
  const SemModel m = load_sem_file(a.model);
  const Intervention iv = Intervention::parse(a.intervention);
  const auto bound = bind(m, iv);
  const NodeSet a_set = labels_of(m.dag(), bound.nodes);
  bool ok = true;

  r.doc["command"] = "verify";
  r.doc["model"] = a.model;
  r.doc["intervention"] = iv.to_string();
  r.text << "model: " << a.model << " (" << m.size() << " nodes, " << m.disturbances().tuple_count()
         << " disturbance tuples, " << to_string(m.model_class()) << ")\n";
  r.text << "intervention: do(" << iv.to_string() << ")\n";

  const auto lemmas = check_lemma_equalities(m, iv, s.limits);
  ok = ok && lemmas.passed();
  r.text << "lemma equalities: " << verdict(lemmas.passed()) << " (" << lemmas.tuples_checked << " tuples)\n";
  r.text << "  V_a = V^a off the treatment: " << verdict(lemmas.pearl_matches_new) << "\n";
  r.text << "  A^a = A: " << verdict(lemmas.treatment_unchanged) << "\n";
  r.text << "  non-descendants unchanged: " << verdict(lemmas.nondescendants_unchanged) << "\n";
  Json lemma_doc{{"passed", lemmas.passed()},
                 {"tuples_checked", lemmas.tuples_checked},
                 {"pearl_matches_new", lemmas.pearl_matches_new},
                 {"treatment_unchanged", lemmas.treatment_unchanged},
                 {"nondescendants_unchanged", lemmas.nondescendants_unchanged},
                 {"counterexamples", Json::array()}};
  for (const auto& w : lemmas.counterexamples) {
    r.text << "  witness: " << w.clause << " at " << w.node << ", u = (" << format_disturbance(m, w.u) << ")\n";
    lemma_doc["counterexamples"].push_back(witness_json(w, m));
  }
  r.doc["lemmas"] = std::move(lemma_doc);

  if (a.all_lemmas) {
    const NodeSet w = [&] {
      NodeSet out;
      for (const auto& v : m.dag().labels()) {
        if (std::find(a_set.begin(), a_set.end(), v) == a_set.end()) out.push_back(v);
      }
      return out;
    }();
    const auto consistency = check_consistency_event(m, iv, w, s.limits);
    ok = ok && consistency.holds;
    r.text << "consistency event (W = " << braces(w) << "): " << verdict(consistency.holds) << " ("
           << consistency.events_compared << " events)\n";
    Json doc{{"holds", consistency.holds}, {"w", w}, {"events_compared", consistency.events_compared}};
    if (consistency.witness) {
      r.text << "  witness: u = (" << format_disturbance(m, *consistency.witness) << ")\n";
      doc["witness"] = format_disturbance(m, *consistency.witness);
    }
    r.doc["consistency"] = std::move(doc);
  }

  if (a.l) {
    const NodeSet l = split_set(*a.l);
    const std::string y = a.outcome.empty() ? default_outcome(m, a_set) : a.outcome;
    const auto t = check_backdoor_theorem(m, iv, y, l, s.limits);
    const std::string ya = potential_outcome(y, iv);
    const bool theorem_ok = t.criterion.holds() && t.positivity && t.ignorability && t.formula_equal;
    ok = ok && theorem_ok;

    r.text << "back-door theorem (outcome " << y << ", L = " << braces(l) << "):\n";
    r.text << "  criterion: " << verdict(t.criterion.holds(), "holds", "fails");
    if (!t.criterion.no_descendants) {
      r.text << " (condition 1, " << braces(t.criterion.descendant_members) << ")";
    } else if (t.criterion.witness) {
      r.text << " (condition 2, witness " << t.criterion.witness->to_string() << ")";
    }
    r.text << "\n";
    r.text << "  positivity at " << iv.to_string() << ": " << verdict(t.positivity, "holds", "fails");
    if (t.positivity_violation) r.text << " (P(" << *t.positivity_violation << ") = 0)";
    r.text << "\n";
    r.text << "  ignorability (" << ya << " independent of " << braces(a_set) << " given " << braces(l)
           << "): " << verdict(t.ignorability, "holds", "violated") << "\n";
    std::optional<std::string> evidence;
    if (!t.ignorability) {
      const ProbTable table = ignorability_table(m, iv, y, l, s.limits);
      evidence = ignorability_evidence(table, l, table.scope().back(), ya, s.precision);
      if (evidence) r.text << "    " << *evidence << "\n";
    }
    r.text << "  adjustment formula equals P(" << ya << "): "
           << (t.adjusted ? verdict(t.formula_equal, "holds", "fails") : "not evaluated (positivity)") << "\n";
    for (std::size_t c = 0; c < t.counterfactual.cell_count(); ++c) {
      const std::string value = t.counterfactual.domains()[0][c].text();
      r.text << "  P(" << ya << "=" << value << ") = " << describe(t.counterfactual.cell(c), s.precision);
      if (t.adjusted) r.text << "; adjusted " << describe(t.adjusted->cell(c), s.precision);
      r.text << "\n";
    }
    r.text << "  theorem: " << (t.confirmed() ? "confirmed" : "CONTRADICTED") << "\n";

    Json doc{{"outcome", y},
             {"adjustment", l},
             {"criterion", t.criterion.holds()},
             {"positivity", t.positivity},
             {"ignorability", t.ignorability},
             {"formula_equal", t.formula_equal},
             {"confirmed", t.confirmed()}};
    if (t.criterion.witness) doc["witness"] = t.criterion.witness->to_string();
    if (t.positivity_violation) doc["positivity_violation"] = *t.positivity_violation;
    if (evidence) doc["ignorability_evidence"] = *evidence;
    Json rows;
    std::ostringstream sink;
    render_table(t.counterfactual, "", s.precision, sink, rows);
    doc["counterfactual"] = rows;
    if (t.adjusted) {
      render_table(*t.adjusted, "", s.precision, sink, rows);
      doc["adjusted"] = rows;
    }
    r.doc["theorem"] = std::move(doc);
  }

  if (a.ffrcistg) {
    const auto f = check_ffrcistg(m, s.limits);
    r.text << "FFRCISTG condition: " << verdict(f.holds) << " (" << f.assignments_checked << " assignments)\n";
    Json doc{{"holds", f.holds}, {"assignments_checked", f.assignments_checked}};
    if (f.witness) {
      r.text << "  witness: " << format_state(m, *f.witness) << "\n";
      doc["witness"] = format_state(m, *f.witness);
    }
    bool preserved = false;
    if (f.holds) {
      preserved = check_ffrcistg_preserved(m, iv, s.limits);
      r.text << "  preserved under do(" << iv.to_string() << "): " << verdict(preserved) << "\n";
      doc["preserved"] = preserved;
    }
    ok = ok && f.holds && preserved;
    r.doc["ffrcistg"] = std::move(doc);
  }

  r.doc["passed"] = ok;
  r.text << "verdict: " << verdict(ok) << "\n";
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- dist

struct DistArgs {
  std::string model;
  std::string query;
  std::string counterfactual;
};

int cmd_dist(const DistArgs& a, const Settings& s, Report& r) {
  if (a.query.empty() == a.counterfactual.empty()) {
    throw InputError("give exactly one of --query and --counterfactual");
  }
  const SemModel m = load_sem_file(a.model);
  const std::string text = a.query.empty() ? a.counterfactual : a.query;
  const Query q = parse_query(text);
  if (!a.counterfactual.empty() && !q.has_intervention()) {
    throw InputError("--counterfactual needs a do(...) clause");
  }
  const ProbTable t = evaluate_query(m, q, s.limits);
  r.doc["command"] = "dist";
  r.doc["query"] = text;
  r.text << "query: " << text << "\n";
  Json rows;
  render_table(t, "", s.precision, r.text, rows);
  r.doc["table"] = std::move(rows);
  return kPass;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::uint64_t seed = 0;
  std::optional<std::size_t> nodes;
  GeneratorProfile profile;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorProfile profile = a.profile;
  if (a.nodes) profile.min_nodes = profile.max_nodes = *a.nodes;
  const std::string doc = serialize_sem_json(generate_random_sem(a.seed, profile));
  if (a.output.empty()) {
    out << doc;
    return kPass;
  }
  std::ofstream file(a.output, std::ios::binary);
  if (!file) throw InputError("cannot write '" + a.output + "'");
  file << doc;
  if (!file) throw InputError("failed writing '" + a.output + "'");
  return kPass;
}

std::optional<std::size_t> env_cap() {
  const char* raw = std::getenv("CFSEM_ENUM_CAP");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || raw[0] == '-') throw InputError("CFSEM_ENUM_CAP must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite structural causal models: d-separation, surgeries and exact checks", "cfsem"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "cfsem 0.1.0");

  Settings settings;
  app.add_option("--format", settings.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cap", settings.cap, "Maximum number of disturbance tuples to enumerate")
      ->check(CLI::PositiveNumber);
  app.add_option("--precision", settings.precision, "Significant digits of decimal renderings")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();

  DsepArgs dsep;
  auto* dsep_cmd = app.add_subcommand("dsep", "Test X _||_ Y | Z in a graph");
  dsep_cmd->add_option("graph", dsep.graph, "Graph text or SEM file")->required();
  dsep_cmd->add_option("-x", dsep.x, "First node set (comma separated)")->required();
  dsep_cmd->add_option("-y", dsep.y, "Second node set")->required();
  dsep_cmd->add_option("-z", dsep.z, "Conditioning set");

  BackdoorArgs backdoor;
  auto* backdoor_cmd = app.add_subcommand("backdoor", "Check the back-door criterion");
  backdoor_cmd->add_option("graph", backdoor.graph, "Graph text or SEM file")->required();
  backdoor_cmd->add_option("-a,--treatment", backdoor.treatment, "Treatment set")->required();
  backdoor_cmd->add_option("-y,--outcome", backdoor.outcome, "Outcome node")->required();
  backdoor_cmd->add_option("-l,--l,--adjust", backdoor.adjust, "Adjustment set (candidates with --enumerate)");
  backdoor_cmd->add_flag("--enumerate", backdoor.enumerate, "List every admissible subset");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the surgery, consistency and back-door checks");
  verify_cmd->add_option("model", verify.model, "SEM file")->required();
  verify_cmd->add_option("-i,--intervention", verify.intervention, "do() settings, e.g. A=1,B=0")->required();
  verify_cmd->add_option("-l,--l", verify.l, "Adjustment set; runs the back-door theorem check");
  verify_cmd->add_option("-y,--outcome", verify.outcome, "Outcome node (default: last non-treated node)");
  verify_cmd->add_flag("--all-lemmas", verify.all_lemmas, "Also check the consistency event");
  verify_cmd->add_flag("--ffrcistg", verify.ffrcistg, "Check the FFRCISTG condition and its preservation");

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Exact marginal, conditional or interventional distribution");
  dist_cmd->add_option("model", dist.model, "SEM file")->required();
  dist_cmd->add_option("-q,--query", dist.query, "e.g. \"P(Y|A=1,L=0)\"");
  dist_cmd->add_option("-c,--counterfactual", dist.counterfactual, "e.g. \"Y | do(A=1)\"");

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write a seeded random SEM file");
  generate_cmd->add_option("--seed", generate.seed, "Generator seed")->capture_default_str();
  generate_cmd->add_option("--nodes", generate.nodes, "Exact node count")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--max-nodes", generate.profile.max_nodes, "Largest node count")->capture_default_str();
  generate_cmd->add_option("--max-domain", generate.profile.max_domain, "Largest domain size")->capture_default_str();
  generate_cmd->add_option("--max-disturbance", generate.profile.max_disturbance, "Largest disturbance support")
      ->capture_default_str();
  generate_cmd->add_option("--edge-prob", generate.profile.edge_probability, "Edge probability")
      ->capture_default_str();
  generate_cmd->add_flag("--ffrcistg", generate.profile.ffrcistg, "Dependent disturbances (FFRCISTG profile)");
  generate_cmd->add_option("-o,--output", generate.output, "Output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      err << sub->help();
    }
    return kInputError;
  }

  try {
    if (settings.cap) {
      settings.limits.max_tuples = *settings.cap;
    } else if (auto cap = env_cap()) {
      settings.limits.max_tuples = *cap;
    }

    if (generate_cmd->parsed()) return cmd_generate(generate, out);

    Report report;
    int code = kInputError;
    if (dsep_cmd->parsed()) code = cmd_dsep(dsep, settings, report);
    if (backdoor_cmd->parsed()) code = cmd_backdoor(backdoor, settings, report);
    if (verify_cmd->parsed()) code = cmd_verify(verify, settings, report);
    if (dist_cmd->parsed()) code = cmd_dist(dist, settings, report);
    report.doc["exit_code"] = code;
    if (settings.json()) {
      out << report.doc.dump(2) << "\n";
    } else {
      out << report.text.str();
    }
    return code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << " (raise --cap or CFSEM_ENUM_CAP)\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace cfsem::cli
