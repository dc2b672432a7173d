#include "cfsem/sem_io.hpp"

#include "cfsem/error.hpp"
#include "cfsem/graph_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cfsem {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return obj.at(key);
}

Value to_value(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) return Value(j.get<std::string>());
  fail(where, "values must be integers or strings, got " + j.dump());
}

Json from_value(const Value& v) {
  if (v.is_integer()) return v.as_integer();
  return v.as_string();
}

Domain to_domain(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of values");
  Domain d;
  for (const auto& item : j) d.push_back(to_value(item, where));
  return d;
}

std::size_t index_in(const Domain& d, const Json& j, const std::string& where) {
  Value v = to_value(j, where);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == v) return k;
  }
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].text() == v.text()) return k;
  }
  fail(where, "value " + j.dump() + " is not in the domain");
}

Rational to_probability(const Json& j, bool& had_float, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    had_float = true;
    std::string text = j.dump();
    if (text.find_first_of("eE") != std::string::npos) {
      fail(where, "write small probabilities as rational strings, got " + text);
    }
    return parse_rational(text);
  }
  fail(where, "probabilities must be rational strings or numbers, got " + j.dump());
}

// Float inputs may miss 1 by rounding; within 1e-12 they are renormalised.
void settle(std::vector<Rational>& pmf, bool had_float) {
  Rational total = 0;
  for (const auto& p : pmf) total += p;
  if (!had_float || total == 1 || total == 0) return;
  if (std::fabs(total.get_d() - 1.0) <= 1e-12) {
    for (auto& p : pmf) p /= total;
  }
}

void check_keys(const Json& obj, const Dag& g, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object keyed by node");
  for (const auto& [key, _] : obj.items()) {
    if (!g.find(key)) fail(where, "unknown node '" + key + "'");
  }
}

// Compact leaves, indented structure.
void pretty(const Json& j, std::ostringstream& out, int depth) {
  auto scalar_only = [](const Json& c) {
    for (const auto& item : c) {
      if (item.is_structured()) return false;
    }
    return true;
  };
  if (!j.is_structured() || j.empty() || depth >= 3 || scalar_only(j)) {
    out << j.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  out << (j.is_object() ? "{\n" : "[\n");
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out << ",\n";
    first = false;
    out << pad;
    if (j.is_object()) out << Json(it.key()).dump() << ": ";
    pretty(it.value(), out, depth + 1);
  }
  out << '\n' << close_pad << (j.is_object() ? "}" : "]");
}

Dag parse_graph(const Json& doc) {
  const auto& nodes_j = require(doc, "nodes", "document");
  if (!nodes_j.is_array()) fail("nodes", "expected an array of labels");
  std::vector<std::string> nodes;
  for (const auto& n : nodes_j) {
    if (!n.is_string() || !is_valid_label(n.get<std::string>())) {
      fail("nodes", "invalid node label " + n.dump());
    }
    nodes.push_back(n.get<std::string>());
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        fail("edges", "each edge must be a [tail, head] pair, got " + e.dump());
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return Dag(std::move(nodes), edges);
}

}  // namespace

SemModel parse_sem_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 0, e.byte);
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  Dag g = parse_graph(doc);
  const std::size_t n = g.size();

  const auto& domains_j = require(doc, "domains", "document");
  check_keys(domains_j, g, "domains");
  std::vector<Domain> domains(n);
  for (NodeId i = 0; i < n; ++i) {
    domains[i] = to_domain(require(domains_j, g.label(i).c_str(), "domains"), "domains." + g.label(i));
  }

  const auto& dist_j = require(doc, "disturbances", "document");
  std::vector<Domain> supports(n);
  const Json* supports_j = dist_j.contains("supports") ? &dist_j.at("supports") : nullptr;
  if (supports_j) check_keys(*supports_j, g, "disturbances.supports");
  for (NodeId i = 0; i < n; ++i) {
    if (supports_j && supports_j->contains(g.label(i))) {
      supports[i] = to_domain(supports_j->at(g.label(i)), "disturbances.supports." + g.label(i));
    } else {
      for (std::size_t k = 0; k < domains[i].size(); ++k) {
        supports[i].emplace_back(static_cast<std::int64_t>(k));
      }
    }
  }

  const bool has_ind = dist_j.contains("independent");
  const bool has_joint = dist_j.contains("joint");
  if (has_ind == has_joint) {
    fail("disturbances", "exactly one of 'independent' or 'joint' is required");
  }
  DisturbanceModel disturbances;
  if (has_ind) {
    const auto& ind = dist_j.at("independent");
    check_keys(ind, g, "disturbances.independent");
    std::vector<std::vector<Rational>> pmfs(n);
    for (NodeId i = 0; i < n; ++i) {
      const std::string where = "disturbances.independent." + g.label(i);
      const auto& list = require(ind, g.label(i).c_str(), "disturbances.independent");
      if (!list.is_array()) fail(where, "expected an array of probabilities");
      bool had_float = false;
      for (const auto& p : list) pmfs[i].push_back(to_probability(p, had_float, where));
      settle(pmfs[i], had_float);
    }
    disturbances = DisturbanceModel::independent(supports, std::move(pmfs));
  } else {
    const auto& joint = dist_j.at("joint");
    if (!joint.is_array()) fail("disturbances.joint", "expected an array of entries");
    std::vector<DisturbanceModel::JointEntry> entries;
    std::vector<Rational> probs;
    bool had_float = false;
    for (const auto& entry : joint) {
      const auto& u_j = require(entry, "u", "disturbances.joint");
      check_keys(u_j, g, "disturbances.joint.u");
      DisturbanceModel::JointEntry e;
      for (NodeId i = 0; i < n; ++i) {
        e.u.push_back(index_in(supports[i], require(u_j, g.label(i).c_str(), "disturbances.joint.u"),
                               "disturbances.joint.u." + g.label(i)));
      }
      probs.push_back(to_probability(require(entry, "p", "disturbances.joint"), had_float,
                                     "disturbances.joint.p"));
      entries.push_back(std::move(e));
    }
    settle(probs, had_float);
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k].p = probs[k];
    disturbances = DisturbanceModel::joint(supports, std::move(entries));
  }

  ModelClass model_class = disturbances.kind() == DisturbanceModel::Kind::independent
                               ? ModelClass::npsem_ie
                               : ModelClass::ffrcistg_candidate;
  if (doc.contains("mode")) {
    const auto& mode = doc.at("mode");
    if (mode == "NPSEM-IE") {
      model_class = ModelClass::npsem_ie;
    } else if (mode == "FFRCISTG") {
      model_class = ModelClass::ffrcistg_candidate;
    } else {
      fail("mode", "expected \"NPSEM-IE\" or \"FFRCISTG\", got " + mode.dump());
    }
  }

  const auto& fns_j = require(doc, "functions", "document");
  check_keys(fns_j, g, "functions");
  std::vector<StructFn> functions;
  for (NodeId i = 0; i < n; ++i) {
    const std::string where = "functions." + g.label(i);
    const auto& rows = require(fns_j, g.label(i).c_str(), "functions");
    if (!rows.is_array()) fail(where, "expected an array of rows");
    const auto& pa = g.parent_ids(i);
    std::vector<std::size_t> sizes;
    std::size_t total = supports[i].size();
    for (NodeId p : pa) {
      sizes.push_back(domains[p].size());
      total *= domains[p].size();
    }
    std::vector<std::size_t> table(total, 0);
    std::vector<char> filled(total, 0);
    for (const auto& row : rows) {
      const auto& pa_j = row.contains("pa") ? row.at("pa") : Json::object();
      if (!pa_j.is_object() || pa_j.size() != pa.size()) {
        fail(where, "row " + row.dump() + " must assign exactly the parents of '" + g.label(i) + "'");
      }
      std::size_t idx = 0;
      for (std::size_t k = 0; k < pa.size(); ++k) {
        const auto& pname = g.label(pa[k]);
        if (!pa_j.contains(pname)) fail(where, "row " + row.dump() + " misses parent '" + pname + "'");
        idx = idx * sizes[k] + index_in(domains[pa[k]], pa_j.at(pname), where + ".pa." + pname);
      }
      idx = idx * supports[i].size() + index_in(supports[i], require(row, "u", where), where + ".u");
      if (filled[idx]) fail(where, "duplicate row " + row.dump());
      filled[idx] = 1;
      table[idx] = index_in(domains[i], require(row, "out", where), where + ".out");
    }
    for (std::size_t k = 0; k < total; ++k) {
      if (!filled[k]) {
        fail(where, "table has " + std::to_string(rows.size()) + " rows, needs " +
                        std::to_string(total) + " (one per parent assignment and disturbance value)");
      }
    }
    functions.emplace_back(pa, sizes, supports[i].size(), domains[i].size(), std::move(table));
  }

  return SemModel(std::move(g), std::move(domains), std::move(functions), std::move(disturbances),
                  model_class);
}

std::string serialize_sem_json(const SemModel& m) {
  const Dag& g = m.dag();
  Json doc = Json::object();
  doc["nodes"] = g.labels();
  Json edges = Json::array();
  for (const auto& [t, h] : g.edges()) edges.push_back(Json::array({t, h}));
  doc["edges"] = edges;

  Json domains = Json::object();
  for (NodeId i = 0; i < g.size(); ++i) {
    Json d = Json::array();
    for (const auto& v : m.domain(i)) d.push_back(from_value(v));
    domains[g.label(i)] = d;
  }
  doc["domains"] = domains;
  doc["mode"] = std::string(to_string(m.model_class()));

  const auto& dist = m.disturbances();
  Json dist_j = Json::object();
  Json supports = Json::object();
  for (NodeId i = 0; i < g.size(); ++i) {
    Json s = Json::array();
    for (const auto& v : dist.support(i)) s.push_back(from_value(v));
    supports[g.label(i)] = s;
  }
  dist_j["supports"] = supports;
  if (dist.kind() == DisturbanceModel::Kind::independent) {
    Json ind = Json::object();
    for (NodeId i = 0; i < g.size(); ++i) {
      Json pmf = Json::array();
      for (const auto& p : dist.pmfs()[i]) pmf.push_back(to_string(p));
      ind[g.label(i)] = pmf;
    }
    dist_j["independent"] = ind;
  } else {
    Json joint = Json::array();
    for (const auto& e : dist.entries()) {
      Json u = Json::object();
      for (NodeId i = 0; i < g.size(); ++i) u[g.label(i)] = from_value(dist.support(i)[e.u[i]]);
      joint.push_back(Json{{"u", u}, {"p", to_string(e.p)}});
    }
    dist_j["joint"] = joint;
  }
  doc["disturbances"] = dist_j;

  Json fns = Json::object();
  for (NodeId i = 0; i < g.size(); ++i) {
    const auto& f = m.function(i);
    Json rows = Json::array();
    std::vector<std::size_t> pv(f.parents().size(), 0);
    const std::size_t configs = f.row_count() / f.u_size();
    for (std::size_t c = 0; c < configs; ++c) {
      std::size_t rest = c;
      for (std::size_t k = f.parents().size(); k > 0; --k) {
        pv[k - 1] = rest % f.parent_sizes()[k - 1];
        rest /= f.parent_sizes()[k - 1];
      }
      Json pa = Json::object();
      for (std::size_t k = 0; k < pv.size(); ++k) {
        pa[g.label(f.parents()[k])] = from_value(m.domain(f.parents()[k])[pv[k]]);
      }
      for (std::size_t u = 0; u < f.u_size(); ++u) {
        rows.push_back(Json{{"pa", pa},
                            {"u", from_value(dist.support(i)[u])},
                            {"out", from_value(m.domain(i)[f.table()[c * f.u_size() + u]])}});
      }
    }
    fns[g.label(i)] = rows;
  }
  doc["functions"] = fns;

  std::ostringstream out;
  pretty(doc, out, 0);
  out << '\n';
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SemModel load_sem_file(const std::filesystem::path& path) {
  try {
    return parse_sem_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

Dag load_graph_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), 0, e.byte);
    }
    return parse_graph(doc);
  }
  return parse_graph_text(text);
}

}  // namespace cfsem
