#include "cfsem/sem.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>

namespace cfsem {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void check_pmf(const std::vector<Rational>& pmf, const std::string& what) {
  Rational total = 0;
  for (const auto& p : pmf) {
    if (p < 0) throw InputError(what + " has a negative probability");
    total += p;
  }
  if (total != 1) throw InputError(what + " sums to " + to_string(total) + ", not 1");
}

}  // namespace

std::string Value::text() const {
  return is_integer() ? std::to_string(as_integer()) : as_string();
}

// --- StructFn ---------------------------------------------------------------

StructFn::StructFn(std::vector<NodeId> parents, std::vector<std::size_t> parent_sizes,
                   std::size_t u_size, std::size_t out_size, std::vector<std::size_t> table)
    : parents_(std::move(parents)),
      parent_sizes_(std::move(parent_sizes)),
      u_size_(u_size),
      out_size_(out_size),
      table_(std::move(table)) {
  if (parents_.size() != parent_sizes_.size()) {
    throw InputError("structural function: parent list and parent sizes differ in length");
  }
  if (!std::is_sorted(parents_.begin(), parents_.end())) {
    throw InputError("structural function: parents must be in ascending id order");
  }
  if (u_size_ == 0 || out_size_ == 0) throw InputError("structural function: empty support");
  std::size_t rows = u_size_;
  for (auto s : parent_sizes_) {
    if (s == 0) throw InputError("structural function: empty parent domain");
    rows = saturating_mul(rows, s);
  }
  if (table_.size() != rows) {
    throw InputError("structural function: table has " + std::to_string(table_.size()) +
                     " rows, signature needs " + std::to_string(rows));
  }
  for (auto v : table_) {
    if (v >= out_size_) throw InputError("structural function: output outside the node domain");
  }
}

StructFn StructFn::constant(std::vector<NodeId> parents, std::vector<std::size_t> parent_sizes,
                            std::size_t u_size, std::size_t out_size, std::size_t value) {
  std::size_t rows = u_size;
  for (auto s : parent_sizes) rows *= s;
  return StructFn(std::move(parents), std::move(parent_sizes), u_size, out_size,
                  std::vector<std::size_t>(rows, value));
}

std::size_t StructFn::operator()(const State& nodes, std::size_t u) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < parents_.size(); ++k) idx = idx * parent_sizes_[k] + nodes[parents_[k]];
  return table_[idx * u_size_ + u];
}

std::size_t StructFn::at(std::span<const std::size_t> parent_values, std::size_t u) const {
  if (parent_values.size() != parents_.size() || u >= u_size_) {
    throw InputError("structural function: argument count or disturbance out of range");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < parents_.size(); ++k) {
    if (parent_values[k] >= parent_sizes_[k]) {
      throw InputError("structural function: parent value out of range");
    }
    idx = idx * parent_sizes_[k] + parent_values[k];
  }
  return table_[idx * u_size_ + u];
}

StructFn StructFn::fix(NodeId parent, std::size_t value) const {
  auto it = std::find(parents_.begin(), parents_.end(), parent);
  if (it == parents_.end()) throw InputError("structural function: fixed node is not a parent");
  const std::size_t k = static_cast<std::size_t>(it - parents_.begin());
  if (value >= parent_sizes_[k]) throw InputError("structural function: fixed value out of range");

  // Row-major layout: (outer block) x (parent k) x (inner block).
  std::size_t inner = u_size_;
  for (std::size_t j = k + 1; j < parents_.size(); ++j) inner *= parent_sizes_[j];
  const std::size_t outer = table_.size() / (inner * parent_sizes_[k]);

  std::vector<std::size_t> table;
  table.reserve(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    auto base = table_.begin() + static_cast<std::ptrdiff_t>((o * parent_sizes_[k] + value) * inner);
    table.insert(table.end(), base, base + static_cast<std::ptrdiff_t>(inner));
  }
  auto parents = parents_;
  auto sizes = parent_sizes_;
  parents.erase(parents.begin() + static_cast<std::ptrdiff_t>(k));
  sizes.erase(sizes.begin() + static_cast<std::ptrdiff_t>(k));
  return StructFn(std::move(parents), std::move(sizes), u_size_, out_size_, std::move(table));
}

bool StructFn::ignores_disturbance() const {
  for (std::size_t row = 0; row < table_.size(); row += u_size_) {
    for (std::size_t u = 1; u < u_size_; ++u) {
      if (table_[row + u] != table_[row]) return false;
    }
  }
  return true;
}

// --- DisturbanceModel -----------------------------------------------------

DisturbanceModel DisturbanceModel::independent(std::vector<Domain> supports,
                                               std::vector<std::vector<Rational>> pmfs) {
  if (supports.size() != pmfs.size()) {
    throw InputError("disturbances: one pmf per support required");
  }
  for (std::size_t i = 0; i < supports.size(); ++i) {
    if (supports[i].empty()) throw InputError("disturbances: empty support");
    if (pmfs[i].size() != supports[i].size()) {
      throw InputError("disturbances: pmf " + std::to_string(i) + " has " +
                       std::to_string(pmfs[i].size()) + " entries for a support of " +
                       std::to_string(supports[i].size()));
    }
    check_pmf(pmfs[i], "disturbance pmf " + std::to_string(i));
  }
  DisturbanceModel d;
  d.kind_ = Kind::independent;
  d.supports_ = std::move(supports);
  d.pmfs_ = std::move(pmfs);
  return d;
}

DisturbanceModel DisturbanceModel::joint(std::vector<Domain> supports,
                                         std::vector<JointEntry> entries) {
  for (const auto& s : supports) {
    if (s.empty()) throw InputError("disturbances: empty support");
  }
  std::map<State, Rational> merged;
  for (auto& e : entries) {
    if (e.u.size() != supports.size()) throw InputError("joint disturbance tuple has wrong arity");
    for (std::size_t i = 0; i < supports.size(); ++i) {
      if (e.u[i] >= supports[i].size()) throw InputError("joint disturbance value outside support");
    }
    if (e.p < 0) throw InputError("joint disturbance pmf has a negative probability");
    merged[e.u] += e.p;
  }
  DisturbanceModel d;
  d.kind_ = Kind::joint;
  d.supports_ = std::move(supports);
  Rational total = 0;
  for (auto& [u, p] : merged) {
    total += p;
    if (p != 0) d.entries_.push_back({u, p});
  }
  if (total != 1) throw InputError("joint disturbance pmf sums to " + to_string(total) + ", not 1");
  return d;
}

std::size_t DisturbanceModel::tuple_count() const {
  std::size_t n = 1;
  for (const auto& s : supports_) n = saturating_mul(n, s.size());
  return n;
}

std::size_t DisturbanceModel::weighted_count() const {
  if (kind_ == Kind::joint) return entries_.size();
  std::size_t n = 1;
  for (const auto& pmf : pmfs_) {
    n = saturating_mul(n, static_cast<std::size_t>(
                              std::count_if(pmf.begin(), pmf.end(), [](const Rational& p) { return p != 0; })));
  }
  return n;
}

void DisturbanceModel::for_each_tuple(const std::function<void(const State&)>& fn) const {
  const std::size_t n = supports_.size();
  State u(n, 0);
  while (true) {
    fn(u);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++u[i] < supports_[i].size()) break;
      u[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void DisturbanceModel::for_each_weighted(
    const std::function<void(const State&, const Rational&)>& fn) const {
  if (kind_ == Kind::joint) {
    for (const auto& e : entries_) fn(e.u, e.p);
    return;
  }
  const std::size_t n = supports_.size();
  std::vector<std::vector<std::size_t>> live(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < pmfs_[i].size(); ++k) {
      if (pmfs_[i][k] != 0) live[i].push_back(k);
    }
  }
  // prefix[i] = product of the first i chosen probabilities.
  std::vector<Rational> prefix(n + 1);
  prefix[0] = 1;
  std::vector<std::size_t> pos(n, 0);
  State u(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = live[i][0];
    prefix[i + 1] = prefix[i] * pmfs_[i][u[i]];
  }
  while (true) {
    fn(u, prefix[n]);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < live[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
    for (std::size_t j = i; j < n; ++j) {
      u[j] = live[j][pos[j]];
      prefix[j + 1] = prefix[j] * pmfs_[j][u[j]];
    }
  }
}

std::string_view to_string(ModelClass c) {
  return c == ModelClass::npsem_ie ? "NPSEM-IE" : "FFRCISTG";
}

// --- SemModel ---------------------------------------------------------------

SemModel::SemModel(Dag dag, std::vector<Domain> domains, std::vector<StructFn> functions,
                   DisturbanceModel disturbances, ModelClass model_class)
    : dag_(std::move(dag)),
      domains_(std::move(domains)),
      functions_(std::move(functions)),
      disturbances_(std::move(disturbances)),
      class_(model_class) {
  const std::size_t n = dag_.size();
  if (domains_.size() != n || functions_.size() != n || disturbances_.supports().size() != n) {
    throw InputError("model needs one domain, one function and one disturbance per node");
  }
  for (NodeId i = 0; i < n; ++i) {
    const auto& name = dag_.label(i);
    if (domains_[i].empty()) throw InputError("node '" + name + "' has an empty domain");
    std::set<std::string> texts;
    for (const auto& v : domains_[i]) {
      if (!texts.insert(v.text()).second) {
        throw InputError("node '" + name + "' repeats domain value '" + v.text() + "'");
      }
    }
    std::set<std::string> u_texts;
    for (const auto& v : disturbances_.support(i)) {
      if (!u_texts.insert(v.text()).second) {
        throw InputError("disturbance of '" + name + "' repeats value '" + v.text() + "'");
      }
    }
    const auto& f = functions_[i];
    if (f.parents() != dag_.parent_ids(i)) {
      throw InputError("function of '" + name + "' does not match its parent set in the graph");
    }
    for (std::size_t k = 0; k < f.parents().size(); ++k) {
      if (f.parent_sizes()[k] != domains_[f.parents()[k]].size()) {
        throw InputError("function of '" + name + "' has a parent domain of the wrong size");
      }
    }
    if (f.u_size() != disturbances_.support(i).size()) {
      throw InputError("function of '" + name + "' does not match its disturbance support");
    }
    if (f.out_size() != domains_[i].size()) {
      throw InputError("function of '" + name + "' does not match its domain");
    }
  }
  if (class_ == ModelClass::npsem_ie && disturbances_.kind() != DisturbanceModel::Kind::independent) {
    throw InputError("NPSEM-IE models require independent disturbances");
  }
}

State SemModel::evaluate(const State& u) const {
  if (u.size() != size()) throw InputError("disturbance tuple has wrong arity");
  State v(size(), 0);
  for (NodeId i : dag_.topological_ids()) {
    if (u[i] >= disturbances_.support(i).size()) {
      throw InputError("disturbance value outside the support of '" + dag_.label(i) + "'");
    }
    v[i] = functions_[i](v, u[i]);
  }
  return v;
}

std::size_t SemModel::value_index(NodeId node, std::string_view text) const {
  const auto& d = domain(node);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].text() == text) return k;
  }
  throw InputError("value '" + std::string(text) + "' is not in the domain of '" +
                   dag_.label(node) + "'");
}

// --- Interventions ---------------------------------------------------------

Intervention Intervention::parse(std::string_view text) {
  Intervention iv;
  text = trim(text);
  if (text.empty()) return iv;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = trim(text.substr(start, comma - start));
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("intervention item '" + std::string(item) + "' is not of the form NODE=VALUE");
    }
    auto node = trim(item.substr(0, eq));
    auto value = trim(item.substr(eq + 1));
    if (node.empty() || value.empty()) {
      throw InputError("intervention item '" + std::string(item) + "' is incomplete");
    }
    iv.settings.emplace_back(std::string(node), std::string(value));
    start = comma + 1;
  }
  return iv;
}

NodeSet Intervention::nodes() const {
  NodeSet out;
  for (const auto& [node, value] : settings) out.push_back(node);
  return out;
}

std::string Intervention::to_string() const {
  std::string out;
  for (const auto& [node, value] : settings) {
    if (!out.empty()) out += ",";
    out += node + "=" + value;
  }
  return out;
}

std::size_t BoundIntervention::value_for(NodeId node) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node) throw InputError("node is not intervened on");
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

bool BoundIntervention::contains(NodeId node) const {
  return std::binary_search(nodes.begin(), nodes.end(), node);
}

BoundIntervention bind(const SemModel& m, const Intervention& iv) {
  if (iv.settings.empty()) throw InputError("intervention is empty");
  std::vector<std::pair<NodeId, std::size_t>> pairs;
  for (const auto& [node, value] : iv.settings) {
    NodeId id = m.dag().id(node);
    pairs.emplace_back(id, m.value_index(id, value));
  }
  std::sort(pairs.begin(), pairs.end());
  BoundIntervention b;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0 && pairs[i].first == pairs[i - 1].first) {
      throw InputError("node '" + m.dag().label(pairs[i].first) + "' is intervened on twice");
    }
    b.nodes.push_back(pairs[i].first);
    b.values.push_back(pairs[i].second);
  }
  return b;
}

State evaluate_factual(const SemModel& m, const State& u) { return m.evaluate(u); }

SemModel surgery_pearl(const SemModel& m, const Intervention& iv) {
  const auto b = bind(m, iv);
  auto functions = m.functions();
  for (std::size_t k = 0; k < b.nodes.size(); ++k) {
    const auto& f = functions[b.nodes[k]];
    functions[b.nodes[k]] =
        StructFn::constant(f.parents(), f.parent_sizes(), f.u_size(), f.out_size(), b.values[k]);
  }
  return SemModel(m.dag(), m.domains(), std::move(functions), m.disturbances(), m.model_class());
}

SemModel surgery_new(const SemModel& m, const Intervention& iv) {
  const auto b = bind(m, iv);
  Dag surged = remove_outgoing(m.dag(), labels_of(m.dag(), b.nodes));
  auto functions = m.functions();
  for (NodeId i = 0; i < m.size(); ++i) {
    for (NodeId p : m.dag().parent_ids(i)) {
      if (b.contains(p)) functions[i] = functions[i].fix(p, b.value_for(p));
    }
  }
  return SemModel(std::move(surged), m.domains(), std::move(functions), m.disturbances(),
                  m.model_class());
}

TripleEvaluation evaluate_triple(const SemModel& m, const Intervention& iv, const State& u) {
  return {m.evaluate(u), surgery_pearl(m, iv).evaluate(u), surgery_new(m, iv).evaluate(u)};
}

std::string format_state(const SemModel& m, const State& s) {
  std::string out;
  for (NodeId i = 0; i < s.size(); ++i) {
    if (i > 0) out += ", ";
    out += m.dag().label(i) + "=" + m.domain(i).at(s[i]).text();
  }
  return out;
}

std::string format_disturbance(const SemModel& m, const State& u) {
  std::string out;
  for (NodeId i = 0; i < u.size(); ++i) {
    if (i > 0) out += ", ";
    out += "U_" + m.dag().label(i) + "=" + m.disturbances().support(i).at(u[i]).text();
  }
  return out;
}

}  // namespace cfsem
