#include "cfsem/exact_dist.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <set>

namespace cfsem {

namespace {

// For every cell of `t`, the flat index of its projection onto `positions`.
std::vector<std::size_t> projection(const ProbTable& t, const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> sub_strides(positions.size());
  std::size_t stride = 1;
  for (std::size_t k = positions.size(); k > 0; --k) {
    sub_strides[k - 1] = stride;
    stride *= t.domains()[positions[k - 1]].size();
  }
  std::vector<std::size_t> out(t.cell_count());
  std::vector<std::size_t> values(t.scope().size(), 0);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) idx += values[positions[k]] * sub_strides[k];
    out[flat] = idx;
    for (std::size_t i = values.size(); i > 0; --i) {
      if (++values[i - 1] < t.domains()[i - 1].size()) break;
      values[i - 1] = 0;
    }
  }
  return out;
}

// Positions of `s` within the scope of `t`, in scope order. Rejects duplicates.
std::vector<std::size_t> positions_of(const ProbTable& t, const NodeSet& s) {
  std::vector<std::size_t> pos;
  for (const auto& v : s) pos.push_back(t.position(v));
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
    throw InputError("variable listed twice");
  }
  return pos;
}

ProbTable marginal_at(const ProbTable& t, const std::vector<std::size_t>& pos) {
  std::vector<std::string> scope;
  std::vector<Domain> domains;
  for (auto p : pos) {
    scope.push_back(t.scope()[p]);
    domains.push_back(t.domains()[p]);
  }
  ProbTable out(std::move(scope), std::move(domains));
  const auto proj = projection(t, pos);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    if (t.cell(flat) != 0) out.cell(proj[flat]) += t.cell(flat);
  }
  return out;
}

ProbTable zeros_like(const ProbTable& t) { return ProbTable(t.scope(), t.domains()); }

void require_disjoint(std::initializer_list<const std::vector<std::size_t>*> sets) {
  std::set<std::size_t> seen;
  for (const auto* s : sets) {
    for (auto p : *s) {
      if (!seen.insert(p).second) throw InputError("variable sets must be disjoint");
    }
  }
}

std::size_t value_position(const Domain& d, const std::string& text, const std::string& var) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].text() == text) return k;
  }
  throw InputError("value '" + text + "' is not in the domain of '" + var + "'");
}

std::string render(const ProbTable& t, std::span<const std::size_t> pos,
                   std::span<const std::size_t> values) {
  std::string out;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (k > 0) out += ", ";
    out += t.scope()[pos[k]] + "=" + t.domains()[pos[k]][values[k]].text();
  }
  return out;
}

}  // namespace

ProbTable::ProbTable(std::vector<std::string> scope, std::vector<Domain> domains)
    : scope_(std::move(scope)), domains_(std::move(domains)) {
  if (scope_.size() != domains_.size()) throw InputError("table scope and domains differ in length");
  std::set<std::string> names(scope_.begin(), scope_.end());
  if (names.size() != scope_.size()) throw InputError("table scope repeats a variable");
  strides_.assign(scope_.size(), 1);
  std::size_t count = 1;
  for (std::size_t k = scope_.size(); k > 0; --k) {
    if (domains_[k - 1].empty()) throw InputError("table variable with empty domain");
    strides_[k - 1] = count;
    count *= domains_[k - 1].size();
  }
  cells_.assign(count, Rational(0));
}

std::size_t ProbTable::position(std::string_view label) const {
  for (std::size_t k = 0; k < scope_.size(); ++k) {
    if (scope_[k] == label) return k;
  }
  throw InputError("variable '" + std::string(label) + "' is not in the table scope");
}

bool ProbTable::contains(std::string_view label) const {
  return std::find(scope_.begin(), scope_.end(), label) != scope_.end();
}

std::size_t ProbTable::flat_index(std::span<const std::size_t> values) const {
  if (values.size() != scope_.size()) throw InputError("assignment arity does not match the table");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= domains_[k].size()) throw InputError("value index out of range");
    flat += values[k] * strides_[k];
  }
  return flat;
}

std::vector<std::size_t> ProbTable::unflatten(std::size_t flat) const {
  std::vector<std::size_t> values(scope_.size());
  for (std::size_t k = 0; k < scope_.size(); ++k) {
    values[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return values;
}

const Rational& ProbTable::at(std::span<const std::size_t> values) const {
  return cells_[flat_index(values)];
}

Rational& ProbTable::at(std::span<const std::size_t> values) { return cells_[flat_index(values)]; }

Rational ProbTable::total() const {
  Rational sum = 0;
  for (const auto& c : cells_) sum += c;
  return sum;
}

Rational ProbTable::probability(const TextAssignment& assignment) const {
  if (assignment.size() != scope_.size()) {
    throw InputError("assignment must cover the table scope exactly");
  }
  std::vector<std::size_t> values(scope_.size(), 0);
  std::vector<char> set(scope_.size(), 0);
  for (const auto& [var, text] : assignment) {
    auto k = position(var);
    if (set[k]) throw InputError("variable '" + var + "' assigned twice");
    set[k] = 1;
    values[k] = value_position(domains_[k], text, var);
  }
  return at(values);
}

ProbTable pushforward(const SemModel& m, std::vector<std::string> scope, std::vector<Domain> domains,
                      const std::function<void(const State& u, std::vector<std::size_t>& out)>& read,
                      const EnumerationLimits& limits) {
  const std::size_t needed = m.disturbances().weighted_count();
  if (needed > limits.max_tuples) {
    throw CapacityError("disturbance enumeration", needed, limits.max_tuples);
  }
  ProbTable out(std::move(scope), std::move(domains));
  std::vector<std::size_t> values(out.scope().size());
  m.disturbances().for_each_weighted([&](const State& u, const Rational& p) {
    read(u, values);
    out.at(values) += p;
  });
  return out;
}

ProbTable exact_joint(const SemModel& m, const EnumerationLimits& limits) {
  return pushforward(m, m.dag().labels(), m.domains(),
                     [&m](const State& u, std::vector<std::size_t>& out) { out = m.evaluate(u); },
                     limits);
}

ProbTable marginal(const ProbTable& t, const NodeSet& s) { return marginal_at(t, positions_of(t, s)); }

ProbTable conditional(const ProbTable& t, const NodeSet& target, const TextAssignment& given) {
  auto target_pos = positions_of(t, target);
  NodeSet given_vars;
  for (const auto& [var, value] : given) given_vars.push_back(var);
  auto given_pos = positions_of(t, given_vars);
  require_disjoint({&target_pos, &given_pos});

  std::vector<std::size_t> given_values(t.scope().size(), 0);
  std::vector<char> constrained(t.scope().size(), 0);
  for (const auto& [var, text] : given) {
    auto k = t.position(var);
    constrained[k] = 1;
    given_values[k] = value_position(t.domains()[k], text, var);
  }

  ProbTable out = zeros_like(marginal_at(t, target_pos));
  Rational norm = 0;
  const auto proj = projection(t, target_pos);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    if (t.cell(flat) == 0) continue;
    auto values = t.unflatten(flat);
    bool match = true;
    for (std::size_t k = 0; k < values.size() && match; ++k) {
      match = !constrained[k] || values[k] == given_values[k];
    }
    if (!match) continue;
    out.cell(proj[flat]) += t.cell(flat);
    norm += t.cell(flat);
  }
  if (norm == 0) {
    std::string what;
    for (const auto& [var, text] : given) what += (what.empty() ? "" : ", ") + var + "=" + text;
    throw PositivityError("conditioning event {" + what + "} has probability zero");
  }
  for (std::size_t flat = 0; flat < out.cell_count(); ++flat) out.cell(flat) /= norm;
  return out;
}

bool check_ci(const ProbTable& t, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  auto xp = positions_of(t, x);
  auto yp = positions_of(t, y);
  auto zp = positions_of(t, z);
  require_disjoint({&xp, &yp, &zp});
  if (xp.empty() || yp.empty()) throw InputError("independence test needs non-empty x and y");

  std::vector<std::size_t> all;
  for (const auto* s : {&xp, &yp, &zp}) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  const ProbTable xyz = marginal_at(t, all);

  // Positions relative to the xyz table.
  auto relative = [&](const std::vector<std::size_t>& s) {
    std::vector<std::size_t> r;
    for (auto p : s) r.push_back(static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin()));
    return r;
  };
  std::vector<std::size_t> xz = relative(xp), yz = relative(yp);
  auto zr = relative(zp);
  xz.insert(xz.end(), zr.begin(), zr.end());
  yz.insert(yz.end(), zr.begin(), zr.end());
  std::sort(xz.begin(), xz.end());
  std::sort(yz.begin(), yz.end());

  const ProbTable pxz = marginal_at(xyz, xz);
  const ProbTable pyz = marginal_at(xyz, yz);
  const ProbTable pz = marginal_at(xyz, zr);
  const auto to_xz = projection(xyz, xz);
  const auto to_yz = projection(xyz, yz);
  const auto to_z = projection(xyz, zr);
  for (std::size_t flat = 0; flat < xyz.cell_count(); ++flat) {
    const Rational& p_z = pz.cell(to_z[flat]);
    if (p_z == 0) continue;
    if (xyz.cell(flat) * p_z != pxz.cell(to_xz[flat]) * pyz.cell(to_yz[flat])) return false;
  }
  return true;
}

bool check_markov(const ProbTable& t, const Dag& g) {
  if (t.scope().size() != g.size()) throw InputError("table scope does not match the graph's nodes");
  std::vector<std::size_t> pos_of_node(g.size());
  for (NodeId i = 0; i < g.size(); ++i) pos_of_node[i] = t.position(g.label(i));

  struct Factor {
    ProbTable family, parents;
    std::vector<std::size_t> to_family, to_parents;
  };
  std::vector<Factor> factors;
  for (NodeId i = 0; i < g.size(); ++i) {
    std::vector<std::size_t> pa;
    for (NodeId p : g.parent_ids(i)) pa.push_back(pos_of_node[p]);
    std::sort(pa.begin(), pa.end());
    std::vector<std::size_t> fam = pa;
    fam.push_back(pos_of_node[i]);
    std::sort(fam.begin(), fam.end());
    factors.push_back({marginal_at(t, fam), marginal_at(t, pa), projection(t, fam), projection(t, pa)});
  }

  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    Rational product = 1;
    bool undefined = false;
    for (const auto& f : factors) {
      const Rational& den = f.parents.cell(f.to_parents[flat]);
      if (den == 0) {
        undefined = true;
        break;
      }
      product *= f.family.cell(f.to_family[flat]);
      product /= den;
    }
    if (undefined) {
      if (t.cell(flat) != 0) return false;
      continue;
    }
    if (product != t.cell(flat)) return false;
  }
  return true;
}

bool check_positivity(const ProbTable& t, const NodeSet& a_set, const NodeSet& l) {
  auto ap = positions_of(t, a_set);
  auto lp = positions_of(t, l);
  require_disjoint({&ap, &lp});
  std::vector<std::size_t> all = ap;
  all.insert(all.end(), lp.begin(), lp.end());
  std::sort(all.begin(), all.end());
  const ProbTable al = marginal_at(t, all);
  std::vector<std::size_t> l_rel;
  for (auto p : lp) {
    l_rel.push_back(static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin()));
  }
  const ProbTable pl = marginal_at(al, l_rel);
  const auto to_l = projection(al, l_rel);
  for (std::size_t flat = 0; flat < al.cell_count(); ++flat) {
    if (pl.cell(to_l[flat]) > 0 && al.cell(flat) == 0) return false;
  }
  return true;
}

std::optional<std::string> positivity_violation(const ProbTable& t, const TextAssignment& level,
                                                const NodeSet& l) {
  NodeSet a_vars;
  for (const auto& [var, value] : level) a_vars.push_back(var);
  auto ap = positions_of(t, a_vars);
  auto lp = positions_of(t, l);
  require_disjoint({&ap, &lp});

  std::vector<std::size_t> a_values(t.scope().size(), 0);
  for (const auto& [var, text] : level) {
    auto k = t.position(var);
    a_values[k] = value_position(t.domains()[k], text, var);
  }
  const ProbTable pl = marginal_at(t, lp);
  ProbTable pal = zeros_like(pl);
  const auto to_l = projection(t, lp);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    if (t.cell(flat) == 0) continue;
    auto values = t.unflatten(flat);
    bool match = std::all_of(ap.begin(), ap.end(), [&](std::size_t k) { return values[k] == a_values[k]; });
    if (match) pal.cell(to_l[flat]) += t.cell(flat);
  }
  for (std::size_t flat = 0; flat < pl.cell_count(); ++flat) {
    if (pl.cell(flat) > 0 && pal.cell(flat) == 0) {
      std::string where;
      for (const auto& [var, text] : level) where += (where.empty() ? "" : ", ") + var + "=" + text;
      std::vector<std::size_t> all_pos(lp.size());
      for (std::size_t k = 0; k < lp.size(); ++k) all_pos[k] = k;
      auto lv = pl.unflatten(flat);
      std::string stratum = render(pl, all_pos, lv);
      if (!stratum.empty()) where += ", " + stratum;
      return where;
    }
  }
  return std::nullopt;
}

ProbTable adjustment_formula(const ProbTable& observed, const Intervention& iv, std::string_view y,
                             const NodeSet& l) {
  if (iv.settings.empty()) throw InputError("intervention is empty");
  auto ap = positions_of(observed, iv.nodes());
  auto lp = positions_of(observed, l);
  std::vector<std::size_t> yp{observed.position(y)};
  require_disjoint({&ap, &lp, &yp});

  if (auto bad = positivity_violation(observed, iv.settings, l)) {
    throw PositivityError("positivity fails at " + *bad);
  }

  std::vector<std::size_t> a_values(observed.scope().size(), 0);
  for (const auto& [var, text] : iv.settings) {
    auto k = observed.position(var);
    a_values[k] = value_position(observed.domains()[k], text, var);
  }

  // Accumulate P(y, a, ell) and P(a, ell) per stratum.
  const ProbTable pl = marginal_at(observed, lp);
  ProbTable pal = zeros_like(pl);
  ProbTable y_given(std::vector<std::string>{observed.scope()[yp[0]]},
                    std::vector<Domain>{observed.domains()[yp[0]]});
  std::vector<ProbTable> pyal(pl.cell_count(), y_given);
  const auto to_l = projection(observed, lp);
  for (std::size_t flat = 0; flat < observed.cell_count(); ++flat) {
    if (observed.cell(flat) == 0) continue;
    auto values = observed.unflatten(flat);
    bool match = std::all_of(ap.begin(), ap.end(), [&](std::size_t k) { return values[k] == a_values[k]; });
    if (!match) continue;
    pal.cell(to_l[flat]) += observed.cell(flat);
    pyal[to_l[flat]].cell(values[yp[0]]) += observed.cell(flat);
  }

  ProbTable out = y_given;
  for (std::size_t ell = 0; ell < pl.cell_count(); ++ell) {
    if (pl.cell(ell) == 0) continue;
    for (std::size_t v = 0; v < out.cell_count(); ++v) {
      out.cell(v) += pyal[ell].cell(v) / pal.cell(ell) * pl.cell(ell);
    }
  }
  return out;
}

namespace {

ProbTable targets_of(const SemModel& surged, const NodeSet& targets, const EnumerationLimits& limits) {
  const auto ids = resolve(surged.dag(), targets);
  if (ids.empty()) throw InputError("no target variables");
  std::vector<Domain> domains;
  for (NodeId v : ids) domains.push_back(surged.domain(v));
  return pushforward(surged, labels_of(surged.dag(), ids), std::move(domains),
                     [&](const State& u, std::vector<std::size_t>& out) {
                       const State s = surged.evaluate(u);
                       for (std::size_t k = 0; k < ids.size(); ++k) out[k] = s[ids[k]];
                     },
                     limits);
}

}  // namespace

ProbTable counterfactual_dist(const SemModel& m, const Intervention& iv, const NodeSet& targets,
                              const EnumerationLimits& limits) {
  return targets_of(surgery_new(m, iv), targets, limits);
}

ProbTable counterfactual_dist_pearl(const SemModel& m, const Intervention& iv,
                                    const NodeSet& targets, const EnumerationLimits& limits) {
  return targets_of(surgery_pearl(m, iv), targets, limits);
}

}  // namespace cfsem
