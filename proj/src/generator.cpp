#include "cfsem/generator.hpp"

#include "cfsem/error.hpp"

#include <algorithm>
#include <random>

namespace cfsem {

namespace {

constexpr std::size_t kNodeLimit = 10;
constexpr std::size_t kSizeLimit = 4;

// mt19937_64 output is fully specified, unlike the std distributions, so the
// draws below are identical on every platform.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }

  bool chance(double p) {
    constexpr std::uint64_t kScale = 1'000'000;
    return engine_() % kScale < static_cast<std::uint64_t>(p * static_cast<double>(kScale));
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[between(0, i - 1)]);
  }

  std::vector<Rational> pmf(std::size_t size) {
    std::vector<std::size_t> weights(size);
    std::size_t total = 0;
    for (auto& w : weights) total += (w = between(1, 9));
    std::vector<Rational> out;
    for (auto w : weights) {
      Rational p(static_cast<long>(w), static_cast<long>(total));
      p.canonicalize();
      out.push_back(p);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

Domain integer_domain(std::size_t size) {
  Domain d;
  for (std::size_t k = 0; k < size; ++k) d.emplace_back(static_cast<std::int64_t>(k));
  return d;
}

}  // namespace

void GeneratorProfile::validate() const {
  if (min_nodes < 1 || min_nodes > max_nodes || max_nodes > kNodeLimit) {
    throw InputError("generator: node count must satisfy 1 <= min <= max <= " + std::to_string(kNodeLimit));
  }
  if (min_domain < 1 || min_domain > max_domain || max_domain > kSizeLimit) {
    throw InputError("generator: domain size must satisfy 1 <= min <= max <= " + std::to_string(kSizeLimit));
  }
  if (max_disturbance < 1 || max_disturbance > kSizeLimit) {
    throw InputError("generator: disturbance size must lie in [1, " + std::to_string(kSizeLimit) + "]");
  }
  if (!ffrcistg && max_disturbance < max_domain) {
    throw InputError("generator: onto tables need disturbance size >= domain size");
  }
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw InputError("generator: edge probability must lie in [0, 1]");
  }
}

SemModel generate_random_sem(std::uint64_t seed, const GeneratorProfile& profile) {
  profile.validate();
  Draw draw(seed);

  const std::size_t n = draw.between(profile.min_nodes, profile.max_nodes);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("V" + std::to_string(i + 1));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (draw.chance(profile.edge_probability)) edges.emplace_back(labels[i], labels[j]);
    }
  }
  Dag dag(labels, edges);

  std::vector<Domain> domains;
  for (std::size_t i = 0; i < n; ++i) {
    domains.push_back(integer_domain(draw.between(profile.min_domain, profile.max_domain)));
  }

  // Nodes whose disturbances may be correlated (FFRCISTG profile only).
  std::vector<char> in_block(n, 0);
  if (profile.ffrcistg && n >= 2) {
    std::vector<NodeId> ids(n);
    for (NodeId i = 0; i < n; ++i) ids[i] = i;
    draw.shuffle(ids);
    const std::size_t k = draw.between(2, std::min<std::size_t>(3, n));
    for (std::size_t t = 0; t < k; ++t) in_block[ids[t]] = 1;
  }

  std::vector<Domain> supports;
  std::vector<StructFn> functions;
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t out = domains[i].size();
    std::size_t u_size;
    if (in_block[i]) {
      u_size = draw.between(std::min<std::size_t>(2, profile.max_disturbance), profile.max_disturbance);
    } else {
      u_size = draw.between(out, std::max(out, profile.max_disturbance));
    }
    supports.push_back(integer_domain(u_size));

    std::vector<std::size_t> sizes;
    std::size_t configs = 1;
    for (NodeId p : dag.parent_ids(i)) {
      sizes.push_back(domains[p].size());
      configs *= domains[p].size();
    }
    std::vector<std::size_t> table;
    table.reserve(configs * u_size);
    for (std::size_t c = 0; c < configs; ++c) {
      if (in_block[i]) {
        table.insert(table.end(), u_size, draw.between(0, out - 1));
        continue;
      }
      // Onto the domain for every parent assignment.
      std::vector<std::size_t> row(u_size);
      for (std::size_t u = 0; u < u_size; ++u) row[u] = u < out ? u : draw.between(0, out - 1);
      draw.shuffle(row);
      table.insert(table.end(), row.begin(), row.end());
    }
    functions.emplace_back(dag.parent_ids(i), sizes, u_size, out, std::move(table));
  }

  std::vector<std::vector<Rational>> pmfs;
  for (NodeId i = 0; i < n; ++i) pmfs.push_back(draw.pmf(supports[i].size()));

  if (!profile.ffrcistg) {
    return SemModel(std::move(dag), std::move(domains), std::move(functions),
                    DisturbanceModel::independent(std::move(supports), std::move(pmfs)),
                    ModelClass::npsem_ie);
  }

  // Correlated law on the block, independent of everything else.
  std::size_t block_cells = 1;
  for (NodeId i = 0; i < n; ++i) {
    if (in_block[i]) block_cells *= supports[i].size();
  }
  const auto block_pmf = draw.pmf(block_cells);
  std::vector<DisturbanceModel::JointEntry> entries;
  DisturbanceModel shape = DisturbanceModel::independent(supports, pmfs);
  shape.for_each_tuple([&](const State& u) {
    std::size_t block = 0;
    Rational p = 1;
    for (NodeId i = 0; i < n; ++i) {
      if (in_block[i]) {
        block = block * supports[i].size() + u[i];
      } else {
        p *= pmfs[i][u[i]];
      }
    }
    entries.push_back({u, p * block_pmf[block]});
  });
  return SemModel(std::move(dag), std::move(domains), std::move(functions),
                  DisturbanceModel::joint(std::move(supports), std::move(entries)),
                  ModelClass::ffrcistg_candidate);
}

}  // namespace cfsem
