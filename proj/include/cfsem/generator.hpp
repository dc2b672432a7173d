#pragma once

#include "cfsem/sem.hpp"

#include <cstdint>

namespace cfsem {

struct GeneratorProfile {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 7;
  std::size_t min_domain = 2;
  std::size_t max_domain = 3;
  std::size_t max_disturbance = 3;
  // Probability that a forward pair (i < j in declaration order) gets i -> j.
  double edge_probability = 0.5;
  // Dependent disturbances satisfying the FFRCISTG independence condition.
  bool ffrcistg = false;

  // Throws InputError on out-of-range bounds.
  void validate() const;
};

/// Seeded random model; identical seeds and profiles give identical models.
///
/// In the default profile every structural function is onto its domain for
/// each parent assignment and disturbance pmfs are strictly positive, so the
/// joint law charges every node assignment. The FFRCISTG profile picks a block
/// of nodes whose functions ignore their disturbance and draws a correlated
/// law for that block; the remaining disturbances stay independent.
SemModel generate_random_sem(std::uint64_t seed, const GeneratorProfile& profile = {});

}  // namespace cfsem
