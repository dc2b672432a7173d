#include "cfsem/error.hpp"
#include "cfsem/exact_dist.hpp"
#include "cfsem/generator.hpp"
#include "cfsem/sem_io.hpp"
#include "cfsem/verify.hpp"

#include "support/corpus.hpp"

#include <gtest/gtest.h>

namespace cfsem {
namespace {

TEST(Generator, DeterministicInSeed) {
  EXPECT_EQ(generate_random_sem(1), generate_random_sem(1));
  EXPECT_EQ(serialize_sem_json(generate_random_sem(1)), serialize_sem_json(generate_random_sem(1)));
  EXPECT_NE(serialize_sem_json(generate_random_sem(1)), serialize_sem_json(generate_random_sem(2)));
}

TEST(Generator, SeedOneMatchesGoldenFile) {
  EXPECT_EQ(serialize_sem_json(generate_random_sem(1)), read_file(testing::golden("seed1.json")));
}

TEST(Generator, SingleNodeModel) {
  GeneratorProfile p;
  p.min_nodes = p.max_nodes = 1;
  const SemModel m = generate_random_sem(3, p);
  ASSERT_EQ(m.size(), 1u);
  // The joint is the pushforward of U_1 through f_1.
  ProbTable expected({"V1"}, {m.domain(0)});
  const auto& pmf = m.disturbances().pmfs()[0];
  for (std::size_t u = 0; u < pmf.size(); ++u) expected.cell(m.function(0).at({}, u)) += pmf[u];
  EXPECT_EQ(exact_joint(m), expected);
}

TEST(Generator, RejectsInvalidProfiles) {
  GeneratorProfile p;
  p.max_nodes = 11;
  EXPECT_THROW(generate_random_sem(0, p), InputError);
  p = {};
  p.min_nodes = 0;
  EXPECT_THROW(generate_random_sem(0, p), InputError);
  p = {};
  p.max_domain = 3;
  p.max_disturbance = 2;
  EXPECT_THROW(generate_random_sem(0, p), InputError);
  p = {};
  p.edge_probability = 1.5;
  EXPECT_THROW(generate_random_sem(0, p), InputError);
}

TEST(Generator, RespectsProfileBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SemModel m = generate_random_sem(seed);
    EXPECT_GE(m.size(), 2u);
    EXPECT_LE(m.size(), 7u);
    for (NodeId i = 0; i < m.size(); ++i) {
      EXPECT_LE(m.domain(i).size(), 3u);
      EXPECT_LE(m.disturbances().support(i).size(), 3u);
      for (const auto& p : m.disturbances().pmfs()[i]) EXPECT_GT(p, 0);
    }
  }
}

TEST(Generator, PositivityForEverySingletonTreatment) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SemModel m = generate_random_sem(seed);
    const ProbTable joint = exact_joint(m);
    for (const auto& a : m.dag().labels()) {
      EXPECT_TRUE(check_positivity(joint, {a}, testing::minus(m.dag().labels(), {a})))
          << "seed " << seed << " treatment " << a;
    }
  }
}

TEST(Generator, FfrcistgProfileIsDependentButPasses) {
  GeneratorProfile p;
  p.ffrcistg = true;
  std::size_t joint_laws = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SemModel m = generate_random_sem(seed, p);
    EXPECT_EQ(m.model_class(), ModelClass::ffrcistg_candidate);
    if (m.disturbances().kind() == DisturbanceModel::Kind::joint) ++joint_laws;
    EXPECT_TRUE(check_ffrcistg(m).holds) << "seed " << seed;
  }
  EXPECT_EQ(joint_laws, 50u);
}

}  // namespace
}  // namespace cfsem
