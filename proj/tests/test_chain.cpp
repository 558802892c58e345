#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sporgen/error.hpp"
#include "sporgen/stabilizer_chain.hpp"
#include "test_support.hpp"

using namespace sporgen;

namespace {

struct Known {
  const char* name;
  std::uint64_t order;
};

}  // namespace

class ChainOrder : public ::testing::TestWithParam<Known> {};

TEST_P(ChainOrder, MatchesKnownOrder) {
  const auto gens = group_gens(GetParam().name);
  for (std::uint64_t seed : {1, 2, 99}) {
    const auto chain = build_chain(gens, seed);
    EXPECT_EQ(chain.order(), from_u64(GetParam().order)) << "seed " << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Bundled, ChainOrder,
                         ::testing::Values(Known{"s3", 6}, Known{"a4", 12}, Known{"a5", 60},
                                           Known{"psl2_7", 168}, Known{"psl2_11", 660}, Known{"m11", 7920},
                                           Known{"m12", 95040}, Known{"m22", 443520}, Known{"j1", 175560},
                                           Known{"j2", 604800}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Chain, OrderMatchesClosureOnSmallGroups) {
  for (const char* name : {"s3", "a4", "a5", "psl2_7", "psl2_11", "m11"}) {
    const auto gens = group_gens(name);
    EXPECT_EQ(build_chain(gens, 1).order(), from_u64(oracle::closure(gens).size())) << name;
  }
}

TEST(Chain, MembershipAgreesWithClosure) {
  const auto gens = group_gens("a5");
  const auto chain = build_chain(gens, 1);
  const auto elements = oracle::closure(gens);
  for (const auto& g : elements) EXPECT_TRUE(chain.contains(g));
  // A transposition is odd, so never in A5.
  std::vector<Point> images(gens[0].degree());
  std::iota(images.begin(), images.end(), Point{0});
  std::swap(images[0], images[1]);
  EXPECT_FALSE(chain.contains(Permutation(images)));
}

TEST(Chain, RankUnrankRoundTrip) {
  const auto chain = build_chain(group_gens("psl2_7"), 3);
  std::set<std::uint64_t> ranks;
  for (std::uint64_t r = 0; r < 168; ++r) {
    const auto g = chain.unrank(r);
    EXPECT_TRUE(chain.contains(g));
    EXPECT_EQ(chain.rank(g), r);
    ranks.insert(r);
  }
  EXPECT_TRUE(chain.unrank(0).is_identity());
}

TEST(Chain, StreamVisitsEveryElementOnceInRankOrder) {
  const auto gens = group_gens("m11");
  const auto chain = build_chain(gens, 1);
  auto stream = enumerate_elements(chain, 10'000);
  std::unordered_set<Permutation> seen;
  std::uint64_t expected_rank = 0;
  while (stream.next()) {
    EXPECT_EQ(stream.current_rank(), expected_rank++);
    seen.insert(stream.current_permutation());
  }
  EXPECT_EQ(seen.size(), 7920u);

  ElementStream slice(chain, 100, 105);
  std::vector<std::uint64_t> got;
  while (slice.next()) {
    EXPECT_EQ(slice.current_permutation(), chain.unrank(slice.current_rank()));
    got.push_back(slice.current_rank());
  }
  EXPECT_EQ(got, (std::vector<std::uint64_t>{100, 101, 102, 103, 104}));
}

TEST(Chain, EnumerationRespectsLimit) {
  const auto chain = build_chain(group_gens("m12"), 1);
  EXPECT_THROW(enumerate_elements(chain, 1000), LimitExceeded);
}

TEST(Chain, RandomElementsAreMembers) {
  const auto chain = build_chain(group_gens("j1"), 1);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(chain.contains(random_element(chain, rng)));
}

TEST(Chain, BasePrefixIsHonoured) {
  const auto gens = group_gens("a5");
  ChainOptions options;
  options.base_prefix = {4, 3};
  const auto chain = StabilizerChain::build(gens, options);
  const auto base = chain.base();
  ASSERT_GE(base.size(), 2u);
  EXPECT_EQ(base[0], 4u);
  EXPECT_EQ(base[1], 3u);
  EXPECT_EQ(chain.order(), 60);
}

TEST(Chain, TrivialAndCyclicGroups) {
  const std::vector<Permutation> id{Permutation::identity(5)};
  EXPECT_EQ(build_chain(id, 1).order(), 1);
  const std::vector<Permutation> c{Permutation::from_cycles(6, "(1,2,3,4,5,6)")};
  EXPECT_EQ(build_chain(c, 1).order(), 6);
  EXPECT_THROW(build_chain(std::vector<Permutation>{}, 1), Error);
}

TEST(Chain, OrbitOf) {
  const std::vector<Permutation> gens{Permutation::from_cycles(6, "(1,2)(4,5)")};
  auto orbit = orbit_of(0, gens);
  std::sort(orbit.begin(), orbit.end());
  EXPECT_EQ(orbit, (std::vector<Point>{0, 1}));
}
