#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "sporgen/bundle.hpp"
#include "sporgen/census.hpp"
#include "sporgen/error.hpp"
#include "sporgen/genprob.hpp"
#include "sporgen/maxbound.hpp"
#include "test_support.hpp"

using namespace sporgen;

namespace {

struct GroupData {
  GroupBundle bundle;
  StabilizerChain chain;
  OrderCensus census;
  std::vector<OrderCensus> censuses;
};

const GroupData& group_data(const std::string& name) {
  static std::map<std::string, GroupData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto bundle = load_bundle(name);
    auto chain = bundle_chain(bundle, 1);
    auto census = order_census(chain, 1000000);
    auto censuses = subgroup_censuses(bundle.maximals, chain, 1000000);
    it = cache.emplace(name, GroupData{std::move(bundle), std::move(chain), std::move(census), std::move(censuses)})
             .first;
  }
  return it->second;
}

Rational exact_probability(const std::string& name, std::uint64_t p) {
  const auto& g = group_data(name);
  return gen_probability(g.chain, conjugacy_classes(g.chain, 1000000), 2, p, {}).probability;
}

}  // namespace

TEST(MaxBound, CyclicSubgroupCensus) {
  const auto s3 = StabilizerChain::build(group_gens("s3"));
  MaximalSubgroupRecord rec;
  rec.name = "3";
  rec.order = 3;
  rec.generators = {Permutation::from_cycles(3, "(1,2,3)")};
  const auto census = subgroup_census(rec, s3, 100);
  EXPECT_EQ(census.counts, (std::map<std::uint64_t, BigInt>{{1, 1}, {3, 2}}));
  EXPECT_EQ(record_index(rec, s3.order()), 2);
}

TEST(MaxBound, J1MaximalCensusMatchesClosure) {
  const auto& j1 = group_data("j1");
  ASSERT_EQ(j1.bundle.maximals.size(), 7u);
  EXPECT_EQ(j1.bundle.maximals[0].name, "L2(11)");
  EXPECT_EQ(j1.censuses[0].count(2), 55);
  const auto gens = evaluate(*j1.bundle.maximals[0].program, j1.bundle.generators[0], j1.bundle.generators[1]);
  const auto counts = oracle::order_counts(oracle::closure({gens[0].first, gens[0].second}));
  for (const auto& [r, n] : counts) EXPECT_EQ(j1.censuses[0].count(r), from_u64(n)) << r;
}

TEST(MaxBound, WrongOrderIsIntegrityError) {
  const auto& j1 = group_data("j1");
  auto rec = j1.bundle.maximals[0];
  rec.order = 600;
  EXPECT_THROW(subgroup_census(rec, j1.chain, 1000000), IntegrityError);
  rec.order = 13;
  EXPECT_THROW(record_index(rec, j1.chain.order()), IntegrityError);
}

TEST(MaxBound, GeneratorOutsideGroupIsIntegrityError) {
  const auto a5 = StabilizerChain::build(group_gens("a5"));
  MaximalSubgroupRecord rec;
  rec.name = "odd";
  rec.order = 2;
  rec.generators = {Permutation::from_cycles(5, "(1,2)")};
  EXPECT_THROW(subgroup_census(rec, a5, 100), IntegrityError);
}

TEST(MaxBound, DegenerateLists) {
  const auto& j1 = group_data("j1");
  const auto empty = lower_bound(j1.census, {}, {}, 7);
  EXPECT_EQ(empty.bound, 1);
  MaximalSubgroupRecord self;
  self.name = "J1";
  self.order = j1.chain.order();
  self.census = j1.census;
  EXPECT_EQ(lower_bound(j1.census, {self}, {j1.census}, 7).bound, 0);
  EXPECT_THROW(lower_bound(j1.census, {self}, {}, 7), Error);
  EXPECT_THROW(lower_bound(j1.census, {}, {}, 13), Error);
}

TEST(MaxBound, J1SevenIsInformative) {
  const auto& j1 = group_data("j1");
  const auto result = lower_bound(j1.census, j1.bundle.maximals, j1.censuses, 7);
  EXPECT_TRUE(result.informative);
  EXPECT_GT(result.bound, 0);
  EXPECT_LE(result.bound, Rational(98565, 100000));
  EXPECT_EQ(result.bound, Rational(206, 209));
}

TEST(MaxBound, RemovingARecordNeverLowersTheBound) {
  for (const char* name : {"j1", "m11"}) {
    const auto& g = group_data(name);
    for (std::uint64_t p : {3, 5, 11}) {
      const auto full = lower_bound(g.census, g.bundle.maximals, g.censuses, p).bound;
      for (std::size_t drop = 0; drop < g.bundle.maximals.size(); ++drop) {
        auto records = g.bundle.maximals;
        auto censuses = g.censuses;
        records.erase(records.begin() + static_cast<long>(drop));
        censuses.erase(censuses.begin() + static_cast<long>(drop));
        EXPECT_GE(lower_bound(g.census, records, censuses, p).bound, full) << name << " " << p << " " << drop;
      }
    }
  }
}

TEST(MaxBound, NeverExceedsExactProportion) {
  for (const char* name : {"j1", "m11"}) {
    const auto& g = group_data(name);
    for (std::uint64_t p : {3, 5, 7, 11, 19}) {
      if (g.census.count(p) == 0) continue;
      const auto bound = lower_bound(g.census, g.bundle.maximals, g.censuses, p).bound;
      EXPECT_LE(bound, exact_probability(name, p)) << name << " " << p;
    }
  }
}

TEST(MaxBound, KnownValues) {
  const auto& m11 = group_data("m11");
  const auto at = [&](std::uint64_t p) { return lower_bound(m11.census, m11.bundle.maximals, m11.censuses, p).bound; };
  EXPECT_EQ(at(3), Rational(-15, 11));
  EXPECT_EQ(at(5), Rational(-1, 11));
  EXPECT_EQ(at(11), Rational(2, 3));
  const auto& j1 = group_data("j1");
  EXPECT_EQ(lower_bound(j1.census, j1.bundle.maximals, j1.censuses, 19).bound, Rational(76, 77));
}

TEST(MaxBound, ThreadedCensusesAgree) {
  const auto& j1 = group_data("j1");
  const auto threaded = subgroup_censuses(j1.bundle.maximals, j1.chain, 1000000, 3);
  ASSERT_EQ(threaded.size(), j1.censuses.size());
  for (std::size_t k = 0; k < threaded.size(); ++k) EXPECT_EQ(threaded[k].counts, j1.censuses[k].counts);
}
