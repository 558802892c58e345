#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "sporgen/census.hpp"
#include "sporgen/error.hpp"
#include "test_support.hpp"

using namespace sporgen;

TEST(Census, EnumerationMatchesClosure) {
  for (const char* name : {"s3", "a4", "a5", "psl2_7", "psl2_11", "m11"}) {
    const auto gens = group_gens(name);
    const auto chain = build_chain(gens, 1);
    for (unsigned threads : {1u, 3u}) {
      const auto census = order_census(chain, 1'000'000, threads);
      const auto expected = oracle::order_counts(oracle::closure(gens));
      ASSERT_EQ(census.counts.size(), expected.size()) << name;
      for (const auto& [r, n] : expected) EXPECT_EQ(census.count(r), from_u64(n)) << name << " order " << r;
      EXPECT_NO_THROW(check_census(census));
    }
  }
}

TEST(Census, A5) {
  const auto census = order_census(build_chain(group_gens("a5"), 1), 1000);
  EXPECT_EQ(census.count(1), 1);
  EXPECT_EQ(census.count(2), 15);
  EXPECT_EQ(census.count(3), 20);
  EXPECT_EQ(census.count(5), 24);
  EXPECT_EQ(census.count(7), 0);
}

TEST(Census, LimitExceeded) {
  EXPECT_THROW(order_census(build_chain(group_gens("j2"), 1), 1000), LimitExceeded);
}

TEST(Census, ConsistencyChecks) {
  OrderCensus c;
  c.group_order = 6;
  c.counts = {{1, 1}, {2, 3}, {3, 2}};
  EXPECT_NO_THROW(check_census(c));
  c.counts[2] = 2;
  EXPECT_THROW(check_census(c), IntegrityError);  // sum
  c.counts = {{1, 1}, {2, 1}, {4, 4}};
  EXPECT_THROW(check_census(c), IntegrityError);  // Lagrange
  c.counts = {{1, 2}, {2, 2}, {3, 2}};
  EXPECT_THROW(check_census(c), IntegrityError);  // identity
  c.group_order = 9;
  c.counts = {{1, 1}, {3, 7}, {9, 1}};
  EXPECT_THROW(check_census(c), IntegrityError);  // inverse pairing
}

TEST(Census, FromClassDataMatchesEnumeration) {
  for (const char* name : {"a5", "psl2_7", "psl2_11", "m11", "m12", "j1"}) {
    const auto data = load_class_data(data_path(std::string("classdata/") + name + ".json"));
    const auto from_table = census_from_table(data);
    const auto enumerated = order_census(build_chain(group_gens(name), 1), 1'000'000);
    EXPECT_EQ(from_table.group_order, enumerated.group_order) << name;
    EXPECT_EQ(from_table.counts, enumerated.counts) << name;
  }
}

TEST(Census, LargeGroupHeaders) {
  const auto co1 = census_from_table(load_class_data(data_path("classdata/co1.json")));
  EXPECT_EQ(co1.count(11), co1.group_order / 66);
  EXPECT_EQ(co1.count(23), 2 * co1.group_order / 23);
  EXPECT_EQ(co1.count(13), co1.group_order / 156);
  const BigInt order_co1("4157776806543360000");
  EXPECT_EQ(co1.count(2), order_co1 / BigInt("89181388800") + order_co1 / BigInt("2012774400") +
                              order_co1 / BigInt("389283840"));
  const auto j4 = census_from_table(load_class_data(data_path("classdata/j4.json")));
  EXPECT_EQ(j4.count(3), j4.group_order / 2661120);
  EXPECT_EQ(j4.count(43), 3 * j4.group_order / 43);
  const auto on = census_from_table(load_class_data(data_path("classdata/on.json")));
  EXPECT_EQ(on.count(7), on.group_order / 1372 + on.group_order / 49);
  for (const char* name : {"co1", "j4", "on", "ly", "th", "hn", "fi23", "he", "m24", "hs", "j3", "mcl"}) {
    const auto data = load_class_data(data_path(std::string("classdata/") + name + ".json"));
    if (data.complete) {
      EXPECT_NO_THROW(check_census(census_from_table(data))) << name;
    }
  }
}

TEST(Census, BadCentralizerIsRejected) {
  ConjugacyClassData d;
  d.group_order = 6;
  d.classes = {{"1A", 1, 6}, {"2A", 2, 4}};
  EXPECT_THROW(census_from_table(d), IntegrityError);
}

TEST(Census, ConjugacyClassesMatchBruteForce) {
  for (const char* name : {"s3", "a4", "a5", "psl2_7"}) {
    const auto gens = group_gens(name);
    const auto chain = build_chain(gens, 1);
    const auto classes = conjugacy_classes(chain, 1'000'000);
    const auto expected = oracle::classes(oracle::closure(gens));
    ASSERT_EQ(classes.classes.size(), expected.size()) << name;
    std::multiset<std::pair<std::uint64_t, std::uint64_t>> got, want;
    for (const auto& c : classes.classes) got.insert({c.element_order, to_u64(c.size)});
    for (const auto& c : expected) want.insert({oracle::order_by_powers(c[0]), c.size()});
    EXPECT_EQ(got, want) << name;
  }
}

TEST(Census, PairCount) {
  const auto census = order_census(build_chain(group_gens("a5"), 1), 1000);
  EXPECT_EQ(pair_count(census, 2, census, 5), 15 * 24);
  EXPECT_EQ(pair_count(census, 2, census, 7), 0);
}

TEST(Census, TruncatedClassDataReportsOffset) {
  const auto path = std::filesystem::temp_directory_path() / "sporgen_truncated_classes.json";
  {
    std::ofstream out(path);
    out << R"({"name": "X", "group_order": "6", "classes": [)";
  }
  try {
    load_class_data(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
  std::filesystem::remove(path);
}
