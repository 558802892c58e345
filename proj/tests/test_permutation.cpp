#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"
#include "sporgen/permutation.hpp"

using namespace sporgen;

TEST(Permutation, ComposeAppliesLeftFactorFirst) {
  const auto p = Permutation::from_cycles(3, "(1,2)");
  const auto q = Permutation::from_cycles(3, "(2,3)");
  // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1.
  EXPECT_EQ(compose(p, q).to_cycle_string(), "(1,3,2)");
  EXPECT_EQ(compose(q, p).to_cycle_string(), "(1,2,3)");
}

TEST(Permutation, InversePowerAndOrder) {
  const auto g = Permutation::from_cycles(7, "(1,2,3,4)(5,6)");
  EXPECT_TRUE(compose(g, inverse(g)).is_identity());
  EXPECT_EQ(power(g, 4), Permutation::identity(7));
  EXPECT_EQ(power(g, -1), inverse(g));
  EXPECT_EQ(power(g, 5), g);
  EXPECT_EQ(power(g, 0), Permutation::identity(7));
  EXPECT_EQ(element_order(g), 4u);
  EXPECT_EQ(element_order(g), oracle::order_by_powers(g));
}

TEST(Permutation, ConjugateIsRelabelling) {
  const auto p = Permutation::from_cycles(4, "(1,2,3)");
  const auto g = Permutation::from_cycles(4, "(1,4)");
  EXPECT_EQ(conjugate(p, g), compose(compose(inverse(g), p), g));
  EXPECT_EQ(conjugate(p, g).to_cycle_string(), "(2,3,4)");
}

TEST(Permutation, CycleNotation) {
  EXPECT_EQ(Permutation::from_cycles(5, "()").to_cycle_string(), "()");
  EXPECT_EQ(Permutation::from_cycles(5, "(1 2)(3 5 4)").to_cycle_string(), "(1,2)(3,5,4)");
  EXPECT_THROW(Permutation::from_cycles(3, "(1,4)"), ParseError);
  EXPECT_THROW(Permutation::from_cycles(3, "(1,2)(2,3)"), ParseError);
  EXPECT_THROW(Permutation::from_cycles(3, "1,2"), ParseError);
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 2}), Error);
  EXPECT_THROW(Permutation(std::vector<Point>{}), Error);
  EXPECT_THROW(compose(Permutation::identity(2), Permutation::identity(3)), Error);
}

TEST(PermIo, ParsesOneBasedImages) {
  const auto perms = parse_permutations("3 1\n2 1 3\n");
  ASSERT_EQ(perms.size(), 1u);
  EXPECT_EQ(perms[0].to_cycle_string(), "(1,2)");
}

TEST(PermIo, ReportsLineOfBadRow) {
  try {
    parse_permutations("3 1\n2 2 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "not a bijection at line 2");
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_permutations("3 2\n2 1 3\n"), ParseError);
  EXPECT_THROW(parse_permutations("3 1\n2 1\n"), ParseError);
  EXPECT_THROW(parse_permutations("3 1\n2 1 x\n"), ParseError);
  EXPECT_THROW(parse_permutations("three 1\n"), ParseError);
}

TEST(PermIo, RoundTrip) {
  const std::vector<Permutation> perms{Permutation::from_cycles(6, "(1,2,3)(4,6)"),
                                       Permutation::from_cycles(6, "(2,5)")};
  std::ostringstream out;
  write_permutations(out, perms);
  EXPECT_EQ(parse_permutations(out.str()), perms);
}
