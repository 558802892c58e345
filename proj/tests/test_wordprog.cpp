#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sporgen/error.hpp"
#include "sporgen/random.hpp"
#include "sporgen/stabilizer_chain.hpp"
#include "sporgen/wordprog.hpp"
#include "test_support.hpp"

using namespace sporgen;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path("wordprog"))) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(WordProgram, ParsesBasicProgram) {
  const auto prog = parse_program(
      "max:=[]; w1:=x; w2:=y;\n"
      "w3:=w1*w2; w4:=w3^-1*w2^5;\n"
      "Append(~max,sub<G|w1,w4>);\n");
  ASSERT_EQ(prog.emissions.size(), 1u);
  EXPECT_EQ(prog.emissions[0].a, 1u);
  EXPECT_EQ(prog.emissions[0].b, 4u);
  EXPECT_EQ(prog.register_count(), 4u);
  const auto& last = prog.instructions.back();
  EXPECT_EQ(last.target, 4u);
  ASSERT_EQ(last.factors.size(), 2u);
  EXPECT_EQ(last.factors[0].exponent, -1);
  EXPECT_EQ(last.factors[1].exponent, 5);
}

TEST(WordProgram, EvaluatesLeftToRight) {
  const auto x = Permutation::from_cycles(3, "(1,2)");
  const auto y = Permutation::from_cycles(3, "(2,3)");
  const auto prog = parse_program("w3:=w1*w2; w4:=w3^2; Append(~max,sub<G|w3,w4>);");
  const auto out = evaluate(prog, x, y);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first, compose(x, y));
  EXPECT_EQ(out[0].second, compose(compose(x, y), compose(x, y)));
}

TEST(WordProgram, EmissionSeesRegistersAtItsPosition) {
  const auto prog = parse_program("w3:=w1*w2; Append(~max,sub<G|w3,w2>); w3:=w2*w1; Append(~max,sub<G|w3,w1>);");
  const auto x = Permutation::from_cycles(4, "(1,2,3,4)");
  const auto y = Permutation::from_cycles(4, "(1,2)");
  const auto out = evaluate(prog, x, y);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].first, compose(x, y));
  EXPECT_EQ(out[1].first, compose(y, x));
}

TEST(WordProgram, CommentsAndLayoutAreIgnored) {
  const auto a = parse_program("w3:=w1*w2;Append(~max,sub<G|w3,w1>);");
  const auto b = parse_program("// header\n  w3 := w1 * w2 ;  // product\n\nAppend( ~max , sub< G | w3 , w1 > ) ;\n");
  EXPECT_EQ(a.instructions, b.instructions);
  EXPECT_EQ(a.emissions, b.emissions);
}

TEST(WordProgram, FirstOnBlock) {
  const auto prog = load_program(data_path("wordprog/on.slp"));
  ASSERT_FALSE(prog.emissions.empty());
  EXPECT_EQ(prog.emissions[0].a, 1u);
  EXPECT_EQ(prog.emissions[0].b, 2u);
  EXPECT_EQ(prog.emissions.size(), 13u);
}

TEST(WordProgram, StrictRejectsUnsupportedStatement) {
  try {
    parse_program("w3:=w1*w2;\nH:=Normalizer(G,V);\nAppend(~max,sub<G|w3,w1>);");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("Normalizer"), std::string::npos) << e.what();
  }
}

TEST(WordProgram, LenientSkipsUnsupportedStatement) {
  const auto prog = parse_program("w3:=w1*w2;\nH:=Normalizer(G,V);\nAppend(~max,sub<G|w3,w1>);", true);
  ASSERT_EQ(prog.skipped.size(), 1u);
  EXPECT_EQ(prog.skipped[0].line, 2u);
  EXPECT_EQ(prog.emissions.size(), 1u);
}

TEST(WordProgram, FullCo1ListingNeedsLenientMode) {
  const auto text = read_file(test_file("co1_full.txt"));
  EXPECT_THROW(parse_program(text), ParseError);
  const auto prog = parse_program(text, true);
  EXPECT_FALSE(prog.skipped.empty());
  EXPECT_GE(prog.emissions.size(), load_program(data_path("wordprog/co1.slp")).emissions.size());
  bool normalizer = false;
  for (const auto& s : prog.skipped) normalizer |= s.text.find("Normalizer") != std::string::npos;
  EXPECT_TRUE(normalizer);
}

TEST(WordProgram, RejectsBadPrograms) {
  EXPECT_THROW(parse_program("w3:=w5*w1;"), ParseError);
  EXPECT_THROW(parse_program("Append(~max,sub<G|w1,w9>);"), ParseError);
  EXPECT_THROW(parse_program("w3:=w1**w2;"), ParseError);
  std::string many;
  for (int r = 3; r <= 65; ++r) many += "w" + std::to_string(r) + ":=w1*w2;";
  EXPECT_THROW(parse_program(many), ParseError);
  many.clear();
  for (int r = 3; r <= 64; ++r) many += "w" + std::to_string(r) + ":=w1*w2;";
  EXPECT_EQ(parse_program(many).register_count(), 64u);
}

TEST(WordProgram, CorpusParsesStrictlyAndRoundTrips) {
  const auto files = corpus();
  ASSERT_EQ(files.size(), 11u);
  for (const auto& path : files) {
    const auto prog = load_program(path);
    EXPECT_FALSE(prog.emissions.empty()) << path;
    EXPECT_LE(prog.register_count(), kMaxRegisters) << path;
    const auto again = parse_program(format_program(prog));
    EXPECT_EQ(again.instructions, prog.instructions) << path;
    EXPECT_EQ(again.emissions, prog.emissions) << path;
  }
}

TEST(WordProgram, EvaluationCommutesWithConjugation) {
  const auto gens = group_gens("m12");
  const auto chain = StabilizerChain::build(gens);
  Rng rng(7);
  for (const auto& path : corpus()) {
    const auto prog = load_program(path);
    const auto g = chain.random_element(rng);
    const auto plain = evaluate(prog, gens[0], gens[1]);
    const auto moved = evaluate(prog, conjugate(gens[0], g), conjugate(gens[1], g));
    ASSERT_EQ(plain.size(), moved.size());
    for (std::size_t e = 0; e < plain.size(); ++e) {
      EXPECT_EQ(conjugate(plain[e].first, g), moved[e].first) << path;
      EXPECT_EQ(conjugate(plain[e].second, g), moved[e].second) << path;
    }
  }
}

TEST(WordProgram, M11MaximalOrders) {
  const auto gens = group_gens("m11");
  const auto out = evaluate(load_program(data_path("groups/m11/maximals.slp")), gens[0], gens[1]);
  const std::vector<long> orders{720, 660, 144, 120, 48};
  ASSERT_EQ(out.size(), orders.size());
  for (std::size_t e = 0; e < out.size(); ++e) {
    const std::vector<Permutation> pair{out[e].first, out[e].second};
    EXPECT_EQ(StabilizerChain::build(pair).order(), orders[e]) << e;
  }
}
