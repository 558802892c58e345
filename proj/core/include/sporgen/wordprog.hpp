#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sporgen/permutation.hpp"

namespace sporgen {

// Straight-line programs over a pair of standard generators x, y:
//
//   max:=[]; w1:=x; w2:=y;
//   w3:=w1*w2; w4:=w3^-1*w2^5;
//   Append(~max,sub<G|w1,w4>);
//
// Registers are w1, w2, ...; w1 and w2 start out as x and y even without the
// seed statements. "max:=[]" is accepted and ignored. Whitespace, line breaks
// and // comments are insignificant.

inline constexpr std::size_t kMaxRegisters = 64;

struct WordFactor {
  enum class Source : std::uint8_t { X, Y, Register };
  Source source = Source::Register;
  std::uint32_t reg = 0;  // register number when source is Register
  std::int64_t exponent = 1;

  friend bool operator==(const WordFactor&, const WordFactor&) = default;
};

struct WordInstruction {
  std::uint32_t target = 0;
  std::vector<WordFactor> factors;

  friend bool operator==(const WordInstruction&, const WordInstruction&) = default;
};

// Subgroup generated by two registers, taken after the first `position`
// instructions have run.
struct WordEmission {
  std::size_t position = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const WordEmission&, const WordEmission&) = default;
};

struct SkippedStatement {
  std::size_t line = 0;
  std::string text;
};

struct WordProgram {
  std::vector<WordInstruction> instructions;
  std::vector<WordEmission> emissions;
  std::vector<std::size_t> instruction_lines;  // source line per instruction
  std::vector<SkippedStatement> skipped;       // lenient mode only

  // Distinct registers written or read, seeds included.
  std::size_t register_count() const;
};

// Strict mode throws ParseError naming the line of the first unsupported
// statement; lenient mode records it in skipped and carries on. Both throw on
// reads of registers that were never written and on more than kMaxRegisters
// registers.
WordProgram parse_program(std::string_view text, bool lenient = false);
WordProgram load_program(const std::filesystem::path& path, bool lenient = false);

// One statement per line; parses back to the same instructions and emissions.
std::string format_program(const WordProgram& program);

// One generator pair per emission. Throws Error on degree mismatch.
std::vector<std::pair<Permutation, Permutation>> evaluate(const WordProgram& program,
                                                         const Permutation& x,
                                                         const Permutation& y);

}  // namespace sporgen
