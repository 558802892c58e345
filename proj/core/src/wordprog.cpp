#include "sporgen/wordprog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <regex>
#include <set>

#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"

namespace sporgen {

namespace {

struct Statement {
  std::string text;  // whitespace removed
  std::string raw;   // as written, trimmed
  std::size_t line = 0;
};

// Splits on ';' after dropping // comments. A statement's line is the line of
// its first non-blank character.
std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  Statement current;
  std::size_t line = 1;
  bool in_comment = false;
  auto flush = [&] {
    const auto first = current.raw.find_first_not_of(" \t\r\n");
    if (first != std::string::npos) {
      const auto last = current.raw.find_last_not_of(" \t\r\n");
      current.raw = current.raw.substr(first, last - first + 1);
      out.push_back(current);
    }
    current = Statement{};
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      in_comment = false;
      ++line;
      current.raw += ' ';
      continue;
    }
    if (in_comment) continue;
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      in_comment = true;
      continue;
    }
    if (c == ';') {
      flush();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      current.raw += c;
      continue;
    }
    if (current.text.empty()) current.line = line;
    current.text += c;
    current.raw += c;
  }
  flush();
  return out;
}

std::uint32_t parse_register(std::string_view digits, std::size_t line) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
    throw ParseError("bad register name 'w" + std::string(digits) + "'", line);
  }
  return value;
}

std::vector<WordFactor> parse_product(const std::string& rhs, std::size_t line) {
  static const std::regex factor_re(R"((w(\d+)|x|y)(\^(-?\d+))?)");
  std::vector<WordFactor> factors;
  std::size_t pos = 0;
  while (true) {
    std::smatch m;
    const auto begin = rhs.begin() + static_cast<std::ptrdiff_t>(pos);
    if (!std::regex_search(begin, rhs.end(), m, factor_re, std::regex_constants::match_continuous)) {
      return {};
    }
    WordFactor f;
    if (m[1] == "x") {
      f.source = WordFactor::Source::X;
    } else if (m[1] == "y") {
      f.source = WordFactor::Source::Y;
    } else {
      f.reg = parse_register(m[2].str(), line);
    }
    if (m[4].matched) {
      const std::string e = m[4].str();
      const auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), f.exponent);
      if (ec != std::errc{} || ptr != e.data() + e.size()) throw ParseError("exponent out of range", line);
    }
    factors.push_back(f);
    pos += static_cast<std::size_t>(m.length(0));
    if (pos == rhs.size()) return factors;
    if (rhs[pos] != '*') return {};
    ++pos;
  }
}

}  // namespace

std::size_t WordProgram::register_count() const {
  std::set<std::uint32_t> regs{1, 2};
  for (const auto& ins : instructions) {
    regs.insert(ins.target);
    for (const auto& f : ins.factors) {
      if (f.source == WordFactor::Source::Register) regs.insert(f.reg);
    }
  }
  return regs.size();
}

WordProgram parse_program(std::string_view text, bool lenient) {
  static const std::regex assign_re(R"(w(\d+):=(.+))");
  static const std::regex append_re(R"(Append\(~max,sub<G\|w(\d+),w(\d+)>\))");

  WordProgram program;
  std::set<std::uint32_t> written{1, 2};
  std::set<std::uint32_t> seen{1, 2};
  auto note_register = [&](std::uint32_t r, std::size_t line) {
    seen.insert(r);
    if (seen.size() > kMaxRegisters) {
      throw ParseError("more than " + std::to_string(kMaxRegisters) + " registers", line);
    }
  };
  auto require_written = [&](std::uint32_t r, std::size_t line) {
    if (!written.count(r)) throw ParseError("register w" + std::to_string(r) + " read before it is written", line);
  };

  for (const auto& st : split_statements(text)) {
    std::smatch m;
    if (st.text == "max:=[]") continue;
    if (std::regex_match(st.text, m, assign_re)) {
      auto factors = parse_product(m[2].str(), st.line);
      if (!factors.empty()) {
        WordInstruction ins;
        ins.target = parse_register(m[1].str(), st.line);
        for (const auto& f : factors) {
          if (f.source == WordFactor::Source::Register) {
            require_written(f.reg, st.line);
            note_register(f.reg, st.line);
          }
        }
        note_register(ins.target, st.line);
        written.insert(ins.target);
        ins.factors = std::move(factors);
        program.instructions.push_back(std::move(ins));
        program.instruction_lines.push_back(st.line);
        continue;
      }
    } else if (std::regex_match(st.text, m, append_re)) {
      WordEmission e;
      e.position = program.instructions.size();
      e.a = parse_register(m[1].str(), st.line);
      e.b = parse_register(m[2].str(), st.line);
      require_written(e.a, st.line);
      require_written(e.b, st.line);
      program.emissions.push_back(e);
      continue;
    }
    if (!lenient) throw ParseError("unsupported statement '" + st.raw + "'", st.line);
    program.skipped.push_back({st.line, st.raw});
  }
  return program;
}

WordProgram load_program(const std::filesystem::path& path, bool lenient) {
  const std::string text = read_text_file(path);
  try {
    return parse_program(text, lenient);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_program(const WordProgram& program) {
  auto factor_text = [](const WordFactor& f) {
    std::string s;
    switch (f.source) {
      case WordFactor::Source::X: s = "x"; break;
      case WordFactor::Source::Y: s = "y"; break;
      case WordFactor::Source::Register: s = "w" + std::to_string(f.reg); break;
    }
    if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
    return s;
  };
  std::string out;
  std::size_t next_emission = 0;
  auto emit_until = [&](std::size_t position) {
    while (next_emission < program.emissions.size() && program.emissions[next_emission].position <= position) {
      const auto& e = program.emissions[next_emission++];
      out += "Append(~max,sub<G|w" + std::to_string(e.a) + ",w" + std::to_string(e.b) + ">);\n";
    }
  };
  for (std::size_t i = 0; i < program.instructions.size(); ++i) {
    emit_until(i);
    const auto& ins = program.instructions[i];
    out += "w" + std::to_string(ins.target) + ":=";
    for (std::size_t k = 0; k < ins.factors.size(); ++k) {
      if (k) out += '*';
      out += factor_text(ins.factors[k]);
    }
    out += ";\n";
  }
  emit_until(program.instructions.size());
  return out;
}

std::vector<std::pair<Permutation, Permutation>> evaluate(const WordProgram& program, const Permutation& x,
                                                         const Permutation& y) {
  if (x.degree() != y.degree()) throw Error("generators have different degrees");
  std::map<std::uint32_t, Permutation> regs{{1, x}, {2, y}};
  auto read = [&](std::uint32_t r) -> const Permutation& {
    const auto it = regs.find(r);
    if (it == regs.end()) throw Error("register w" + std::to_string(r) + " read before it is written");
    return it->second;
  };
  std::vector<std::pair<Permutation, Permutation>> out;
  std::size_t next_emission = 0;
  auto emit_until = [&](std::size_t position) {
    while (next_emission < program.emissions.size() && program.emissions[next_emission].position <= position) {
      const auto& e = program.emissions[next_emission++];
      out.emplace_back(read(e.a), read(e.b));
    }
  };
  for (std::size_t i = 0; i < program.instructions.size(); ++i) {
    emit_until(i);
    const auto& ins = program.instructions[i];
    Permutation value;
    for (const auto& f : ins.factors) {
      const Permutation& base = f.source == WordFactor::Source::X   ? x
                                : f.source == WordFactor::Source::Y ? y
                                                                    : read(f.reg);
      Permutation term = f.exponent == 1 ? base : power(base, f.exponent);
      value = value.degree() == 0 ? std::move(term) : compose(value, term);
    }
    regs[ins.target] = std::move(value);
  }
  emit_until(program.instructions.size());
  return out;
}

}  // namespace sporgen
