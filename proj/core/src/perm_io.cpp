#include "sporgen/perm_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sporgen/error.hpp"

namespace sporgen {

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || ptr == line.data() + i) {
      throw ParseError("malformed number", line_no);
    }
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      throw ParseError("malformed number", line_no);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<Permutation> parse_permutations(std::string_view text) {
  std::vector<Permutation> perms;
  std::size_t degree = 0;
  std::size_t count = 0;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto numbers = parse_numbers(line, line_no);
    if (!have_header) {
      if (numbers.size() != 2) throw ParseError("header must be '<degree> <count>'", line_no);
      if (numbers[0] == 0 || numbers[0] > kMaxDegree) {
        throw ParseError("degree out of range", line_no);
      }
      degree = numbers[0];
      count = numbers[1];
      have_header = true;
    } else {
      if (perms.size() == count) throw ParseError("more rows than declared", line_no);
      if (numbers.size() != degree) {
        throw ParseError("expected " + std::to_string(degree) + " images, found " +
                             std::to_string(numbers.size()),
                         line_no);
      }
      try {
        perms.push_back(Permutation::from_one_based(numbers));
      } catch (const ParseError&) {
        throw;
      } catch (const Error&) {
        throw ParseError("not a bijection", line_no);
      }
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError("missing header line", line_no);
  if (perms.size() != count) {
    throw ParseError("declared " + std::to_string(count) + " permutations, found " +
                         std::to_string(perms.size()),
                     line_no);
  }
  return perms;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Permutation> load_perm_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_permutations(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_permutations(std::ostream& out, std::span<const Permutation> perms) {
  const std::size_t degree = perms.empty() ? 1 : perms.front().degree();
  out << degree << ' ' << perms.size() << '\n';
  for (const auto& p : perms) {
    if (p.degree() != degree) throw Error("permutations of different degrees");
    for (std::size_t c = 0; c < degree; ++c) {
      if (c) out << ' ';
      out << p[static_cast<Point>(c)] + 1;
    }
    out << '\n';
  }
}

void save_perm_file(const std::filesystem::path& path, std::span<const Permutation> perms) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  write_permutations(out, perms);
}

}  // namespace sporgen
