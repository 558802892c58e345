#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "sporgen/permutation.hpp"

namespace sporgen {

// Permutation file: "<degree> <count>" on the first line, then one line of
// degree 1-based images per permutation. Blank lines and lines starting with
// '#' are ignored. Errors carry the offending line number.
std::vector<Permutation> parse_permutations(std::string_view text);
std::vector<Permutation> load_perm_file(const std::filesystem::path& path);

void write_permutations(std::ostream& out, std::span<const Permutation> perms);
void save_perm_file(const std::filesystem::path& path, std::span<const Permutation> perms);

// Whole file as a string; throws Error naming the path when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sporgen
