#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sporgen/bigint.hpp"
#include "sporgen/census.hpp"
#include "sporgen/cyclotomic.hpp"

namespace sporgen {

// Class indices are 1-based in every public function and file, 0-based in
// the member vectors.
struct CharacterTable {
  std::string name;
  BigInt group_order = 1;
  std::vector<ClassInfo> classes;
  std::vector<std::size_t> inverse_map;  // 0-based
  std::vector<std::vector<Cyclotomic>> characters;

  std::size_t class_count() const noexcept { return classes.size(); }
  BigInt class_size(std::size_t index) const;  // 1-based

  // Accepts a 1-based index ("172") or a class name ("47A", case-insensitive).
  // Throws Error when nothing matches.
  std::size_t class_index(std::string_view ref) const;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

// Exact checks: class data, inverse map, column and row orthogonality, sum of
// squared degrees. Every failed identity is reported with its indices.
ValidationReport validate(const CharacterTable& table);

// Builds a table from the JSON layout without validating it. A missing
// inverse_map is derived by matching each column with a conjugate column.
CharacterTable table_from_json(const nlohmann::json& doc);
nlohmann::json table_to_json(const CharacterTable& table);

// Parses and validates; throws ParseError (with byte offset for malformed
// JSON) or IntegrityError listing the failed checks.
CharacterTable load_character_table(const std::filesystem::path& path);

// Number of pairs (x, y) in C_i x C_j with xy equal to a fixed element of
// C_k: |C_i||C_j|/|G| * sum over characters of chi(g_i) chi(g_j) conj(chi(g_k)) / chi(1).
// Throws IntegrityError unless the result is a non-negative integer.
BigInt cmc(const CharacterTable& table, std::size_t i, std::size_t j, std::size_t k);

struct CmcScanEntry {
  std::size_t j = 0;  // 1-based
  BigInt value = 0;
  bool nonzero = false;
};

struct CmcScanReport {
  std::size_t i = 0;
  std::size_t k = 0;
  std::vector<CmcScanEntry> entries;
};

CmcScanReport cmc_scan(const CharacterTable& table, std::size_t i, std::size_t k, unsigned threads = 1);

// Names whose order is divisible by every required order.
std::vector<std::string> lagrange_filter(const std::vector<std::pair<std::string, BigInt>>& subgroup_orders,
                                         const std::vector<BigInt>& required);

// All n <= limit with p | Phi_n(q). Requires p prime, q >= 2, limit <= 10^4.
std::vector<std::uint32_t> phi_divisibility(const BigInt& p, const BigInt& q, std::uint32_t limit);

struct GenerationCertificate {
  std::size_t witness_class = 0;  // 1-based
  std::uint64_t witness_order = 0;
  std::uint64_t p = 0;
  std::vector<std::string> surviving_subgroups;
  std::vector<CmcScanReport> scans;  // one per involution class
  // Classes of element order p where every involution class has a nonzero
  // coefficient.
  std::vector<std::size_t> good_classes;
  std::string explanation;
};

GenerationCertificate generation_certificate(const CharacterTable& table,
                                             const std::vector<std::size_t>& involution_classes,
                                             std::size_t witness_class,
                                             const std::vector<std::pair<std::string, BigInt>>& subgroup_orders,
                                             std::uint64_t p, unsigned threads = 1);

// [{"name": ..., "order": "..."}] as written by the table exporter.
std::vector<std::pair<std::string, BigInt>> load_subgroup_orders(const std::filesystem::path& path);

}  // namespace sporgen
