#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sporgen/bigint.hpp"
#include "sporgen/census.hpp"
#include "sporgen/maxbound.hpp"
#include "sporgen/permutation.hpp"
#include "sporgen/stabilizer_chain.hpp"

namespace sporgen {

// A group as shipped on disk: a directory holding bundle.json, e.g.
//
//   {"name": "M11", "order": "7920", "generators": "gens.txt",
//    "class_data": "../../classdata/m11.json", "maximals": "maximals.json"}
//
// Paths are relative to the bundle directory; everything but name and
// generators is optional.
struct GroupBundle {
  std::string name;
  std::filesystem::path directory;
  std::vector<Permutation> generators;
  std::optional<BigInt> declared_order;
  std::optional<ConjugacyClassData> class_data;
  std::vector<MaximalSubgroupRecord> maximals;
  std::optional<std::filesystem::path> character_table;
};

// SPORGEN_DATA if set, else the data directory of the source tree.
std::filesystem::path data_directory();

// ref may be a bundle.json file, a bundle directory, or a group name looked
// up under <data>/groups (case-insensitive, e.g. "m11" or "M11").
std::filesystem::path resolve_bundle(std::string_view ref);

GroupBundle load_bundle(std::string_view ref);

// Builds the chain and checks it against the declared order
// (IntegrityError on mismatch).
StabilizerChain bundle_chain(const GroupBundle& bundle, std::uint64_t seed);

// Maximal subgroup list:
//
//   {"group_order": "7920", "program": "maximals.slp",
//    "records": [{"name": "L2(11)", "order": "660", "emission": 2},
//                {"name": "...", "order": "...", "generators": "m.txt"},
//                {"name": "...", "order": "...", "census": {"1": "1", "2": "..."}}]}
//
// "program" is needed only by records with an emission.
std::vector<MaximalSubgroupRecord> load_maximal_records(const std::filesystem::path& path);

}  // namespace sporgen
