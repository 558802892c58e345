#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sporgen/bigint.hpp"
#include "sporgen/permutation.hpp"
#include "sporgen/stabilizer_chain.hpp"

namespace sporgen {

// Element-order statistics: counts[r] = number of elements of order r.
struct OrderCensus {
  BigInt group_order = 1;
  std::map<std::uint64_t, BigInt> counts;

  // n_r, 0 when r does not occur.
  BigInt count(std::uint64_t r) const;
};

// Throws IntegrityError unless the census sums to the group order, has one
// identity, satisfies Lagrange and the inverse-pairing parity identity.
void check_census(const OrderCensus& census);

struct ClassInfo {
  std::string name;
  std::uint64_t element_order = 1;
  BigInt centralizer_order = 1;
};

// Class names, element orders and centralizer orders of a group. When
// complete is false the list covers only some classes and the class sizes
// are not required to sum to the group order.
struct ConjugacyClassData {
  std::string name;
  BigInt group_order = 1;
  std::vector<ClassInfo> classes;
  bool complete = true;
};

ConjugacyClassData class_data_from_json(const nlohmann::json& doc);
ConjugacyClassData load_class_data(const std::filesystem::path& path);

struct ConjugacyClass {
  Permutation representative;
  BigInt size;
  std::uint64_t element_order = 1;
};

struct ConjugacyClassList {
  BigInt group_order = 1;
  std::vector<ConjugacyClass> classes;
};

// Full enumeration; threads > 1 splits the stream into contiguous slices.
// Throws LimitExceeded when the group has more than limit elements.
OrderCensus order_census(const StabilizerChain& chain, std::uint64_t limit, unsigned threads = 1);

// counts[r] = sum of |G|/|C_G(g)| over classes of order r. Throws
// IntegrityError if a centralizer order does not divide the group order.
OrderCensus census_from_table(const ConjugacyClassData& data);

// Classes in order of first appearance in the enumeration stream, each
// represented by its first element. Limited to 10^7 elements regardless of
// limit, since a rank bitmap of the whole group is kept.
ConjugacyClassList conjugacy_classes(const StabilizerChain& chain, std::uint64_t limit);

inline constexpr std::uint64_t kMaxClassEnumeration = 10'000'000;

// m_{r,s} = n_r(a) * n_s(b).
BigInt pair_count(const OrderCensus& a, std::uint64_t r, const OrderCensus& b, std::uint64_t s);

}  // namespace sporgen
