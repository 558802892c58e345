#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sporgen/bigint.hpp"
#include "sporgen/census.hpp"
#include "sporgen/permutation.hpp"
#include "sporgen/stabilizer_chain.hpp"
#include "sporgen/wordprog.hpp"

namespace sporgen {

// One conjugacy class of maximal subgroups M of G. The subgroup is given by
// explicit generators, by an emission of a word program run on G's first two
// generators, or only by its element-order census.
struct MaximalSubgroupRecord {
  std::string name;
  BigInt order = 1;

  std::vector<Permutation> generators;
  std::shared_ptr<const WordProgram> program;
  std::size_t emission = 0;  // 1-based
  std::optional<OrderCensus> census;
};

// |G:M|. Throws IntegrityError unless the order divides |G|.
BigInt record_index(const MaximalSubgroupRecord& record, const BigInt& group_order);

// Order census of M, by enumeration unless the record carries one. Every
// generator must lie in G and generate a group of the recorded order, else
// IntegrityError. Throws LimitExceeded if M has more than limit elements.
OrderCensus subgroup_census(const MaximalSubgroupRecord& record, const StabilizerChain& group,
                            std::uint64_t limit, unsigned threads = 1);

// subgroup_census for every record, records spread over threads.
std::vector<OrderCensus> subgroup_censuses(const std::vector<MaximalSubgroupRecord>& records,
                                           const StabilizerChain& group, std::uint64_t limit,
                                           unsigned threads = 1);

struct BoundContribution {
  std::string name;
  BigInt index;
  BigInt pairs;  // m_{2,p}(M)
  BigInt term;   // index * pairs
};

struct BoundResult {
  std::uint64_t p = 0;
  BigInt group_pairs;  // m_{2,p}(G)
  Rational bound = 1;
  bool informative = false;  // bound > 0
  std::vector<BoundContribution> contributions;
};

// 1 - sum_M |G:M| m_{2,p}(M) / m_{2,p}(G), one record per class of maximal
// subgroups, where m_{2,p}(H) = n_2(H) n_p(H). Every (2,p) pair that fails to
// generate G lies in some maximal subgroup, so this never exceeds the true
// proportion of generating pairs; it can be negative. Duplicate classes are
// not detected. Throws Error if m_{2,p}(G) = 0 or the lists differ in length.
BoundResult lower_bound(const OrderCensus& group, const std::vector<MaximalSubgroupRecord>& records,
                        const std::vector<OrderCensus>& censuses, std::uint64_t p);

}  // namespace sporgen
