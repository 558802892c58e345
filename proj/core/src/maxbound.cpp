#include "sporgen/maxbound.hpp"

#include <atomic>
#include <thread>

#include "sporgen/error.hpp"

namespace sporgen {

BigInt record_index(const MaximalSubgroupRecord& record, const BigInt& group_order) {
  if (record.order <= 0 || group_order % record.order != 0) {
    throw IntegrityError(record.name + ": order " + to_string(record.order) + " does not divide " +
                         to_string(group_order));
  }
  return group_order / record.order;
}

OrderCensus subgroup_census(const MaximalSubgroupRecord& record, const StabilizerChain& group,
                            std::uint64_t limit, unsigned threads) {
  record_index(record, group.order());
  if (record.census) {
    if (record.census->group_order != record.order) {
      throw IntegrityError(record.name + ": census covers " + to_string(record.census->group_order) +
                           " elements, expected " + to_string(record.order));
    }
    check_census(*record.census);
    return *record.census;
  }

  std::vector<Permutation> gens = record.generators;
  if (record.program) {
    const auto all = group.generators();
    if (all.size() < 2) throw Error(record.name + ": word programs need two group generators");
    const auto emitted = evaluate(*record.program, all[0], all[1]);
    if (record.emission < 1 || record.emission > emitted.size()) {
      throw Error(record.name + ": program has no emission " + std::to_string(record.emission));
    }
    gens = {emitted[record.emission - 1].first, emitted[record.emission - 1].second};
  }
  if (gens.empty()) throw Error(record.name + ": record has neither generators nor a census");
  for (const auto& g : gens) {
    if (!group.contains(g)) throw IntegrityError(record.name + ": generator outside the group");
  }
  ChainOptions options;
  options.base_prefix = group.base();
  const auto chain = StabilizerChain::build(gens, options);
  if (chain.order() != record.order) {
    throw IntegrityError(record.name + ": generators give order " + to_string(chain.order()) + ", recorded " +
                         to_string(record.order));
  }
  return order_census(chain, limit, threads);
}

std::vector<OrderCensus> subgroup_censuses(const std::vector<MaximalSubgroupRecord>& records,
                                           const StabilizerChain& group, std::uint64_t limit, unsigned threads) {
  std::vector<OrderCensus> out(records.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) out[i] = subgroup_census(records[i], group, limit);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(records.size());
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next++) < records.size();) {
        try {
          out[i] = subgroup_census(records[i], group, limit);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

BoundResult lower_bound(const OrderCensus& group, const std::vector<MaximalSubgroupRecord>& records,
                        const std::vector<OrderCensus>& censuses, std::uint64_t p) {
  if (records.size() != censuses.size()) throw Error("one census per record is required");
  BoundResult result;
  result.p = p;
  result.group_pairs = pair_count(group, 2, group, p);
  if (result.group_pairs == 0) throw Error("group has no (2," + std::to_string(p) + ") pairs");
  BigInt total = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    BoundContribution c;
    c.name = records[i].name;
    c.index = record_index(records[i], group.group_order);
    c.pairs = pair_count(censuses[i], 2, censuses[i], p);
    c.term = c.index * c.pairs;
    total += c.term;
    result.contributions.push_back(std::move(c));
  }
  Rational fraction(total, result.group_pairs);
  fraction.canonicalize();
  result.bound = Rational(1) - fraction;
  result.informative = result.bound > 0;
  return result;
}

}  // namespace sporgen
