#include "sporgen/census.hpp"

#include <algorithm>
#include <thread>

#include <nlohmann/json.hpp>

#include "sporgen/cyclotomic.hpp"
#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"

namespace sporgen {

BigInt OrderCensus::count(std::uint64_t r) const {
  auto it = counts.find(r);
  return it == counts.end() ? BigInt(0) : it->second;
}

void check_census(const OrderCensus& census) {
  BigInt total = 0;
  for (const auto& [r, n] : census.counts) {
    if (n < 0) throw IntegrityError("negative element count for order " + std::to_string(r));
    if (n > 0 && census.group_order % from_u64(r) != 0) {
      throw IntegrityError("elements of order " + std::to_string(r) + " but " + std::to_string(r) +
                           " does not divide " + to_string(census.group_order));
    }
    total += n;
  }
  if (total != census.group_order) {
    throw IntegrityError("element counts sum to " + to_string(total) + ", expected " +
                         to_string(census.group_order));
  }
  if (census.count(1) != 1) throw IntegrityError("census must contain exactly one identity");
  // The phi(r) generators of a cyclic subgroup of order r all have order r.
  for (const auto& [r, n] : census.counts) {
    if (r > UINT32_MAX) continue;
    const std::uint64_t phi = euler_phi(static_cast<std::uint32_t>(r));
    if (n % from_u64(phi) != 0) {
      throw IntegrityError(to_string(n) + " elements of order " + std::to_string(r) + " is not a multiple of " +
                           std::to_string(phi));
    }
  }
}

ConjugacyClassData class_data_from_json(const nlohmann::json& doc) {
  ConjugacyClassData data;
  try {
    data.name = doc.value("name", std::string{});
    data.group_order = parse_bigint(doc.at("group_order").get<std::string>());
    data.complete = doc.value("complete", true);
    for (const auto& c : doc.at("classes")) {
      ClassInfo info;
      info.name = c.value("name", std::string{});
      info.element_order = c.at("element_order").get<std::uint64_t>();
      info.centralizer_order = parse_bigint(c.at("centralizer_order").get<std::string>());
      if (info.element_order == 0 || info.centralizer_order <= 0) {
        throw IntegrityError("class " + info.name + " has a non-positive order");
      }
      data.classes.push_back(std::move(info));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("class data: ") + e.what());
  }
  return data;
}

ConjugacyClassData load_class_data(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return class_data_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
  }
}

namespace {

using Tally = std::map<std::uint64_t, std::uint64_t>;

void tally_range(const StabilizerChain& chain, std::uint64_t first, std::uint64_t last, Tally& out) {
  ElementStream stream(chain, first, last);
  std::vector<std::uint8_t> seen;
  // Orders are small; a flat array avoids map lookups in the hot loop.
  std::vector<std::uint64_t> small(1024, 0);
  while (stream.next()) {
    const std::uint64_t r = element_order(stream.current(), seen);
    if (r < small.size()) {
      ++small[r];
    } else {
      ++out[r];
    }
  }
  for (std::size_t r = 0; r < small.size(); ++r) {
    if (small[r]) out[r] += small[r];
  }
}

}  // namespace

OrderCensus order_census(const StabilizerChain& chain, std::uint64_t limit, unsigned threads) {
  if (chain.order() > from_u64(limit)) {
    throw LimitExceeded("group order " + to_string(chain.order()) + " exceeds the enumeration limit " +
                        std::to_string(limit));
  }
  const std::uint64_t n = to_u64(chain.order());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 256))));
  std::vector<Tally> parts(threads);
  if (threads == 1) {
    tally_range(chain, 0, n, parts[0]);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] { tally_range(chain, n * t / threads, n * (t + 1) / threads, parts[t]); });
    }
    for (auto& w : workers) w.join();
  }
  OrderCensus census;
  census.group_order = chain.order();
  for (const auto& part : parts) {
    for (const auto& [r, c] : part) census.counts[r] += from_u64(c);
  }
  return census;
}

OrderCensus census_from_table(const ConjugacyClassData& data) {
  OrderCensus census;
  census.group_order = data.group_order;
  for (const auto& c : data.classes) {
    if (data.group_order % c.centralizer_order != 0) {
      throw IntegrityError("centralizer order of class " + c.name + " does not divide the group order");
    }
    census.counts[c.element_order] += data.group_order / c.centralizer_order;
  }
  return census;
}

ConjugacyClassList conjugacy_classes(const StabilizerChain& chain, std::uint64_t limit) {
  limit = std::min(limit, kMaxClassEnumeration);
  if (chain.order() > from_u64(limit)) {
    throw LimitExceeded("group order " + to_string(chain.order()) +
                        " exceeds the conjugacy class limit " + std::to_string(limit));
  }
  const std::uint64_t n = to_u64(chain.order());
  const std::size_t degree = chain.degree();
  std::vector<std::vector<Point>> gens;
  std::vector<std::vector<Point>> gens_inv;
  for (const auto& g : chain.generators()) {
    if (g.is_identity()) continue;
    gens.emplace_back(g.images().begin(), g.images().end());
    gens_inv.push_back(std::vector<Point>(degree));
    inverse_into(g.images(), gens_inv.back());
  }

  ConjugacyClassList out;
  out.group_order = chain.order();
  std::vector<bool> assigned(n, false);
  std::vector<std::uint8_t> seen;
  std::vector<std::uint64_t> queue;
  std::vector<Point> tmp(degree), conj(degree);
  ElementStream stream(chain, 0, n);
  while (stream.next()) {
    const std::uint64_t start = stream.current_rank();
    if (assigned[start]) continue;
    assigned[start] = true;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Permutation g = chain.unrank(queue[head]);
      for (std::size_t s = 0; s < gens.size(); ++s) {
        compose_into(gens_inv[s], g.images(), tmp);
        compose_into(tmp, gens[s], conj);
        const std::uint64_t r = chain.rank(conj);
        if (!assigned[r]) {
          assigned[r] = true;
          queue.push_back(r);
        }
      }
    }
    ConjugacyClass cls;
    cls.representative = stream.current_permutation();
    cls.element_order = element_order(stream.current(), seen);
    cls.size = from_u64(queue.size());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

BigInt pair_count(const OrderCensus& a, std::uint64_t r, const OrderCensus& b, std::uint64_t s) {
  return a.count(r) * b.count(s);
}

}  // namespace sporgen
