#include "sporgen/genprob.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"

namespace sporgen {

PairTester::PairTester(const StabilizerChain& group, std::uint64_t seed) : group_(&group) {
  options_.seed = seed;
  options_.base_prefix = group.base();
  options_.stop_at_order = group.order();
  parent_.resize(group.degree());
  std::vector<bool> seen(group.degree(), false);
  for (std::size_t c = 0; c < group.degree(); ++c) {
    if (seen[c]) continue;
    ++group_orbits_;
    for (Point q : orbit_of(static_cast<Point>(c), group.generators())) seen[q] = true;
  }
}

std::size_t PairTester::orbit_count(std::span<const Point> x, std::span<const Point> y) {
  std::iota(parent_.begin(), parent_.end(), Point{0});
  auto find = [&](Point a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  };
  std::size_t count = parent_.size();
  for (auto g : {x, y}) {
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Point a = find(static_cast<Point>(c));
      const Point b = find(g[c]);
      if (a != b) {
        parent_[a] = b;
        --count;
      }
    }
  }
  return count;
}

bool PairTester::generates(std::span<const Point> x, std::span<const Point> y) {
  if (orbit_count(x, y) != group_orbits_) return false;
  pair_.clear();
  pair_.emplace_back(std::vector<Point>(x.begin(), x.end()));
  pair_.emplace_back(std::vector<Point>(y.begin(), y.end()));
  const auto chain = StabilizerChain::build(pair_, options_);
  return chain.order() == group_->order();
}

bool is_generating(const StabilizerChain& group, const Permutation& x, const Permutation& y) {
  if (!group.contains(x) || !group.contains(y)) throw Error("element outside the group");
  PairTester tester(group);
  return tester.generates(x, y);
}

namespace {

struct ScanState {
  std::uint64_t next_rank = 0;
  std::vector<std::uint64_t> hits;
};

nlohmann::json checkpoint_key(const StabilizerChain& group, std::uint64_t r, std::uint64_t s,
                              std::uint64_t scan_order, const std::vector<const ConjugacyClass*>& fixed) {
  nlohmann::json key;
  key["group_order"] = to_string(group.order());
  key["base"] = group.base();
  key["r"] = r;
  key["s"] = s;
  key["scan_order"] = scan_order;
  nlohmann::json reps = nlohmann::json::array();
  for (const auto* c : fixed) reps.push_back(c->representative.to_cycle_string());
  key["representatives"] = reps;
  return key;
}

ScanState load_checkpoint(const std::filesystem::path& path, const nlohmann::json& key, std::size_t classes) {
  ScanState state;
  state.hits.assign(classes, 0);
  std::ifstream in(path);
  if (!in) return state;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    throw Error("unreadable checkpoint file: " + path.string());
  }
  if (doc.value("key", nlohmann::json{}) != key) {
    throw Error("checkpoint " + path.string() + " belongs to a different computation");
  }
  state.next_rank = doc.at("next_rank").get<std::uint64_t>();
  state.hits = doc.at("hits").get<std::vector<std::uint64_t>>();
  if (state.hits.size() != classes) throw Error("corrupt checkpoint: " + path.string());
  return state;
}

void save_checkpoint(const std::filesystem::path& path, const nlohmann::json& key, const ScanState& state,
                     std::uint64_t total) {
  nlohmann::json doc;
  doc["key"] = key;
  doc["next_rank"] = state.next_rank;
  doc["total"] = total;
  doc["hits"] = state.hits;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint: " + tmp);
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void scan_block(const StabilizerChain& group, const std::vector<const ConjugacyClass*>& fixed,
                std::uint64_t scan_order, std::uint64_t first, std::uint64_t last, std::uint64_t seed,
                std::vector<std::uint64_t>& hits) {
  PairTester tester(group, seed);
  ElementStream stream(group, first, last);
  std::vector<std::uint8_t> seen;
  while (stream.next()) {
    if (element_order(stream.current(), seen) != scan_order) continue;
    for (std::size_t c = 0; c < fixed.size(); ++c) {
      if (tester.generates(fixed[c]->representative.images(), stream.current())) ++hits[c];
    }
  }
}

}  // namespace

PairCount generating_pair_count(const StabilizerChain& group, const ConjugacyClassList& classes,
                                std::uint64_t r, std::uint64_t s, const GenProbOptions& options) {
  if (group.order() > from_u64(options.limit)) {
    throw LimitExceeded("group order " + to_string(group.order()) + " exceeds the enumeration limit " +
                        std::to_string(options.limit));
  }
  std::vector<const ConjugacyClass*> r_classes, s_classes;
  BigInt n_r = 0, n_s = 0;
  for (const auto& c : classes.classes) {
    if (c.element_order == r) {
      r_classes.push_back(&c);
      n_r += c.size;
    }
    if (c.element_order == s) {
      s_classes.push_back(&c);
      n_s += c.size;
    }
  }
  PairCount result;
  if (n_r == 0 || n_s == 0) {
    result.vacuous = true;
    return result;
  }
  const bool fix_r = n_s * r_classes.size() <= n_r * s_classes.size();
  const auto& fixed = fix_r ? r_classes : s_classes;
  const std::uint64_t scan_order = fix_r ? s : r;

  const std::uint64_t total = to_u64(group.order());
  const nlohmann::json key = checkpoint_key(group, r, s, scan_order, fixed);
  ScanState state;
  state.hits.assign(fixed.size(), 0);
  if (options.checkpoint) state = load_checkpoint(*options.checkpoint, key, fixed.size());

  const unsigned threads = std::max(1u, options.threads);
  while (state.next_rank < total) {
    const std::uint64_t first = state.next_rank;
    const std::uint64_t last = std::min(total, first + kCheckpointBlock);
    std::vector<std::vector<std::uint64_t>> parts(threads, std::vector<std::uint64_t>(fixed.size(), 0));
    if (threads == 1) {
      scan_block(group, fixed, scan_order, first, last, options.seed, parts[0]);
    } else {
      std::vector<std::thread> workers;
      const std::uint64_t span = last - first;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          scan_block(group, fixed, scan_order, first + span * t / threads, first + span * (t + 1) / threads,
                     options.seed, parts[t]);
        });
      }
      for (auto& w : workers) w.join();
    }
    for (const auto& part : parts) {
      for (std::size_t c = 0; c < fixed.size(); ++c) state.hits[c] += part[c];
    }
    state.next_rank = last;
    if (options.checkpoint) save_checkpoint(*options.checkpoint, key, state, total);
    if (options.progress) options.progress(last, total);
  }
  for (std::size_t c = 0; c < fixed.size(); ++c) {
    result.generating_pairs += fixed[c]->size * from_u64(state.hits[c]);
  }
  return result;
}

PairCount generating_pair_count_naive(const StabilizerChain& group, std::uint64_t r, std::uint64_t s,
                                      const GenProbOptions& options) {
  auto stream = enumerate_elements(group, options.limit);
  std::vector<Permutation> xs, ys;
  std::vector<std::uint8_t> seen;
  while (stream.next()) {
    const std::uint64_t order = element_order(stream.current(), seen);
    if (order == r) xs.push_back(stream.current_permutation());
    if (order == s) ys.push_back(stream.current_permutation());
  }
  PairCount result;
  if (xs.empty() || ys.empty()) {
    result.vacuous = true;
    return result;
  }
  PairTester tester(group, options.seed);
  std::uint64_t count = 0;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (tester.generates(x, y)) ++count;
    }
  }
  result.generating_pairs = from_u64(count);
  return result;
}

GenerationResult make_generation_result(std::uint64_t r, std::uint64_t s, const BigInt& generating,
                                        const BigInt& total) {
  if (total == 0) throw Error("no elements of the given orders");
  GenerationResult out;
  out.r = r;
  out.s = s;
  out.generating_pairs = generating;
  out.total_pairs = total;
  out.probability = Rational(generating, total);
  out.probability.canonicalize();
  out.decimal5 = format_decimal(out.probability, 5);
  return out;
}

GenerationResult gen_probability(const StabilizerChain& group, const ConjugacyClassList& classes,
                                 std::uint64_t r, std::uint64_t s, const GenProbOptions& options) {
  BigInt n_r = 0, n_s = 0;
  for (const auto& c : classes.classes) {
    if (c.element_order == r) n_r += c.size;
    if (c.element_order == s) n_s += c.size;
  }
  if (n_r * n_s == 0) throw Error("no elements of the given orders");
  const PairCount count = generating_pair_count(group, classes, r, s, options);
  return make_generation_result(r, s, count.generating_pairs, n_r * n_s);
}

}  // namespace sporgen
