#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sporgen/bigint.hpp"
#include "sporgen/permutation.hpp"
#include "sporgen/random.hpp"

namespace sporgen {

// One level of a base and strong generating set.
//
// generators are the strong generators fixing every earlier base point;
// transversal[t] maps base_point to orbit[t] (so transversal[0] is the
// identity) and inverse_transversal[t] is its inverse.
struct ChainLevel {
  Point base_point = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  std::vector<std::int32_t> orbit_index;  // per point, -1 outside the orbit
  std::vector<Permutation> transversal;
  std::vector<Permutation> inverse_transversal;
};

struct ChainOptions {
  std::uint64_t seed = 1;
  // Points to put first in the base (e.g. the base of an overgroup).
  std::vector<Point> base_prefix;
  // When the order reaches this value during the random phase, stop early.
  // Orbit products never exceed the true order, so reaching the order of a
  // known overgroup proves equality and the chain is complete.
  std::optional<BigInt> stop_at_order;
};

// Immutable stabilizer chain of the group generated by a list of permutations.
//
// build() runs a randomized Schreier-Sims phase and then sifts every Schreier
// generator, so order() is exact rather than probabilistic. The chain can be
// shared across threads.
class StabilizerChain {
 public:
  // Throws Error on an empty list or mismatched degrees.
  static StabilizerChain build(std::span<const Permutation> generators,
                               const ChainOptions& options = {});

  std::size_t degree() const noexcept { return degree_; }
  const BigInt& order() const noexcept { return order_; }
  std::span<const Permutation> generators() const noexcept { return generators_; }
  std::span<const ChainLevel> levels() const noexcept { return levels_; }
  std::vector<Point> base() const;

  // Membership by sifting. Throws Error on degree mismatch.
  bool contains(const Permutation& p) const;

  // Index of a member in enumeration order (mixed radix over transversal
  // positions, level 0 most significant). Only base images are consulted, so
  // the caller must know p is a member. Requires order() < 2^64.
  std::uint64_t rank(const Permutation& member) const;
  std::uint64_t rank(std::span<const Point> member) const;

  Permutation unrank(std::uint64_t index) const;

  // Uniform element: one uniformly chosen transversal element per level.
  Permutation random_element(Rng& rng) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<ChainLevel> levels_;
  BigInt order_ = 1;

  friend class ChainBuilder;
};

StabilizerChain build_chain(std::span<const Permutation> generators, std::uint64_t seed);

inline bool contains(const StabilizerChain& chain, const Permutation& p) {
  return chain.contains(p);
}

inline Permutation random_element(const StabilizerChain& chain, Rng& rng) {
  return chain.random_element(rng);
}

// Streams the elements of a chain with rank in [first, last), each exactly
// once and in rank order. Only O(depth * degree) state is kept; the
// permutation returned by current() is overwritten by next().
class ElementStream {
 public:
  ElementStream(const StabilizerChain& chain, std::uint64_t first, std::uint64_t last);

  // Advances to the next element; false once the range is exhausted.
  bool next();

  std::span<const Point> current() const noexcept { return partial_.back(); }
  Permutation current_permutation() const;
  std::uint64_t current_rank() const noexcept { return rank_ - 1; }

 private:
  void rebuild_from(std::size_t level);

  const StabilizerChain* chain_;
  std::uint64_t rank_;
  std::uint64_t last_;
  bool started_ = false;
  std::vector<std::size_t> digits_;
  std::vector<std::vector<Point>> partial_;
};

// Whole-group stream. Throws LimitExceeded (reporting the order) when the
// group has more than limit elements.
ElementStream enumerate_elements(const StabilizerChain& chain, std::uint64_t limit);

// Orbit of a point under the group generated by gens.
std::vector<Point> orbit_of(Point start, std::span<const Permutation> gens);

}  // namespace sporgen
