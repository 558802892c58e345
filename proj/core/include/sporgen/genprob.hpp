#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sporgen/bigint.hpp"
#include "sporgen/census.hpp"
#include "sporgen/stabilizer_chain.hpp"

namespace sporgen {

struct GenerationResult {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  BigInt generating_pairs = 0;
  BigInt total_pairs = 0;
  Rational probability = 0;
  std::string decimal5;
};

// Decides <x, y> = G for many pairs in the same group G. Reuses G's base and
// orbit structure; each call builds a fresh chain that stops as soon as its
// order reaches |G|. Not thread-safe; use one per worker.
class PairTester {
 public:
  explicit PairTester(const StabilizerChain& group, std::uint64_t seed = 1);

  bool generates(std::span<const Point> x, std::span<const Point> y);
  bool generates(const Permutation& x, const Permutation& y) { return generates(x.images(), y.images()); }

 private:
  std::size_t orbit_count(std::span<const Point> x, std::span<const Point> y);

  const StabilizerChain* group_;
  ChainOptions options_;
  std::size_t group_orbits_ = 0;
  std::vector<Point> parent_;
  std::vector<Permutation> pair_;
};

// True iff <x, y> = G. Throws Error if x or y is not in G.
bool is_generating(const StabilizerChain& group, const Permutation& x, const Permutation& y);

struct GenProbOptions {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t limit = 100'000'000;
  // Progress is saved here after every block of kCheckpointBlock scanned
  // elements and a matching file is resumed from.
  std::optional<std::filesystem::path> checkpoint;
  // Called after each block with (scanned, total) element counts.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

inline constexpr std::uint64_t kCheckpointBlock = 1'000'000;

struct PairCount {
  BigInt generating_pairs = 0;
  // No elements of order r or of order s.
  bool vacuous = false;
};

// #{(x, y) : o(x) = r, o(y) = s, <x, y> = G} by fixing one element up to
// conjugacy: sum over classes C of order r of |C| * #{y : o(y) = s,
// <rep_C, y> = G}. By symmetry the roles of r and s are swapped whenever that
// needs fewer generation tests.
PairCount generating_pair_count(const StabilizerChain& group, const ConjugacyClassList& classes,
                                std::uint64_t r, std::uint64_t s, const GenProbOptions& options = {});

// Plain double loop over all pairs; kept as a cross-check.
PairCount generating_pair_count_naive(const StabilizerChain& group, std::uint64_t r, std::uint64_t s,
                                      const GenProbOptions& options = {});

// Throws Error("no elements of the given orders") when n_r * n_s = 0.
GenerationResult gen_probability(const StabilizerChain& group, const ConjugacyClassList& classes,
                                 std::uint64_t r, std::uint64_t s, const GenProbOptions& options = {});

GenerationResult make_generation_result(std::uint64_t r, std::uint64_t s, const BigInt& generating,
                                        const BigInt& total);

}  // namespace sporgen
