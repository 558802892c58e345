#pragma once

// Slow, obviously-correct reference computations used as test oracles.

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_set>
#include <vector>

#include "sporgen/permutation.hpp"

namespace oracle {

using sporgen::Permutation;

// Every element of <gens>, by breadth-first closure under right
// multiplication.
inline std::vector<Permutation> closure(const std::vector<Permutation>& gens) {
  const auto id = Permutation::identity(gens.at(0).degree());
  std::unordered_set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  std::vector<Permutation> out{id};
  while (!queue.empty()) {
    const Permutation g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation h = sporgen::compose(g, s);
      if (seen.insert(h).second) {
        out.push_back(h);
        queue.push_back(std::move(h));
      }
    }
  }
  return out;
}

inline std::uint64_t order_by_powers(const Permutation& g) {
  const auto id = Permutation::identity(g.degree());
  Permutation h = g;
  std::uint64_t n = 1;
  while (h != id) {
    h = sporgen::compose(h, g);
    ++n;
  }
  return n;
}

inline std::map<std::uint64_t, std::uint64_t> order_counts(const std::vector<Permutation>& elements) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& g : elements) ++out[order_by_powers(g)];
  return out;
}

// Conjugacy classes as lists of elements, found by conjugating with every
// group element.
inline std::vector<std::vector<Permutation>> classes(const std::vector<Permutation>& elements) {
  std::unordered_set<Permutation> done;
  std::vector<std::vector<Permutation>> out;
  for (const auto& g : elements) {
    if (done.count(g)) continue;
    std::unordered_set<Permutation> cls;
    for (const auto& h : elements) cls.insert(sporgen::compose(sporgen::compose(sporgen::inverse(h), g), h));
    out.emplace_back(cls.begin(), cls.end());
    done.insert(cls.begin(), cls.end());
  }
  return out;
}

// #{(x, y) in a x b : x y = z}.
inline std::uint64_t triple_count(const std::vector<Permutation>& a, const std::vector<Permutation>& b,
                                  const Permutation& z) {
  std::unordered_set<Permutation> bset(b.begin(), b.end());
  std::uint64_t n = 0;
  for (const auto& x : a) {
    if (bset.count(sporgen::compose(sporgen::inverse(x), z))) ++n;
  }
  return n;
}

// Multiplicative order of q modulo a prime p not dividing q.
inline std::uint64_t multiplicative_order(std::uint64_t q, std::uint64_t p) {
  std::uint64_t v = q % p, k = 1;
  while (v != 1) {
    v = v * (q % p) % p;
    ++k;
  }
  return k;
}

}  // namespace oracle
