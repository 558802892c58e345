#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sporgen {

using Point = std::uint32_t;

// Largest accepted degree. Points are 0-based internally and 1-based in every
// text format.
inline constexpr std::size_t kMaxDegree = std::size_t{1} << 24;

// A bijection of {0, ..., degree-1}, stored as its image list.
//
// Products are read left to right: compose(p, q) applies p first and then q,
// i.e. c -> q(p(c)). This is the convention of word programs such as
// "w3:=w1*w2", where w3 means "w1, then w2". Every product in the library
// (transversals, sifting, conjugation) follows it.
class Permutation {
 public:
  // Degree-0 placeholder; not a valid group element.
  Permutation() = default;

  static Permutation identity(std::size_t degree);

  // Takes ownership of an image list. Throws Error unless it is a bijection
  // of {0, ..., n-1} with 1 <= n <= kMaxDegree.
  explicit Permutation(std::vector<Point> images);

  // 1-based images, as in permutation files. Throws Error.
  static Permutation from_one_based(std::span<const std::uint64_t> images);

  // Disjoint cycle notation with 1-based points: "(1,2,3)(4,5)", "(1 2)",
  // "()" for the identity. Throws ParseError.
  static Permutation from_cycles(std::size_t degree, std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point c) const noexcept { return images_[c]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;

  // 1-based disjoint cycles; fixed points omitted; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation power(const Permutation&, std::int64_t);
  friend Permutation conjugate(const Permutation&, const Permutation&);

  std::vector<Point> images_;
};

// c -> q(p(c)). Throws Error on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

Permutation inverse(const Permutation& p);

// k-fold product; k < 0 uses the inverse, k = 0 gives the identity.
Permutation power(const Permutation& p, std::int64_t k);

// g^-1 * p * g, the image of p under relabelling by g: c^g -> p(c)^g.
Permutation conjugate(const Permutation& p, const Permutation& g);

// lcm of the cycle lengths. Throws Error if it does not fit in 64 bits.
std::uint64_t element_order(const Permutation& p);

// Allocation-free kernels over raw image arrays; all spans share one length.
void compose_into(std::span<const Point> p, std::span<const Point> q, std::span<Point> out);
void inverse_into(std::span<const Point> p, std::span<Point> out);

// Element order using a caller-provided scratch buffer of degree bytes.
std::uint64_t element_order(std::span<const Point> p, std::vector<std::uint8_t>& seen);

}  // namespace sporgen

template <>
struct std::hash<sporgen::Permutation> {
  std::size_t operator()(const sporgen::Permutation& p) const noexcept {
    std::size_t h = p.degree();
    for (auto c : p.images()) h = h * 1000003u ^ c;
    return h;
  }
};
