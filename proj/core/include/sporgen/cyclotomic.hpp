#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sporgen/bigint.hpp"

namespace sporgen {

inline constexpr std::uint32_t kMaxConductor = 1u << 16;

// Coefficients of the n-th cyclotomic polynomial, constant term first.
// Memoized; safe to call concurrently.
const std::vector<BigInt>& cyclotomic_polynomial(std::uint32_t n);

// Phi_n(q) as an exact integer.
BigInt cyclotomic_value(std::uint32_t n, const BigInt& q);

std::uint32_t euler_phi(std::uint32_t n);

// An element of Q(E(n)), stored as the remainder modulo Phi_n of a rational
// polynomial in E(n), at the smallest conductor n that contains the value.
// This makes the representation unique, so == compares coefficients.
class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero
  Cyclotomic(const Rational& q);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long q) : Cyclotomic(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  // E(n)^k; any integer k.
  static Cyclotomic root_of_unity(std::uint32_t n, std::int64_t k = 1);

  // sum_i coeffs[i] * E(n)^i for any number of coefficients.
  static Cyclotomic from_coefficients(std::uint32_t n, std::vector<Rational> coeffs);

  // Sums of terms c*E(n)^k as printed by GAP, e.g. "-E(5)-E(5)^4",
  // "3/2*E(8)^3+1". Throws ParseError.
  static Cyclotomic parse(std::string_view text);

  std::uint32_t conductor() const noexcept { return n_; }
  // Length euler_phi(conductor()).
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  bool is_rational() const noexcept { return n_ == 1; }
  bool is_zero() const noexcept { return n_ == 1 && c_[0] == 0; }
  std::optional<Rational> to_rational() const;

  std::string to_string() const;

  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a);

 private:
  std::uint32_t n_ = 1;
  std::vector<Rational> c_{Rational(0)};
};

// Complex conjugation, E(n) -> E(n)^(n-1).
Cyclotomic conjugate(const Cyclotomic& a);

// Coefficients of a in the power basis of Q(E(m)), reduced modulo Phi_m.
// Throws Error unless conductor(a) divides m.
std::vector<Rational> embed(const Cyclotomic& a, std::uint32_t m);

std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b);

// Accumulates many products at one fixed conductor N without canonicalizing
// each term. Values live in Q[x]/(x^N - 1); the class of the total modulo
// Phi_N is only computed when read out. N may exceed kMaxConductor (only
// value() needs the dense form). Integer and rational products take a fast
// path.
class CyclotomicSum {
 public:
  using Factor = std::pair<const Cyclotomic*, bool>;  // (value, conjugate first)

  explicit CyclotomicSum(std::uint32_t conductor);

  std::uint32_t conductor() const noexcept { return n_; }

  void add(const Rational& q) { rational_ += q; }

  // Adds scale * f_1 * ... * f_k. Every factor's conductor must divide
  // conductor().
  void add_product(const Rational& scale, std::initializer_list<Factor> factors);

  // The total when it is rational.
  std::optional<Rational> rational_value() const;
  Cyclotomic value() const;

  // Irrational part in the basis prod_i E(q_i)^(e_i), 0 <= e_i < phi(q_i),
  // over the prime powers q_i exactly dividing N: maps (p_i, e_i) lists with
  // e_i != 0 to coefficients. The constant basis element is returned under
  // the empty key together with the rational part.
  std::map<std::vector<std::pair<std::uint32_t, std::uint64_t>>, Rational> tensor_terms() const;

 private:
  std::uint32_t n_;
  BigInt integer_ = 0;
  Rational rational_ = 0;
  std::unordered_map<std::uint32_t, Rational> terms_;
  std::vector<std::pair<std::uint32_t, Rational>> scratch_;
  std::vector<std::pair<std::uint32_t, Rational>> next_;
};

// A sum of products whose factors may come from unrelated cyclotomic fields,
// e.g. a row of a character table. Each product is accumulated at the
// conductor of its own factors; rationality of the total is decided in a
// common tensor basis, so the lcm of all conductors never has to be formed.
class CyclotomicTotal {
 public:
  void add_product(const Rational& scale, std::initializer_list<CyclotomicSum::Factor> factors);
  std::optional<Rational> rational_value() const;

 private:
  BigInt integer_ = 0;
  Rational rational_ = 0;
  std::map<std::uint32_t, CyclotomicSum> sums_;
};

}  // namespace sporgen
