#include "sporgen/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "sporgen/error.hpp"

namespace sporgen {

namespace {

struct PrimePower {
  std::uint32_t p;
  std::uint32_t q;  // p^a
};

std::vector<PrimePower> factorize(std::uint32_t n) {
  std::vector<PrimePower> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    out.push_back({p, q});
  }
  if (n > 1) out.push_back({n, n});
  return out;
}

// Inverse of a modulo m (m >= 1, gcd(a, m) = 1); 0 when m = 1.
std::uint32_t inv_mod(std::uint64_t a, std::uint32_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = m, new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw Error("internal: non-invertible residue");
  return static_cast<std::uint32_t>(t < 0 ? t + m : t);
}

void check_conductor(std::uint64_t n) {
  if (n == 0 || n > kMaxConductor) {
    throw Error("conductor " + std::to_string(n) + " outside 1.." + std::to_string(kMaxConductor));
  }
}

using Poly = std::vector<BigInt>;

// num / den for a monic den that divides num exactly.
Poly exact_divide(const Poly& num, const Poly& den) {
  const std::size_t d = den.size() - 1;
  Poly rem = num;
  Poly quot(num.size() - d, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const BigInt c = rem[i + d];
    if (c == 0) continue;
    quot[i] = c;
    for (std::size_t j = 0; j <= d; ++j) {
      if (den[j] != 0) rem[i + j] -= c * den[j];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (rem[i] != 0) throw Error("internal: inexact polynomial division");
  }
  return quot;
}

std::map<std::uint32_t, Poly>& phi_cache() {
  static std::map<std::uint32_t, Poly> cache;
  return cache;
}

std::shared_mutex& phi_mutex() {
  static std::shared_mutex mu;
  return mu;
}

// Remainder of v modulo Phi_n, written back into v (resized to phi(n)).
void reduce_mod_phi(std::vector<Rational>& v, std::uint32_t n) {
  const Poly& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::pair<std::size_t, const BigInt*>> nonzero;
  for (std::size_t j = 0; j < deg; ++j) {
    if (phi[j] != 0) nonzero.emplace_back(j, &phi[j]);
  }
  for (std::size_t d = v.size(); d-- > deg;) {
    if (v[d] == 0) continue;
    const Rational c = v[d];
    for (const auto& [j, coef] : nonzero) v[d - deg + j] -= c * *coef;
    v[d] = 0;
  }
  v.resize(deg);
}

// Moves the reduced value to the smallest conductor that contains it.
void minimize(std::uint32_t& n, std::vector<Rational>& c) {
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    for (const auto& [p, q] : factorize(n)) {
      const std::uint32_t m = n / p;
      if (m % p == 0) {
        // Phi_n(x) = Phi_m(x^p): the value lies in Q(E(m)) iff only exponents
        // divisible by p occur.
        bool ok = true;
        for (std::size_t i = 0; i < c.size() && ok; ++i) ok = (i % p == 0) || c[i] == 0;
        if (!ok) continue;
        std::vector<Rational> g(euler_phi(m));
        for (std::size_t j = 0; j < g.size(); ++j) g[j] = c[p * j];
        c = std::move(g);
      } else {
        // x^e = y^alpha z^beta with y = x^p of order m and z = x^m of order p;
        // 1, z, ..., z^(p-2) is a basis over Q(E(m)).
        const std::uint32_t p_inv = inv_mod(p, m);
        const std::uint32_t m_inv = inv_mod(m, p);
        std::vector<std::vector<Rational>> b(p, std::vector<Rational>(m));
        for (std::size_t e = 0; e < c.size(); ++e) {
          if (c[e] == 0) continue;
          const std::size_t alpha = m == 1 ? 0 : (e * p_inv) % m;
          const std::size_t beta = (e * m_inv) % p;
          b[beta][alpha] += c[e];
        }
        for (std::uint32_t t = 0; t + 1 < p; ++t) {
          for (std::uint32_t a = 0; a < m; ++a) b[t][a] -= b[p - 1][a];
        }
        bool ok = true;
        for (std::uint32_t t = 1; t + 1 < p && ok; ++t) {
          reduce_mod_phi(b[t], m);
          ok = std::all_of(b[t].begin(), b[t].end(), [](const Rational& r) { return r == 0; });
        }
        if (!ok) continue;
        reduce_mod_phi(b[0], m);
        c = std::move(b[0]);
      }
      n = m;
      changed = true;
      break;
    }
  }
}

std::string rational_text(const Rational& q) { return q.get_str(10); }

}  // namespace

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (const auto& [p, q] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t l = std::lcm<std::uint64_t>(a, b);
  check_conductor(l);
  return static_cast<std::uint32_t>(l);
}

const std::vector<BigInt>& cyclotomic_polynomial(std::uint32_t n) {
  check_conductor(n);
  {
    std::shared_lock lock(phi_mutex());
    auto it = phi_cache().find(n);
    if (it != phi_cache().end()) return it->second;
  }
  Poly poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = exact_divide(poly, cyclotomic_polynomial(d));
  }
  std::unique_lock lock(phi_mutex());
  return phi_cache().emplace(n, std::move(poly)).first->second;
}

BigInt cyclotomic_value(std::uint32_t n, const BigInt& q) {
  if (n == 0) throw Error("cyclotomic index must be positive");
  if (abs(q) <= 1) {
    const Poly& phi = cyclotomic_polynomial(n);
    BigInt value = 0;
    for (std::size_t i = phi.size(); i-- > 0;) value = value * q + phi[i];
    return value;
  }
  // Phi_n(q) = prod_{d | n} (q^d - 1)^mu(n/d)
  auto mobius = [](std::uint32_t k) {
    int mu = 1;
    for (std::uint32_t p = 2; p * p <= k; ++p) {
      if (k % p) continue;
      k /= p;
      if (k % p == 0) return 0;
      mu = -mu;
    }
    if (k > 1) mu = -mu;
    return mu;
  };
  BigInt num = 1, den = 1;
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    const int mu = mobius(n / d);
    if (mu == 0) continue;
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), q.get_mpz_t(), d);
    term -= 1;
    (mu > 0 ? num : den) *= term;
  }
  return num / den;
}

Cyclotomic::Cyclotomic(const Rational& q) : c_{q} { c_[0].canonicalize(); }

Cyclotomic Cyclotomic::root_of_unity(std::uint32_t n, std::int64_t k) {
  check_conductor(n);
  std::vector<Rational> v(n);
  const std::int64_t e = ((k % static_cast<std::int64_t>(n)) + n) % n;
  v[static_cast<std::size_t>(e)] = 1;
  return from_coefficients(n, std::move(v));
}

Cyclotomic Cyclotomic::from_coefficients(std::uint32_t n, std::vector<Rational> coeffs) {
  check_conductor(n);
  for (auto& c : coeffs) c.canonicalize();
  if (coeffs.size() > n) {
    for (std::size_t i = n; i < coeffs.size(); ++i) coeffs[i % n] += coeffs[i];
    coeffs.resize(n);
  }
  if (coeffs.empty()) coeffs.emplace_back(0);
  reduce_mod_phi(coeffs, n);
  minimize(n, coeffs);
  Cyclotomic out;
  out.n_ = n;
  out.c_ = std::move(coeffs);
  return out;
}

std::optional<Rational> Cyclotomic::to_rational() const {
  if (n_ != 1) return std::nullopt;
  return c_[0];
}

std::string Cyclotomic::to_string() const {
  if (n_ == 1) return rational_text(c_[0]);
  std::string out;
  const std::string root = "E(" + std::to_string(n_) + ")";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    std::string term;
    if (i == 0) {
      term = rational_text(c);
    } else {
      if (c == 1) {
        term = root;
      } else if (c == -1) {
        term = "-" + root;
      } else {
        term = rational_text(c) + "*" + root;
      }
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

Cyclotomic Cyclotomic::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty cyclotomic value");
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("malformed cyclotomic value '" + std::string(text) + "': " + why);
  };
  std::size_t i = 0;
  auto read_uint = [&]() {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw fail("expected a number");
    return std::string_view(s).substr(start, i - start);
  };
  struct Term {
    Rational coef;
    std::uint32_t n;
    std::int64_t k;
  };
  std::vector<Term> terms;
  Rational constant = 0;
  std::uint32_t conductor = 1;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = 1;
    bool has_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::string literal(read_uint());
      if (i < s.size() && s[i] == '/') {
        ++i;
        literal += "/";
        literal += read_uint();
      }
      coef = parse_rational(literal);
      has_coef = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
      } else {
        constant += sign * coef;
        continue;
      }
    }
    if (s.compare(i, 2, "E(") != 0) throw fail(has_coef ? "expected E(n) after '*'" : "expected a term");
    i += 2;
    const BigInt n_big = parse_bigint(read_uint());
    if (i >= s.size() || s[i] != ')') throw fail("expected ')'");
    ++i;
    if (n_big <= 0 || n_big > kMaxConductor) throw fail("conductor out of range");
    const auto n = static_cast<std::uint32_t>(n_big.get_ui());
    std::int64_t k = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      bool negative = false;
      if (i < s.size() && s[i] == '-') {
        negative = true;
        ++i;
      }
      const BigInt k_big = parse_bigint(read_uint()) % n;
      k = static_cast<std::int64_t>(k_big.get_ui());
      if (negative) k = -k;
    }
    conductor = lcm_conductor(conductor, n);
    terms.push_back({sign * coef, n, k});
  }
  std::vector<Rational> v(conductor);
  v[0] = constant;
  for (const auto& t : terms) {
    const std::int64_t e = ((t.k % t.n) + t.n) % t.n;
    v[static_cast<std::size_t>(e) * (conductor / t.n)] += t.coef;
  }
  return from_coefficients(conductor, std::move(v));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(a.c_[0] + b.c_[0]);
  const std::uint32_t n = lcm_conductor(a.n_, b.n_);
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i * (n / a.n_)] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i * (n / b.n_)] += b.c_[i];
  return Cyclotomic::from_coefficients(n, std::move(v));
}

Cyclotomic operator-(const Cyclotomic& a) {
  Cyclotomic out = a;
  for (auto& c : out.c_) c = -c;
  return out;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(a.c_[0] * b.c_[0]);
  const std::uint32_t n = lcm_conductor(a.n_, b.n_);
  const std::size_t sa = n / a.n_, sb = n / b.n_;
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] != 0) v[(i * sa + j * sb) % n] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclotomic::from_coefficients(n, std::move(v));
}

Cyclotomic conjugate(const Cyclotomic& a) {
  if (a.is_rational()) return a;
  const std::uint32_t n = a.conductor();
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) v[(n - i) % n] = a.coefficients()[i];
  return Cyclotomic::from_coefficients(n, std::move(v));
}

std::vector<Rational> embed(const Cyclotomic& a, std::uint32_t m) {
  check_conductor(m);
  if (m % a.conductor() != 0) {
    throw Error("cannot embed conductor " + std::to_string(a.conductor()) + " into " + std::to_string(m));
  }
  std::vector<Rational> v(m);
  const std::size_t step = m / a.conductor();
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) v[i * step] = a.coefficients()[i];
  reduce_mod_phi(v, m);
  return v;
}

namespace {

bool integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace

CyclotomicSum::CyclotomicSum(std::uint32_t conductor) : n_(conductor) {
  if (conductor == 0) throw Error("conductor must be positive");
}

void CyclotomicSum::add_product(const Rational& scale, std::initializer_list<Factor> factors) {
  bool irrational = false;
  bool integers = integral(scale);
  for (const auto& [f, conj] : factors) {
    if (!f->is_rational()) {
      irrational = true;
    } else if (!integral(f->coefficients()[0])) {
      integers = false;
    }
  }
  if (!irrational && integers) {
    BigInt product = scale.get_num();
    for (const auto& [f, conj] : factors) product *= f->coefficients()[0].get_num();
    integer_ += product;
    return;
  }
  Rational rational = scale;
  for (const auto& [f, conj] : factors) {
    if (f->is_rational()) rational *= f->coefficients()[0];
  }
  if (rational == 0) return;
  if (!irrational) {
    rational_ += rational;
    return;
  }
  scratch_.assign(1, {0u, rational});
  for (const auto& [f, conj] : factors) {
    if (f->is_rational()) continue;
    if (n_ % f->conductor() != 0) throw Error("factor conductor does not divide the sum conductor");
    const std::uint64_t step = n_ / f->conductor();
    next_.clear();
    const auto& c = f->coefficients();
    for (const auto& [e, coef] : scratch_) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const std::uint64_t shift = (i * step) % n_;
        const std::uint64_t exponent = conj ? (e + n_ - shift) % n_ : (e + shift) % n_;
        next_.emplace_back(static_cast<std::uint32_t>(exponent), coef * c[i]);
      }
    }
    std::sort(next_.begin(), next_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    scratch_.clear();
    for (auto& term : next_) {
      if (!scratch_.empty() && scratch_.back().first == term.first) {
        scratch_.back().second += term.second;
      } else {
        scratch_.push_back(std::move(term));
      }
    }
  }
  for (const auto& [e, coef] : scratch_) terms_[e] += coef;
}

std::map<std::vector<std::pair<std::uint32_t, std::uint64_t>>, Rational> CyclotomicSum::tensor_terms() const {
  // E(q)^(u + (p-1)s) = -sum_{t < p-1} E(q)^(u + t s) for q = p^a, s = p^(a-1),
  // applied independently in each prime-power coordinate.
  const auto primes = factorize(n_);
  std::unordered_map<std::uint32_t, Rational> work;
  for (const auto& [e, c] : terms_) {
    if (c != 0) work[e] += c;
  }
  std::vector<std::uint64_t> m_inv;
  for (const auto& [p, q] : primes) {
    const std::uint64_t m = n_ / q;
    m_inv.push_back(inv_mod(m, q));
    const std::uint64_t s = q / p;
    const std::uint64_t threshold = (p - 1) * s;
    std::unordered_map<std::uint32_t, Rational> next;
    for (const auto& [e, c] : work) {
      if (c == 0) continue;
      const std::uint64_t coord = (e % q) * m_inv.back() % q;
      if (coord < threshold) {
        next[e] += c;
        continue;
      }
      const std::uint64_t u = coord - threshold;
      for (std::uint64_t t = 0; t + 1 < p; ++t) {
        const std::uint64_t delta = (u + t * s + q - coord) % q;
        next[static_cast<std::uint32_t>((e + delta * m) % n_)] -= c;
      }
    }
    work = std::move(next);
  }
  std::map<std::vector<std::pair<std::uint32_t, std::uint64_t>>, Rational> out;
  out[{}] = rational_ + Rational(integer_);
  for (const auto& [e, c] : work) {
    if (c == 0) continue;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> key;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const std::uint64_t coord = (e % primes[i].q) * m_inv[i] % primes[i].q;
      if (coord) key.emplace_back(primes[i].p, coord);
    }
    out[key] += c;
  }
  return out;
}

std::optional<Rational> CyclotomicSum::rational_value() const {
  if (terms_.empty()) return rational_ + Rational(integer_);
  Rational value = 0;
  for (const auto& [key, c] : tensor_terms()) {
    if (c == 0) continue;
    if (!key.empty()) return std::nullopt;
    value = c;
  }
  return value;
}

Cyclotomic CyclotomicSum::value() const {
  check_conductor(n_);
  std::vector<Rational> v(n_);
  v[0] = rational_ + Rational(integer_);
  for (const auto& [e, c] : terms_) v[e] += c;
  return Cyclotomic::from_coefficients(n_, std::move(v));
}

void CyclotomicTotal::add_product(const Rational& scale, std::initializer_list<CyclotomicSum::Factor> factors) {
  std::uint64_t conductor = 1;
  bool integers = integral(scale);
  for (const auto& [f, conj] : factors) {
    conductor = std::lcm<std::uint64_t>(conductor, f->conductor());
    if (conductor > UINT32_MAX) throw Error("product conductor exceeds 32 bits");
    if (f->is_rational() && !integral(f->coefficients()[0])) integers = false;
  }
  if (conductor == 1) {
    if (integers) {
      BigInt product = scale.get_num();
      for (const auto& [f, conj] : factors) product *= f->coefficients()[0].get_num();
      integer_ += product;
    } else {
      Rational product = scale;
      for (const auto& [f, conj] : factors) product *= f->coefficients()[0];
      rational_ += product;
    }
    return;
  }
  const auto n = static_cast<std::uint32_t>(conductor);
  sums_.try_emplace(n, n).first->second.add_product(scale, factors);
}

std::optional<Rational> CyclotomicTotal::rational_value() const {
  // A basis element of Q(E(p^b)) is also one of Q(E(p^a)) for a >= b after
  // scaling its exponent by p^(a-b), so all partial sums share one basis.
  std::map<std::uint32_t, std::uint64_t> top;  // prime -> largest power
  for (const auto& [n, sum] : sums_) {
    for (const auto& [p, q] : factorize(n)) top[p] = std::max<std::uint64_t>(top[p], q);
  }
  std::map<std::vector<std::pair<std::uint32_t, std::uint64_t>>, Rational> total;
  total[{}] = rational_ + Rational(integer_);
  for (const auto& [n, sum] : sums_) {
    const auto primes = factorize(n);
    for (const auto& [basis, c] : sum.tensor_terms()) {
      auto key = basis;
      for (auto& [p, e] : key) {
        std::uint64_t q = 1;
        for (const auto& pp : primes) {
          if (pp.p == p) q = pp.q;
        }
        e *= top[p] / q;
      }
      total[key] += c;
    }
  }
  Rational value = 0;
  for (const auto& [key, c] : total) {
    if (c == 0) continue;
    if (!key.empty()) return std::nullopt;
    value = c;
  }
  return value;
}

}  // namespace sporgen
