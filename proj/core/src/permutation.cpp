#include "sporgen/permutation.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "sporgen/error.hpp"

namespace sporgen {

namespace {

void require_same_degree(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw Error("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                std::to_string(q.degree()));
  }
}

}  // namespace

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0 || degree > kMaxDegree) {
    throw Error("permutation degree " + std::to_string(degree) + " out of range");
  }
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  const std::size_t n = images_.size();
  if (n == 0 || n > kMaxDegree) {
    throw Error("permutation degree " + std::to_string(n) + " out of range");
  }
  std::vector<bool> hit(n, false);
  for (Point c : images_) {
    if (c >= n || hit[c]) throw Error("image list is not a bijection");
    hit[c] = true;
  }
}

Permutation Permutation::from_one_based(std::span<const std::uint64_t> images) {
  std::vector<Point> zero_based;
  zero_based.reserve(images.size());
  for (auto v : images) {
    if (v == 0 || v > images.size()) throw Error("image list is not a bijection");
    zero_based.push_back(static_cast<Point>(v - 1));
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  Permutation result = identity(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      std::uint64_t value = 0;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<unsigned>(text[i] - '0');
        if (value > degree) throw ParseError("cycle point exceeds degree");
        ++i;
        ++digits;
      }
      if (digits == 0) throw ParseError("malformed cycle notation");
      if (value == 0) throw ParseError("cycle points are 1-based");
      const auto c = static_cast<Point>(value - 1);
      if (used[c]) throw ParseError("point repeated in cycle notation");
      used[c] = true;
      cycle.push_back(c);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      result.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t c = 0; c < images_.size(); ++c) {
    if (images_[c] != c) return false;
  }
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    for (Point c = static_cast<Point>(start); !seen[c]; c = images_[c]) {
      seen[c] = true;
      if (c != start) out += ',';
      out += std::to_string(c + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

void compose_into(std::span<const Point> p, std::span<const Point> q, std::span<Point> out) {
  for (std::size_t c = 0; c < p.size(); ++c) out[c] = q[p[c]];
}

void inverse_into(std::span<const Point> p, std::span<Point> out) {
  for (std::size_t c = 0; c < p.size(); ++c) out[p[c]] = static_cast<Point>(c);
}

Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q);
  std::vector<Point> images(p.degree());
  compose_into(p.images_, q.images_, images);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> images(p.degree());
  inverse_into(p.images_, images);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation power(const Permutation& p, std::int64_t k) {
  const std::size_t n = p.degree();
  std::vector<Point> images(n);
  std::vector<bool> seen(n, false);
  std::vector<Point> cycle;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    cycle.clear();
    for (Point c = static_cast<Point>(start); !seen[c]; c = p.images_[c]) {
      seen[c] = true;
      cycle.push_back(c);
    }
    const auto len = static_cast<std::int64_t>(cycle.size());
    const std::int64_t shift = ((k % len) + len) % len;
    for (std::int64_t t = 0; t < len; ++t) {
      images[cycle[static_cast<std::size_t>(t)]] = cycle[static_cast<std::size_t>((t + shift) % len)];
    }
  }
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  require_same_degree(p, g);
  std::vector<Point> images(p.degree());
  for (std::size_t c = 0; c < images.size(); ++c) images[g.images_[c]] = g.images_[p.images_[c]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

std::uint64_t element_order(std::span<const Point> p, std::vector<std::uint8_t>& seen) {
  seen.assign(p.size(), 0);
  std::uint64_t order = 1;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    for (Point c = static_cast<Point>(start); !seen[c]; c = p[c]) {
      seen[c] = 1;
      ++len;
    }
    const std::uint64_t g = std::gcd(order, len);
    const std::uint64_t factor = len / g;
    if (order > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw Error("element order exceeds 64 bits");
    }
    order *= factor;
  }
  return order;
}

std::uint64_t element_order(const Permutation& p) {
  std::vector<std::uint8_t> seen;
  return element_order(p.images(), seen);
}

}  // namespace sporgen
