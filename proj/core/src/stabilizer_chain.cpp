#include "sporgen/stabilizer_chain.hpp"

#include <algorithm>
#include <utility>

#include "sporgen/error.hpp"

namespace sporgen {

namespace {

constexpr int kQuietRandomSifts = 10;
constexpr std::size_t kReplacementSlots = 10;
constexpr int kReplacementWarmup = 30;

// Product-replacement random elements of the group generated by a list.
class ProductReplacement {
 public:
  ProductReplacement(std::span<const Permutation> gens, Rng& rng) : rng_(rng) {
    const std::size_t degree = gens.front().degree();
    for (std::size_t i = 0; i < std::max(kReplacementSlots, gens.size()); ++i) {
      slots_.push_back(gens[i % gens.size()]);
    }
    accumulator_ = Permutation::identity(degree);
    for (int i = 0; i < kReplacementWarmup; ++i) next();
  }

  const Permutation& next() {
    const std::size_t n = slots_.size();
    const std::size_t i = rng_.below(n);
    std::size_t j = rng_.below(n - 1);
    if (j >= i) ++j;
    if (rng_.below(2) == 0) {
      slots_[i] = compose(slots_[i], slots_[j]);
    } else {
      slots_[i] = compose(slots_[i], inverse(slots_[j]));
    }
    accumulator_ = compose(accumulator_, slots_[i]);
    return accumulator_;
  }

 private:
  Rng& rng_;
  std::vector<Permutation> slots_;
  Permutation accumulator_;
};

Point first_moved_point(const Permutation& p) {
  for (std::size_t c = 0; c < p.degree(); ++c) {
    if (p[static_cast<Point>(c)] != c) return static_cast<Point>(c);
  }
  return 0;
}

}  // namespace

class ChainBuilder {
 public:
  ChainBuilder(std::span<const Permutation> generators, const ChainOptions& options)
      : options_(options) {
    if (generators.empty()) throw Error("cannot build a chain from an empty generator list");
    degree_ = generators.front().degree();
    for (const auto& g : generators) {
      if (g.degree() != degree_) throw Error("generator degrees differ");
    }
    chain_.degree_ = degree_;
    chain_.generators_.assign(generators.begin(), generators.end());
    scratch_.resize(degree_);
    scratch2_.resize(degree_);

    for (Point b : options.base_prefix) {
      if (b >= degree_) throw Error("base point outside the permutation domain");
      if (std::find(base_.begin(), base_.end(), b) == base_.end()) push_level(b);
    }
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      bool moves_base = false;
      for (const auto& level : chain_.levels_) {
        if (g[level.base_point] != level.base_point) {
          moves_base = true;
          break;
        }
      }
      if (!moves_base) push_level(first_moved_point(g));
    }
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      // g belongs to S_l for every level up to and including the first base
      // point it moves.
      std::size_t last = 0;
      while (g[chain_.levels_[last].base_point] == chain_.levels_[last].base_point) ++last;
      for (std::size_t l = 0; l <= last; ++l) chain_.levels_[l].generators.push_back(g);
    }
    for (auto& level : chain_.levels_) {
      for (std::size_t s = 0; s < level.generators.size(); ++s) extend_orbit(level, s);
    }
    refresh_order();
  }

  StabilizerChain finish() {
    if (!chain_.levels_.empty()) {
      Rng rng(options_.seed);
      if (random_phase(rng)) return take();
    }
    verify();
    return take();
  }

 private:
  void push_level(Point b) {
    ChainLevel level;
    level.base_point = b;
    level.orbit.push_back(b);
    level.orbit_index.assign(degree_, -1);
    level.orbit_index[b] = 0;
    level.transversal.push_back(Permutation::identity(degree_));
    level.inverse_transversal.push_back(Permutation::identity(degree_));
    chain_.levels_.push_back(std::move(level));
    base_.push_back(b);
    checked_.emplace_back();
  }

  // Applies generator s (by index) to every orbit point that has not seen it,
  // then closes the orbit under all generators of the level.
  void extend_orbit(ChainLevel& level, std::size_t new_generator) {
    auto try_add = [&](std::size_t t, const Permutation& s) {
      const Point image = s[level.orbit[t]];
      if (level.orbit_index[image] >= 0) return;
      level.orbit_index[image] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(image);
      Permutation rep = compose(level.transversal[t], s);
      level.inverse_transversal.push_back(inverse(rep));
      level.transversal.push_back(std::move(rep));
    };
    const std::size_t old_size = level.orbit.size();
    for (std::size_t t = 0; t < old_size; ++t) try_add(t, level.generators[new_generator]);
    for (std::size_t t = old_size; t < level.orbit.size(); ++t) {
      for (std::size_t s = 0; s < level.generators.size(); ++s) try_add(t, level.generators[s]);
    }
  }

  // Sifts g (in place) from level `from`. Returns the level where it stopped;
  // levels().size() means it passed every level.
  std::size_t strip(std::vector<Point>& g, std::size_t from) {
    for (std::size_t i = from; i < chain_.levels_.size(); ++i) {
      const auto& level = chain_.levels_[i];
      const std::int32_t t = level.orbit_index[g[level.base_point]];
      if (t < 0) return i;
      if (t == 0) continue;
      compose_into(g, level.inverse_transversal[static_cast<std::size_t>(t)].images(), scratch2_);
      g.swap(scratch2_);
    }
    return chain_.levels_.size();
  }

  static bool is_identity(std::span<const Point> g) {
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (g[c] != c) return false;
    }
    return true;
  }

  // Adds a nontrivial residue that fixes base points 0..stop-1 to the
  // generator lists of levels first..stop, creating a level if needed.
  void add_residue(const std::vector<Point>& residue, std::size_t first, std::size_t stop) {
    Permutation h{std::vector<Point>(residue)};
    if (stop == chain_.levels_.size()) push_level(first_moved_point(h));
    for (std::size_t l = first; l <= stop; ++l) {
      auto& level = chain_.levels_[l];
      level.generators.push_back(h);
      extend_orbit(level, level.generators.size() - 1);
    }
    refresh_order();
  }

  void refresh_order() {
    BigInt order = 1;
    for (const auto& level : chain_.levels_) order *= static_cast<unsigned long>(level.orbit.size());
    chain_.order_ = std::move(order);
  }

  bool reached_stop_order() const {
    return options_.stop_at_order && chain_.order_ == *options_.stop_at_order;
  }

  bool random_phase(Rng& rng) {
    if (reached_stop_order()) return true;
    ProductReplacement source(chain_.generators_, rng);
    int quiet = 0;
    while (quiet < kQuietRandomSifts) {
      const Permutation& g = source.next();
      scratch_.assign(g.images().begin(), g.images().end());
      const std::size_t stop = strip(scratch_, 0);
      if (stop == chain_.levels_.size() && is_identity(scratch_)) {
        ++quiet;
        continue;
      }
      quiet = 0;
      // Level 0 already holds every input generator.
      add_residue(scratch_, std::min<std::size_t>(1, stop), stop);
      if (reached_stop_order()) return true;
    }
    return false;
  }

  // Deterministic Schreier-Sims: every Schreier generator of every level must
  // sift to the identity through the levels below it.
  void verify() {
    std::size_t i = chain_.levels_.size();
    while (i-- > 0) {
      bool restarted = false;
      auto& checked = checked_[i];
      for (std::size_t t = 0; t < chain_.levels_[i].orbit.size() && !restarted; ++t) {
        if (checked.size() <= t) checked.resize(t + 1);
        for (std::size_t s = 0; s < chain_.levels_[i].generators.size(); ++s) {
          if (checked[t].size() <= s) checked[t].resize(s + 1, 0);
          if (checked[t][s]) continue;
          const auto& level = chain_.levels_[i];
          const Point beta = level.orbit[t];
          const auto image_index = static_cast<std::size_t>(level.orbit_index[level.generators[s][beta]]);
          compose_into(level.transversal[t].images(), level.generators[s].images(), scratch_);
          if (std::equal(scratch_.begin(), scratch_.end(), level.transversal[image_index].images().begin())) {
            checked[t][s] = 1;
            continue;
          }
          compose_into(scratch_, level.inverse_transversal[image_index].images(), scratch2_);
          scratch_.swap(scratch2_);
          const std::size_t stop = strip(scratch_, i + 1);
          if (stop == chain_.levels_.size() && is_identity(scratch_)) {
            checked[t][s] = 1;
            continue;
          }
          add_residue(scratch_, i + 1, stop);
          i = stop + 1;  // resume the downward sweep at the deepest level touched
          restarted = true;
          break;
        }
      }
    }
  }

  StabilizerChain take() {
    auto& levels = chain_.levels_;
    levels.erase(std::remove_if(levels.begin(), levels.end(),
                                [](const ChainLevel& l) { return l.orbit.size() == 1; }),
                 levels.end());
    refresh_order();
    return std::move(chain_);
  }

  const ChainOptions& options_;
  std::size_t degree_ = 0;
  StabilizerChain chain_;
  std::vector<Point> base_;
  std::vector<std::vector<std::vector<char>>> checked_;
  std::vector<Point> scratch_;
  std::vector<Point> scratch2_;
};

StabilizerChain StabilizerChain::build(std::span<const Permutation> generators,
                                       const ChainOptions& options) {
  ChainBuilder builder(generators, options);
  return builder.finish();
}

StabilizerChain build_chain(std::span<const Permutation> generators, std::uint64_t seed) {
  ChainOptions options;
  options.seed = seed;
  return StabilizerChain::build(generators, options);
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  out.reserve(levels_.size());
  for (const auto& level : levels_) out.push_back(level.base_point);
  return out;
}

bool StabilizerChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw Error("degree mismatch in membership test");
  std::vector<Point> g(p.images().begin(), p.images().end());
  std::vector<Point> tmp(degree_);
  for (const auto& level : levels_) {
    const std::int32_t t = level.orbit_index[g[level.base_point]];
    if (t < 0) return false;
    compose_into(g, level.inverse_transversal[static_cast<std::size_t>(t)].images(), tmp);
    g.swap(tmp);
  }
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (g[c] != c) return false;
  }
  return true;
}

std::uint64_t StabilizerChain::rank(const Permutation& member) const {
  return rank(member.images());
}

std::uint64_t StabilizerChain::rank(std::span<const Point> member) const {
  std::uint64_t index = 0;
  std::vector<std::size_t> digits(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    Point x = member[levels_[i].base_point];
    for (std::size_t l = 0; l < i; ++l) x = levels_[l].inverse_transversal[digits[l]][x];
    const std::int32_t t = levels_[i].orbit_index[x];
    if (t < 0) throw Error("rank requested for a non-member");
    digits[i] = static_cast<std::size_t>(t);
    index = index * levels_[i].orbit.size() + digits[i];
  }
  return index;
}

Permutation StabilizerChain::unrank(std::uint64_t index) const {
  std::vector<std::size_t> digits(levels_.size());
  for (std::size_t i = levels_.size(); i-- > 0;) {
    digits[i] = index % levels_[i].orbit.size();
    index /= levels_[i].orbit.size();
  }
  Permutation g = Permutation::identity(degree_);
  for (std::size_t i = 0; i < levels_.size(); ++i) g = compose(levels_[i].transversal[digits[i]], g);
  return g;
}

Permutation StabilizerChain::random_element(Rng& rng) const {
  Permutation g = Permutation::identity(degree_);
  for (const auto& level : levels_) {
    g = compose(level.transversal[rng.below(level.orbit.size())], g);
  }
  return g;
}

ElementStream::ElementStream(const StabilizerChain& chain, std::uint64_t first, std::uint64_t last)
    : chain_(&chain), rank_(first), last_(last) {
  const auto levels = chain.levels();
  digits_.assign(levels.size(), 0);
  partial_.assign(std::max<std::size_t>(levels.size(), 1), std::vector<Point>(chain.degree()));
  if (levels.empty()) {
    for (std::size_t c = 0; c < chain.degree(); ++c) partial_[0][c] = static_cast<Point>(c);
  }
}

void ElementStream::rebuild_from(std::size_t level) {
  const auto levels = chain_->levels();
  for (std::size_t i = level; i < levels.size(); ++i) {
    const auto& u = levels[i].transversal[digits_[i]].images();
    if (i == 0) {
      std::copy(u.begin(), u.end(), partial_[0].begin());
    } else {
      compose_into(u, partial_[i - 1], partial_[i]);
    }
  }
}

bool ElementStream::next() {
  const auto levels = chain_->levels();
  if (rank_ >= last_) return false;
  if (!started_) {
    std::uint64_t index = rank_;
    for (std::size_t i = levels.size(); i-- > 0;) {
      digits_[i] = index % levels[i].orbit.size();
      index /= levels[i].orbit.size();
    }
    rebuild_from(0);
    started_ = true;
    ++rank_;
    return true;
  }
  std::size_t i = levels.size();
  while (i-- > 0) {
    if (++digits_[i] < levels[i].orbit.size()) break;
    digits_[i] = 0;
  }
  rebuild_from(i);
  ++rank_;
  return true;
}

Permutation ElementStream::current_permutation() const {
  return Permutation(std::vector<Point>(current().begin(), current().end()));
}

ElementStream enumerate_elements(const StabilizerChain& chain, std::uint64_t limit) {
  if (chain.order() > from_u64(limit)) {
    throw LimitExceeded("group order " + to_string(chain.order()) + " exceeds the enumeration limit " +
                        std::to_string(limit));
  }
  return ElementStream(chain, 0, to_u64(chain.order()));
}

std::vector<Point> orbit_of(Point start, std::span<const Permutation> gens) {
  std::vector<Point> orbit{start};
  if (gens.empty()) return orbit;
  std::vector<bool> seen(gens.front().degree(), false);
  seen[start] = true;
  for (std::size_t t = 0; t < orbit.size(); ++t) {
    for (const auto& g : gens) {
      const Point image = g[orbit[t]];
      if (!seen[image]) {
        seen[image] = true;
        orbit.push_back(image);
      }
    }
  }
  return orbit;
}

}  // namespace sporgen
