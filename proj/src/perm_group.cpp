#include "sdcode/perm_group.hpp"

#include "sdcode/errors.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace sdc {

namespace {

std::optional<Point> first_moved(const Permutation& p) {
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p[i] != i) return static_cast<Point>(i);
  return std::nullopt;
}

}  // namespace

struct PermGroup::Chain {
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;  // indexed by point
  };

  std::size_t degree = 0;
  std::vector<Level> levels;

  void rebuild_orbit(Level& lv) const {
    lv.orbit.assign(1, lv.base);
    lv.transversal.assign(degree, std::nullopt);
    lv.transversal[lv.base] = Permutation(degree);
    for (std::size_t idx = 0; idx < lv.orbit.size(); ++idx) {
      Point beta = lv.orbit[idx];
      for (const auto& s : lv.gens) {
        Point gamma = s[beta];
        if (!lv.transversal[gamma]) {
          lv.transversal[gamma] = *lv.transversal[beta] * s;
          lv.orbit.push_back(gamma);
        }
      }
    }
  }

  // Strips g through levels [from, end). Returns the residue and the level
  // where stripping stopped (levels.size() if it passed through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      Point beta = g[levels[i].base];
      const auto& u = levels[i].transversal[beta];
      if (!u) return {std::move(g), i};
      g = g * u->inverse();
    }
    return {std::move(g), levels.size()};
  }

  void add_level(Point base) {
    Level lv;
    lv.base = base;
    levels.push_back(std::move(lv));
  }

  void build(const std::vector<Permutation>& generators, const std::vector<Point>& base_prefix) {
    std::vector<Permutation> gens;
    for (const auto& g : generators)
      if (!g.is_identity()) gens.push_back(g);
    for (Point b : base_prefix) add_level(b);
    for (const auto& g : gens) {
      bool fixes_all = std::all_of(levels.begin(), levels.end(), [&](const Level& lv) { return g[lv.base] == lv.base; });
      if (fixes_all) add_level(*first_moved(g));
    }
    for (std::size_t j = 0; j < levels.size(); ++j) {
      for (const auto& g : gens) {
        bool fixes_prefix = true;
        for (std::size_t l = 0; l < j && fixes_prefix; ++l) fixes_prefix = g[levels[l].base] == levels[l].base;
        if (fixes_prefix) levels[j].gens.push_back(g);
      }
      rebuild_orbit(levels[j]);
    }
    if (levels.empty()) return;
    std::size_t i = levels.size();
    while (i-- > 0) {
      bool restarted = false;
      for (std::size_t oi = 0; oi < levels[i].orbit.size() && !restarted; ++oi) {
        Point beta = levels[i].orbit[oi];
        for (std::size_t si = 0; si < levels[i].gens.size() && !restarted; ++si) {
          const Permutation& s = levels[i].gens[si];
          Permutation h = *levels[i].transversal[beta] * s * levels[i].transversal[s[beta]]->inverse();
          if (h.is_identity()) continue;
          auto [residue, j] = sift(std::move(h), i + 1);
          if (residue.is_identity()) continue;
          if (j == levels.size()) add_level(*first_moved(residue));
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels[l].gens.push_back(residue);
            rebuild_orbit(levels[l]);
          }
          i = j + 1;  // the loop decrement lands on level j
          restarted = true;
        }
      }
    }
  }
};

struct PermGroup::Holder {
  std::once_flag once;
  std::unique_ptr<Chain> chain;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::vector<Point> base_prefix)
    : degree_(degree),
      generators_(std::move(generators)),
      base_prefix_(std::move(base_prefix)),
      holder_(std::make_shared<Holder>()) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw ValidationError("PermGroup: generator degree mismatch");
  for (Point b : base_prefix_)
    if (b >= degree_) throw ValidationError("PermGroup: base point out of range");
}

const PermGroup::Chain& PermGroup::chain() const {
  std::call_once(holder_->once, [this] {
    auto c = std::make_unique<Chain>();
    c->degree = degree_;
    c->build(generators_, base_prefix_);
    holder_->chain = std::move(c);
  });
  return *holder_->chain;
}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (const auto& lv : chain().levels) o *= lv.orbit.size();
  return o;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  auto [residue, j] = chain().sift(p, 0);
  return j == chain().levels.size() && residue.is_identity();
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& lv : chain().levels) b.push_back(lv.base);
  return b;
}

std::vector<std::size_t> PermGroup::basic_orbit_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& lv : chain().levels) s.push_back(lv.orbit.size());
  return s;
}

std::vector<Point> PermGroup::orbit(Point b) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Point> orb{b};
  seen[b] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : generators_) {
      Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& visit) const {
  const auto& levels = chain().levels;
  // g = u_{k-1} * ... * u_0, built from the deepest level outwards.
  std::function<bool(std::size_t, const Permutation&)> rec = [&](std::size_t level, const Permutation& acc) -> bool {
    if (level == 0) return visit(acc);
    const auto& lv = levels[level - 1];
    for (Point beta : lv.orbit)
      if (!rec(level - 1, acc * *lv.transversal[beta])) return false;
    return true;
  };
  rec(levels.size(), Permutation(degree_));
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  const auto& levels = chain().levels;
  Permutation g(degree_);
  for (std::size_t l = levels.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> pick(0, levels[l].orbit.size() - 1);
    g = g * *levels[l].transversal[levels[l].orbit[pick(rng)]];
  }
  return g;
}

std::string to_string(const AutType& t) {
  return std::to_string(t.p) + "-(" + std::to_string(t.c) + "," + std::to_string(t.f) + ")";
}

namespace {

std::optional<AutType> type_if_order_p(const Permutation& g, unsigned p) {
  unsigned c = 0, f = 0;
  for (std::size_t len : g.cycle_type()) {
    if (len == 1)
      ++f;
    else if (len == p)
      ++c;
    else
      return std::nullopt;
  }
  if (c == 0) return std::nullopt;
  return AutType{p, c, f};
}

Permutation power(const Permutation& g, std::uint64_t e) {
  Permutation result(g.degree()), base = g;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace

PrimeTypeCensus prime_order_types(const PermGroup& g, unsigned p, std::uint64_t element_budget, std::size_t samples) {
  if (p < 3 || p % 2 == 0) throw ValidationError("prime_order_types: p must be an odd prime");
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw ValidationError("prime_order_types: p must be an odd prime");
  PrimeTypeCensus census;
  BigInt order = g.order();
  if (order % p != 0) return census;
  if (order <= element_budget) {
    g.for_each_element([&](const Permutation& x) {
      if (auto t = type_if_order_p(x, p)) census.types.insert(*t);
      return true;
    });
    return census;
  }
  census.exact = false;
  auto consider = [&](const Permutation& x) {
    std::uint64_t m = x.order();
    if (m % p != 0) return;
    if (auto t = type_if_order_p(power(x, m / p), p)) census.types.insert(*t);
  };
  for (const auto& x : g.generators()) consider(x);
  std::mt19937_64 rng(0x5d1c0de5ULL + p);
  for (std::size_t i = 0; i < samples; ++i) consider(g.random_element(rng));
  return census;
}

}  // namespace sdc
