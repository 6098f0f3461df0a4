#include "sdcode/equivalence.hpp"

#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/parallel.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <numeric>

namespace sdc {

DesignInvariant design_invariant(const LinearCode& c, std::size_t w, std::size_t max_dim) {
  const std::size_t n = c.length();
  DesignInvariant inv;
  inv.weight = w;
  inv.gram.assign(n, std::vector<std::uint32_t>(n, 0));
  for (Word x : codewords_of_weight(c, w, max_dim)) {
    ++inv.word_count;
    for (Word a = x; a; a &= a - 1) {
      auto& row = inv.gram[__builtin_ctzll(a)];
      for (Word b = x; b; b &= b - 1) ++row[__builtin_ctzll(b)];
    }
  }
  for (const auto& row : inv.gram) inv.n_set_unfiltered.insert(row.begin(), row.end());
  inv.n_set = inv.n_set_unfiltered;
  if (n == 40 && w == 8 && is_doubly_even(c) && is_self_dual(c) && min_weight(c, max_dim) == 8) {
    inv.value_57_removed = inv.n_set.erase(57) > 0;
  }
  return inv;
}

std::strong_ordering operator<=>(const Fingerprint& a, const Fingerprint& b) {
  if (auto r = a.aut_order.has_value() <=> b.aut_order.has_value(); r != 0) return r;
  if (a.aut_order && *a.aut_order != *b.aut_order)
    return *a.aut_order < *b.aut_order ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto r = std::tie(a.a4, a.max_n, a.min_n, a.card_n) <=> std::tie(b.a4, b.max_n, b.min_n, b.card_n); r != 0)
    return r;
  if (auto r = a.weights.counts <=> b.weights.counts; r != 0) return r;
  return a.gram_rows <=> b.gram_rows;
}

Fingerprint fingerprint(const LinearCode& c, bool with_aut_order) {
  Fingerprint fp;
  fp.weights = c.weights();
  fp.a4 = fp.weights[4];
  auto inv = design_invariant(c, 8);
  if (!inv.n_set.empty()) {
    fp.max_n = *inv.n_set.rbegin();
    fp.min_n = *inv.n_set.begin();
  }
  fp.card_n = inv.n_set.size();
  fp.gram_rows = inv.gram;
  for (auto& row : fp.gram_rows) std::sort(row.begin(), row.end());
  std::sort(fp.gram_rows.begin(), fp.gram_rows.end());
  if (with_aut_order) fp.aut_order = automorphism_group(c).order();
  return fp;
}

namespace {

// Bipartite incidence graph: coordinates 0..n-1, then one vertex per
// distinguishing codeword.
struct Graph {
  std::size_t n = 0;
  std::size_t size = 0;
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> adj;
  std::size_t degree(std::uint32_t v) const { return start[v + 1] - start[v]; }
};

struct Partition {
  std::vector<std::uint32_t> lab;   // position -> vertex
  std::vector<std::uint32_t> pos;   // vertex -> position
  std::vector<std::uint32_t> cell;  // vertex -> start position of its cell
  std::vector<std::uint32_t> end;   // cell start -> one past its last position
  std::size_t cells = 0;
  std::size_t coord_cells = 0;
};

struct Invariant {
  std::uint64_t trace = 0;
  std::size_t cells = 0;
  std::size_t coord_cells = 0;
  friend auto operator<=>(const Invariant&, const Invariant&) = default;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : g_(g), count_(g.size, 0), touched_in_cell_(g.size, 0), in_queue_(g.size, 0) {}

  // Equitable refinement from the given splitter cells. Stops early once
  // every coordinate is in a singleton cell.
  std::uint64_t refine(Partition& p, const std::vector<std::uint32_t>& splitters) {
    std::uint64_t h = 0x51ed27a1ULL;
    std::vector<std::uint32_t> queue;
    std::size_t head = 0;
    for (auto s : splitters) {
      queue.push_back(s);
      in_queue_[s] = 1;
    }
    while (head < queue.size() && p.coord_cells < g_.n) {
      std::uint32_t s = queue[head++];
      in_queue_[s] = 0;
      std::uint32_t e = p.end[s];
      for (std::uint32_t i = s; i < e; ++i) {
        std::uint32_t v = p.lab[i];
        for (std::uint32_t k = g_.start[v]; k < g_.start[v + 1]; ++k) {
          std::uint32_t u = g_.adj[k];
          if (count_[u]++ != 0) continue;
          touched_.push_back(u);
          std::uint32_t c = p.cell[u];
          std::uint32_t ce = p.end[c];
          if (ce - c == 1) continue;
          if (touched_in_cell_[c] == 0) touched_cells_.push_back(c);
          // move u into the touched block at the tail of its cell
          std::uint32_t target = ce - 1 - touched_in_cell_[c]++;
          std::uint32_t w = p.lab[target];
          std::uint32_t pu = p.pos[u];
          p.lab[target] = u;
          p.pos[u] = target;
          p.lab[pu] = w;
          p.pos[w] = pu;
        }
      }
      std::sort(touched_cells_.begin(), touched_cells_.end());
      for (std::uint32_t c : touched_cells_) {
        std::uint32_t t = touched_in_cell_[c];
        touched_in_cell_[c] = 0;
        std::uint32_t y = p.end[c];
        std::uint32_t tb = y - t;
        std::sort(p.lab.begin() + tb, p.lab.begin() + y,
                  [&](std::uint32_t a, std::uint32_t b) { return count_[a] < count_[b]; });
        frags_.clear();
        if (tb > c) frags_.push_back({c, 0});
        for (std::uint32_t i = tb; i < y; ++i) {
          p.pos[p.lab[i]] = i;
          if (i == tb || count_[p.lab[i]] != count_[p.lab[i - 1]]) frags_.push_back({i, count_[p.lab[i]]});
        }
        if (frags_.size() == 1) continue;
        h = mix(h, c);
        std::size_t largest = 0;
        std::uint32_t largest_size = 0;
        for (std::size_t f = 0; f < frags_.size(); ++f) {
          std::uint32_t fs = frags_[f].first;
          std::uint32_t fe = f + 1 < frags_.size() ? frags_[f + 1].first : y;
          p.end[fs] = fe;
          if (f > 0)
            for (std::uint32_t i = fs; i < fe; ++i) p.cell[p.lab[i]] = fs;
          h = mix(mix(h, frags_[f].second), fe - fs);
          if (fe - fs > largest_size) {
            largest_size = fe - fs;
            largest = f;
          }
        }
        p.cells += frags_.size() - 1;
        if (c < g_.n) p.coord_cells += frags_.size() - 1;
        bool was_queued = in_queue_[c] != 0;
        for (std::size_t f = 0; f < frags_.size(); ++f) {
          std::uint32_t fs = frags_[f].first;
          if (in_queue_[fs]) continue;
          if (!was_queued && f == largest) continue;
          queue.push_back(fs);
          in_queue_[fs] = 1;
        }
      }
      touched_cells_.clear();
      for (auto u : touched_) count_[u] = 0;
      touched_.clear();
    }
    for (std::size_t i = head; i < queue.size(); ++i) in_queue_[queue[i]] = 0;
    return h;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> touched_in_cell_;
  std::vector<char> in_queue_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> touched_cells_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frags_;
};

std::vector<Word> distinguishing_words(const LinearCode& c, const CanonicalOptions& opts) {
  const std::size_t n = c.length();
  if (c.dimension() == 0) return {};
  std::vector<std::uint64_t> counts(n + 1, 0);
  for_each_codeword(c, [&](Word x) { ++counts[words::weight(x)]; }, opts.max_dim);
  std::size_t w1 = 0, w2 = 0;
  for (std::size_t w = 1; w <= n; ++w)
    if (counts[w]) {
      if (!w1)
        w1 = w;
      else if (!w2) {
        w2 = w;
        break;
      }
    }
  if (counts[w1] > opts.codeword_cap)
    throw BudgetError("canonical form: " + std::to_string(counts[w1]) + " codewords of weight " +
                      std::to_string(w1) + " exceed the cap");
  bool take_w2 = w2 && counts[w1] + counts[w2] <= opts.codeword_cap;
  std::vector<Word> out;
  out.reserve(counts[w1] + (take_w2 ? counts[w2] : 0));
  for_each_codeword(c, [&](Word x) {
    auto wt = static_cast<std::size_t>(words::weight(x));
    if (wt == w1 || (take_w2 && wt == w2)) out.push_back(x);
  }, opts.max_dim);
  std::sort(out.begin(), out.end());
  return out;
}

struct Leaf {
  std::vector<Invariant> seq;
  std::vector<Word> cert;
  Permutation labeling;
  std::vector<std::uint32_t> path;
};

class LabelSearch {
 public:
  LabelSearch(const LinearCode& c, const CanonicalOptions& opts) : code_(c), opts_(opts) {
    build_graph();
  }

  LabelingResult run() {
    Refiner refiner(graph_);
    refiner_ = &refiner;
    Partition root = initial_partition();
    std::vector<std::uint32_t> splitters;
    for (std::uint32_t s = 0; s < graph_.size; s = root.end[s]) splitters.push_back(s);
    Invariant inv{refiner.refine(root, splitters), root.cells, root.coord_cells};
    seq_.push_back(inv);
    visit(root, 0, true);

    LabelingResult res{{permute(code_, best_->labeling), best_->labeling}, gens_, 1, nodes_};
    res.orbit_product = orbit_product();
    return res;
  }

 private:
  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);

  void build_graph() {
    const std::size_t n = code_.length();
    words_ = distinguishing_words(code_, opts_);
    graph_.n = n;
    graph_.size = n + words_.size();
    std::vector<std::vector<std::uint32_t>> adj(graph_.size);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto v = static_cast<std::uint32_t>(n + k);
      for (Word a = words_[k]; a; a &= a - 1) {
        auto i = static_cast<std::uint32_t>(__builtin_ctzll(a));
        adj[v].push_back(i);
        adj[i].push_back(v);
      }
    }
    graph_.start.assign(graph_.size + 1, 0);
    for (std::size_t v = 0; v < graph_.size; ++v) graph_.start[v + 1] = graph_.start[v] + adj[v].size();
    graph_.adj.reserve(graph_.start.back());
    for (auto& a : adj) graph_.adj.insert(graph_.adj.end(), a.begin(), a.end());
  }

  Partition initial_partition() const {
    const std::size_t n = code_.length();
    // coordinate colour: (diagonal Gram entry, sorted off-diagonal entries)
    std::vector<std::vector<std::uint32_t>> gram(n, std::vector<std::uint32_t>(n, 0));
    for (Word x : words_)
      for (Word a = x; a; a &= a - 1) {
        auto& row = gram[__builtin_ctzll(a)];
        for (Word b = x; b; b &= b - 1) ++row[__builtin_ctzll(b)];
      }
    std::vector<std::vector<std::uint32_t>> key(n);
    for (std::size_t i = 0; i < n; ++i) {
      key[i].push_back(gram[i][i]);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) key[i].push_back(gram[i][j]);
      std::sort(key[i].begin() + 1, key[i].end());
    }
    Partition p;
    p.lab.resize(graph_.size);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    std::stable_sort(p.lab.begin(), p.lab.begin() + n, [&](auto a, auto b) { return key[a] < key[b]; });
    std::stable_sort(p.lab.begin() + n, p.lab.end(), [&](auto a, auto b) {
      return words::weight(words_[a - n]) < words::weight(words_[b - n]);
    });
    p.pos.resize(graph_.size);
    p.cell.resize(graph_.size);
    p.end.resize(graph_.size);
    for (std::uint32_t i = 0; i < graph_.size; ++i) p.pos[p.lab[i]] = i;
    auto same = [&](std::uint32_t a, std::uint32_t b) {
      if ((a < n) != (b < n)) return false;
      if (a < n) return key[a] == key[b];
      return words::weight(words_[a - n]) == words::weight(words_[b - n]);
    };
    std::uint32_t s = 0;
    for (std::uint32_t i = 0; i <= graph_.size; ++i) {
      if (i == graph_.size || (i > s && !same(p.lab[i], p.lab[s]))) {
        if (i > s) {
          p.end[s] = i;
          ++p.cells;
          if (s < n) ++p.coord_cells;
        }
        s = i;
      }
      if (i < graph_.size) p.cell[p.lab[i]] = s;
    }
    return p;
  }

  Leaf make_leaf(const Partition& p) const {
    const std::size_t n = code_.length();
    std::vector<Point> img(n);
    for (std::size_t v = 0; v < n; ++v) img[v] = p.pos[v];
    Permutation lab(std::move(img));
    LinearCode image = permute(code_, lab);
    return Leaf{seq_, std::vector<Word>(image.basis().begin(), image.basis().end()), std::move(lab), path_};
  }

  static std::size_t common_prefix(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  void record(const Permutation& from, const Permutation& to) {
    Permutation gamma = from * to.inverse();
    if (gamma.is_identity()) return;
    if (!(permute(code_, gamma) == code_)) throw InvariantError("canonical search produced a non-automorphism");
    gens_.push_back(std::move(gamma));
  }

  int compare_best(std::size_t depth) const {
    for (std::size_t k = 0; k <= depth; ++k) {
      if (seq_[k] < best_->seq[k]) return -1;
      if (best_->seq[k] < seq_[k]) return 1;
    }
    return 0;
  }

  // Returns the depth of the ancestor the search should resume at, or kNoJump.
  std::size_t visit(Partition& p, std::size_t depth, bool eq_first) {
    if (opts_.max_nodes && nodes_ >= opts_.max_nodes) throw BudgetError("canonical search: node budget exhausted");
    ++nodes_;
    const std::size_t n = code_.length();
    if (first_) {
      eq_first = eq_first && seq_[depth] == first_->seq[depth];
      if (!eq_first && compare_best(depth) < 0) return kNoJump;
    }
    if (p.coord_cells == n) {
      Leaf leaf = make_leaf(p);
      if (!first_) {
        first_ = leaf;
        best_ = std::move(leaf);
        return kNoJump;
      }
      if (eq_first && leaf.cert == first_->cert) {
        record(first_->labeling, leaf.labeling);
        return common_prefix(path_, first_->path);
      }
      int cmp = compare_best(depth);
      if (cmp > 0 || (cmp == 0 && best_->cert < leaf.cert)) {
        best_ = std::move(leaf);
        return kNoJump;
      }
      if (cmp == 0 && leaf.cert == best_->cert) {
        record(best_->labeling, leaf.labeling);
        return common_prefix(path_, best_->path);
      }
      return kNoJump;
    }

    // target: first largest non-singleton coordinate cell
    std::uint32_t target = 0, target_size = 0;
    for (std::uint32_t s = 0; s < n; s = p.end[s])
      if (p.end[s] - s > target_size) {
        target = s;
        target_size = p.end[s] - s;
      }
    std::vector<std::uint32_t> children(p.lab.begin() + target, p.lab.begin() + p.end[target]);
    std::sort(children.begin(), children.end());

    std::size_t gens_seen = static_cast<std::size_t>(-1);
    std::vector<std::uint32_t> orbit_min;
    for (std::uint32_t w : children) {
      if (gens_seen != gens_.size()) {
        orbit_min = stabilizer_orbit_minima(path_);
        gens_seen = gens_.size();
      }
      if (orbit_min[w] != w) continue;
      Partition child = p;
      std::uint32_t c = child.cell[w];
      std::uint32_t e = child.end[c];
      std::uint32_t pw = child.pos[w];
      std::uint32_t other = child.lab[c];
      child.lab[c] = w;
      child.pos[w] = c;
      child.lab[pw] = other;
      child.pos[other] = pw;
      child.end[c] = c + 1;
      child.end[c + 1] = e;
      for (std::uint32_t i = c + 1; i < e; ++i) child.cell[child.lab[i]] = c + 1;
      ++child.cells;
      ++child.coord_cells;
      Invariant inv{refiner_->refine(child, {c}), child.cells, child.coord_cells};
      seq_.push_back(inv);
      path_.push_back(w);
      std::size_t jump = visit(child, depth + 1, eq_first);
      seq_.pop_back();
      path_.pop_back();
      if (jump != kNoJump && jump < depth) return jump;
    }
    return kNoJump;
  }

  // For each point, the least point of its orbit under the stored generators
  // that fix `prefix` pointwise.
  std::vector<std::uint32_t> stabilizer_orbit_minima(const std::vector<std::uint32_t>& prefix) const {
    const std::size_t n = code_.length();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : gens_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](std::uint32_t v) { return g[v] == v; });
      if (!fixes) continue;
      for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t a = find(i), b = find(g[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::vector<std::uint32_t> out(n);
    for (std::uint32_t i = 0; i < n; ++i) out[i] = find(i);
    return out;
  }

  BigInt orbit_product() const {
    BigInt prod = 1;
    std::vector<std::uint32_t> prefix;
    for (std::uint32_t v : first_->path) {
      auto mins = stabilizer_orbit_minima(prefix);
      prod *= static_cast<unsigned>(std::count(mins.begin(), mins.end(), mins[v]));
      prefix.push_back(v);
    }
    return prod;
  }

  const LinearCode& code_;
  CanonicalOptions opts_;
  std::vector<Word> words_;
  Graph graph_;
  Refiner* refiner_ = nullptr;
  std::vector<Invariant> seq_;
  std::vector<std::uint32_t> path_;
  std::optional<Leaf> first_, best_;
  std::vector<Permutation> gens_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

LabelingResult canonical_labeling(const LinearCode& c, const CanonicalOptions& opts) {
  return LabelSearch(c, opts).run();
}

CanonicalForm canonical_form(const LinearCode& c, const CanonicalOptions& opts) {
  return canonical_labeling(c, opts).canonical;
}

PermGroup automorphism_group(const LinearCode& c, const CanonicalOptions& opts) {
  auto res = canonical_labeling(c, opts);
  return PermGroup(c.length(), std::move(res.generators));
}

std::optional<Permutation> is_equivalent(const LinearCode& a, const LinearCode& b, const CanonicalOptions& opts) {
  if (a.length() != b.length() || a.dimension() != b.dimension()) return std::nullopt;
  auto ca = canonical_form(a, opts);
  auto cb = canonical_form(b, opts);
  if (!(ca.code == cb.code)) return std::nullopt;
  Permutation p = ca.relabeling * cb.relabeling.inverse();
  if (!(permute(a, p) == b)) throw InvariantError("equivalence witness failed verification");
  return p;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string canonical_hash(const LinearCode& canonical) { return sha256_hex(to_gm(canonical)); }

std::vector<ClassRep> dedup(const std::vector<LinearCode>& candidates, unsigned threads, const CanonicalOptions& opts) {
  std::vector<std::optional<LabelingResult>> labels(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) { labels[i] = canonical_labeling(candidates[i], opts); });

  std::map<std::string, std::size_t> by_gm;  // canonical GM text -> index into reps
  std::vector<ClassRep> reps;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& lr = *labels[i];
    std::string gm = to_gm(lr.canonical.code);
    auto [it, inserted] = by_gm.emplace(gm, reps.size());
    if (!inserted) {
      ++reps[it->second].multiplicity;
      continue;
    }
    ClassRep rep{lr.canonical.code, sha256_hex(gm), {}, {}, i, 1};
    // generators are transported to the canonical coordinates
    const Permutation& lam = lr.canonical.relabeling;
    for (const auto& g : lr.generators) rep.aut_generators.push_back(lam.inverse() * g * lam);
    reps.push_back(std::move(rep));
  }
  for (auto& rep : reps) {
    rep.fingerprint = fingerprint(rep.canonical);
    rep.fingerprint.aut_order = PermGroup(rep.canonical.length(), rep.aut_generators).order();
  }
  std::sort(reps.begin(), reps.end(), [](const ClassRep& a, const ClassRep& b) {
    if (auto r = a.fingerprint <=> b.fingerprint; r != 0) return r < 0;
    return to_gm(a.canonical) < to_gm(b.canonical);
  });
  return reps;
}

}  // namespace sdc
