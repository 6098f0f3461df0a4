#include "sdcode/classify.hpp"

#include "sdcode/construct.hpp"
#include "sdcode/equivalence.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/parallel.hpp"
#include "sdcode/standard_codes.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sdc {

BigInt mass(std::size_t n) {
  if (n == 0 || n % 8 != 0) throw ValidationError("mass: length must be a positive multiple of 8");
  BigInt m = 1;
  for (std::size_t i = 0; i + 2 <= n / 2; ++i) m *= (BigInt(1) << i) + 1;
  return m;
}

BigInt self_dual_mass(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw ValidationError("self_dual_mass: length must be positive and even");
  BigInt m = 1;
  for (std::size_t i = 1; i + 1 <= n / 2; ++i) m *= (BigInt(1) << i) + 1;
  return m;
}

MassAccount mass_account(std::size_t n, const std::vector<CatalogRecord>& records, BigInt expected) {
  MassAccount acc{n, std::move(expected), {}, 0};
  const BigInt nf = factorial(static_cast<unsigned>(n));
  for (const auto& r : records) {
    if (r.aut_order == 0 || nf % r.aut_order != 0) throw InvariantError("automorphism group order does not divide n!");
    BigInt orbit = nf / r.aut_order;
    acc.total += orbit;
    acc.terms.emplace_back(r.hash, std::move(orbit));
  }
  return acc;
}

MassAccount mass_account(std::size_t n, const std::vector<CatalogRecord>& records) {
  return mass_account(n, records, mass(n));
}

std::string to_string(Method m) {
  switch (m) {
    case Method::neighbor: return "neighbor";
    case Method::glue: return "glue";
    case Method::lift_chain: return "lift-chain";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "neighbor") return Method::neighbor;
  if (name == "glue") return Method::glue;
  if (name == "lift-chain") return Method::lift_chain;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

namespace {

std::string short_hash(const std::string& h) { return h.substr(0, 16); }

// Classes found so far, in discovery order, with the running mass total.
class Discovery {
 public:
  Discovery(std::size_t n, BigInt expected) : n_(n), expected_(std::move(expected)), nf_(factorial(static_cast<unsigned>(n))) {}

  bool add(const LabelingResult& lab, const std::string& provenance) {
    std::string h = canonical_hash(lab.canonical.code);
    if (index_.count(h)) return false;
    add_record(make_record(lab, provenance));
    return true;
  }

  void add_record(CatalogRecord r) {
    index_.emplace(r.hash, found_.size());
    total_ += nf_ / r.aut_order;
    found_.push_back(std::move(r));
  }

  bool complete() const { return total_ == expected_; }
  BigInt deficit() const { return expected_ - total_; }
  std::size_t n() const { return n_; }
  const BigInt& expected() const { return expected_; }
  std::vector<CatalogRecord>& found() { return found_; }

 private:
  std::size_t n_;
  BigInt expected_;
  BigInt nf_;
  BigInt total_ = 0;
  std::vector<CatalogRecord> found_;
  std::map<std::string, std::size_t> index_;
};

std::vector<LabelingResult> label_all(const std::vector<LinearCode>& codes, unsigned threads) {
  std::vector<std::optional<LabelingResult>> out(codes.size());
  parallel_for(codes.size(), threads, [&](std::size_t i) { out[i] = canonical_labeling(codes[i]); });
  std::vector<LabelingResult> res;
  res.reserve(out.size());
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

// One shard: the neighbors of a parent at the orbit representatives of its
// automorphism group. Stops merging once the mass is reached.
void expand_neighbors(Discovery& disc, std::size_t parent, bool doubly_even, unsigned threads) {
  LinearCode code = disc.found()[parent].code;
  std::vector<Permutation> gens = disc.found()[parent].aut_generators;
  std::string prov = "neighbor:" + short_hash(disc.found()[parent].hash);
  NeighborSpace space(code);
  std::vector<LinearCode> cands;
  for (auto t : space.orbit_representatives(gens)) {
    Word u = space.vector(t);
    if (doubly_even) {
      cands.push_back(neighbor_at(code, u));
    } else {
      auto [a, b] = self_dual_neighbors_at(code, u);
      cands.push_back(std::move(a));
      cands.push_back(std::move(b));
    }
  }
  auto labels = label_all(cands, threads);
  for (const auto& lab : labels) {
    if (disc.complete()) break;
    disc.add(lab, prov);
  }
}

struct Checkpoint {
  std::size_t n = 0;
  std::string method;
  std::size_t position = 0;
  std::vector<std::string> lines;
};

std::filesystem::path checkpoint_file(const std::filesystem::path& dir) { return dir / "checkpoint.txt"; }

void save_checkpoint(const std::filesystem::path& dir, Discovery& disc, Method m, std::size_t position) {
  std::filesystem::create_directories(dir);
  auto path = checkpoint_file(dir);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << "sdcode-checkpoint\n"
        << "n " << disc.n() << "\nmethod " << to_string(m) << "\nposition " << position << "\n";
    for (const auto& r : disc.found()) out << format_record(r) << "\n";
    out.flush();
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& dir) {
  auto path = checkpoint_file(dir);
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  Checkpoint cp;
  std::string line, key;
  std::getline(in, line);
  if (line != "sdcode-checkpoint") throw ParseError("not a checkpoint file: " + path.string(), 1);
  auto field = [&](const char* name, std::size_t line_no) {
    if (!std::getline(in, line)) throw ParseError("truncated checkpoint", line_no);
    std::istringstream ls(line);
    std::string value;
    if (!(ls >> key >> value) || key != name) throw ParseError(std::string("expected ") + name, line_no);
    return value;
  };
  cp.n = std::stoul(field("n", 2));
  cp.method = field("method", 3);
  cp.position = std::stoul(field("position", 4));
  while (std::getline(in, line))
    if (!line.empty()) cp.lines.push_back(line);
  return cp;
}

// Re-labels the stored codes so that automorphism generators are available
// again; the hashes must reproduce.
void restore(Discovery& disc, const Checkpoint& cp, unsigned threads) {
  std::vector<StatedRecord> stated;
  for (std::size_t i = 0; i < cp.lines.size(); ++i) stated.push_back(parse_record_line(cp.lines[i], i + 5));
  std::vector<LinearCode> codes;
  for (const auto& s : stated) codes.push_back(s.code);
  auto labels = label_all(codes, threads);
  for (std::size_t i = 0; i < stated.size(); ++i) {
    auto r = make_record(labels[i], stated[i].provenance);
    if (r.hash != stated[i].hash) throw InvariantError("checkpoint record " + std::to_string(i) + " does not re-hash");
    disc.add_record(std::move(r));
  }
}

void log(const ClassifyOptions& opts, const std::string& msg) {
  if (opts.log) opts.log(msg);
}

Classification finish(Discovery& disc, const char* what) {
  if (!disc.complete())
    throw ClassificationIncomplete(std::string(what) + ": mass not reached, deficit " + to_decimal(disc.deficit()),
                                   disc.deficit(), disc.found().size());
  Classification res;
  res.records = std::move(disc.found());
  sort_records(res.records);
  res.account = mass_account(disc.n(), res.records, disc.expected());
  if (!res.account.complete()) throw InvariantError("mass account disagrees with the running total");
  return res;
}

// Hyperplanes of c that contain the all-one vector.
std::vector<LinearCode> hyperplanes_with_one(const LinearCode& c) {
  const auto basis = c.basis();
  const auto piv = c.pivots();
  const std::size_t k = basis.size();
  std::uint64_t one = 0;
  for (std::size_t i = 0; i < k; ++i)
    if ((c.all_ones() >> piv[i]) & 1) one |= std::uint64_t{1} << i;
  std::vector<LinearCode> out;
  for (std::uint64_t phi = 1; phi < (std::uint64_t{1} << k); ++phi) {
    if (__builtin_parityll(phi & one)) continue;
    std::size_t j = __builtin_ctzll(phi);
    std::vector<Word> rows;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      rows.push_back((phi >> i) & 1 ? basis[i] ^ basis[j] : basis[i]);
    }
    out.emplace_back(c.length(), rows);
  }
  return out;
}

// Inequivalent subcodes containing 1, by dimension, down to min_dim.
std::map<std::size_t, std::vector<LinearCode>> subcodes_with_one(const std::vector<LinearCode>& tops, std::size_t min_dim,
                                                                 unsigned threads) {
  std::map<std::size_t, std::vector<LinearCode>> by_dim;
  std::vector<LinearCode> level = tops;
  while (!level.empty()) {
    std::size_t dim = level.front().dimension();
    by_dim[dim] = level;
    if (dim <= min_dim) break;
    std::vector<LinearCode> next;
    for (const auto& c : level)
      for (auto& h : hyperplanes_with_one(c)) next.push_back(std::move(h));
    level.clear();
    for (const auto& rep : dedup(next, threads)) level.push_back(rep.canonical);
  }
  return by_dim;
}

struct GluePair {
  LinearCode c1;
  LinearCode c2;
};

std::vector<GluePair> glue_pairs(std::size_t n, unsigned threads) {
  const std::size_t n1 = 8, n2 = n - 8;
  auto left = subcodes_with_one({codes::e8()}, 1, threads);
  std::vector<LinearCode> tops;
  for (auto& r : classify_doubly_even(n2, ClassifyOptions{Method::neighbor, threads, {}, 0, {}}).records)
    tops.push_back(r.code);
  const std::size_t shift = (n2 - n1) / 2;
  auto right = subcodes_with_one(tops, 1 + shift, threads);
  std::vector<GluePair> pairs;
  for (std::size_t d1 = 1; d1 <= 4; ++d1)
    for (const auto& c1 : left[d1])
      for (const auto& c2 : right[d1 + shift]) pairs.push_back({c1, c2});
  return pairs;
}

}  // namespace

Classification classify_self_dual(std::size_t n, unsigned threads) {
  Discovery disc(n, self_dual_mass(n));
  disc.add(canonical_labeling(codes::direct_power(codes::i2(), n / 2)), "seed:i2^" + std::to_string(n / 2));
  for (std::size_t pos = 0; pos < disc.found().size() && !disc.complete(); ++pos)
    expand_neighbors(disc, pos, false, threads);
  return finish(disc, "self-dual classification");
}

Classification classify_doubly_even(std::size_t n, const ClassifyOptions& opts) {
  if (n == 0 || n % 8 != 0 || n > 40) throw ValidationError("classify: length must be 8, 16, 24, 32 or 40");
  if (n == 40 && opts.shard_budget == 0) throw ValidationError("classify: length 40 needs an explicit shard budget");
  if (opts.method == Method::glue && n != 16 && n != 24)
    throw ValidationError("classify: the glue method covers lengths 16 and 24");
  const unsigned threads = std::max(1u, opts.threads);
  Discovery disc(n, mass(n));
  std::size_t position = 0;
  bool resumed = false;
  if (opts.checkpoint_dir) {
    if (auto cp = load_checkpoint(*opts.checkpoint_dir)) {
      if (cp->n != n || cp->method != to_string(opts.method))
        throw ValidationError("checkpoint belongs to another run (n " + std::to_string(cp->n) + ", method " +
                              cp->method + ")");
      restore(disc, *cp, threads);
      position = cp->position;
      resumed = true;
      log(opts, "resumed " + std::to_string(disc.found().size()) + " classes at shard " + std::to_string(position));
    }
  }

  std::vector<GluePair> pairs;
  if (opts.method == Method::glue) pairs = glue_pairs(n, threads);

  if (!resumed) {
    if (opts.method == Method::neighbor) {
      disc.add(canonical_labeling(codes::direct_power(codes::e8(), n / 8)), "seed:e8^" + std::to_string(n / 8));
    } else if (opts.method == Method::lift_chain) {
      auto base = classify_self_dual(n - 4, threads);
      std::vector<LinearCode> lifts;
      for (const auto& r : base.records) lifts.push_back(bp_lift(direct_sum(codes::i2(), r.code)));
      auto labels = label_all(lifts, threads);
      for (std::size_t i = 0; i < labels.size() && !disc.complete(); ++i)
        disc.add(labels[i], "lift:" + short_hash(base.records[i].hash));
      log(opts, "lifted " + std::to_string(base.records.size()) + " self-dual codes of length " +
                    std::to_string(n - 4) + " to " + std::to_string(disc.found().size()) + " classes");
    }
  }

  std::size_t shards = 0;
  auto shards_left = [&] {
    return opts.method == Method::glue ? position < pairs.size() : position < disc.found().size();
  };
  while (!disc.complete() && shards_left()) {
    if (opts.shard_budget && shards == opts.shard_budget) {
      if (opts.checkpoint_dir) save_checkpoint(*opts.checkpoint_dir, disc, opts.method, position);
      throw ClassificationIncomplete("classify: shard budget exhausted after " + std::to_string(shards) +
                                         " shards, deficit " + to_decimal(disc.deficit()),
                                     disc.deficit(), disc.found().size());
    }
    if (opts.method == Method::glue) {
      const auto& p = pairs[position];
      auto fam = glue_family(p.c1, p.c2);
      auto labels = label_all(fam.codes, threads);
      std::string prov = "glue:" + short_hash(canonical_hash(p.c1)) + "+" + short_hash(canonical_hash(p.c2));
      for (const auto& lab : labels) disc.add(lab, prov);
    } else {
      expand_neighbors(disc, position, true, threads);
    }
    ++position;
    ++shards;
    if (opts.checkpoint_dir) save_checkpoint(*opts.checkpoint_dir, disc, opts.method, position);
    log(opts, "shard " + std::to_string(position) + ": " + std::to_string(disc.found().size()) + " classes, deficit " +
                  to_decimal(disc.deficit()));
  }
  return finish(disc, "classify");
}

CoveringRadiusResult covering_radius(const LinearCode& c) {
  const std::size_t n = c.length();
  const auto& dual = c.dual();
  const std::size_t r = dual.dimension();
  if (r > kMaxSyndromeBits) throw BudgetError("covering radius: syndrome space of 2^" + std::to_string(r) + " is too large");
  std::vector<std::uint32_t> col(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if ((dual.basis()[j] >> i) & 1) col[i] |= std::uint32_t{1} << j;
  std::vector<std::uint32_t> distinct(col.begin(), col.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  distinct.erase(std::remove(distinct.begin(), distinct.end(), 0u), distinct.end());

  const std::uint64_t size = std::uint64_t{1} << r;
  std::vector<std::uint8_t> layer(size, 0xff);
  std::vector<std::uint32_t> frontier{0}, next;
  layer[0] = 0;
  CoveringRadiusResult res;
  res.layer_sizes.push_back(1);
  for (std::uint8_t t = 1; !frontier.empty(); ++t) {
    next.clear();
    for (auto s : frontier)
      for (auto h : distinct)
        if (layer[s ^ h] == 0xff) {
          layer[s ^ h] = t;
          next.push_back(s ^ h);
        }
    if (next.empty()) break;
    res.layer_sizes.push_back(next.size());
    frontier.swap(next);
  }
  res.radius = res.layer_sizes.size() - 1;
  // walk back from the least deepest syndrome
  std::uint32_t s = *std::min_element(frontier.begin(), frontier.end());
  Word x = 0;
  while (s != 0) {
    for (std::size_t i = 0; i < n; ++i)
      if (col[i] && layer[s ^ col[i]] == layer[s] - 1) {
        x |= Word{1} << i;
        s ^= col[i];
        break;
      }
  }
  res.witness = x;
  if (res.radius < sphere_covering_bound(n, c.dimension()))
    throw InvariantError("covering radius below the sphere-covering bound");
  return res;
}

std::size_t sphere_covering_bound(std::size_t n, std::size_t k) {
  const BigInt target = BigInt(1) << (n - k);
  BigInt sum = 0, binom = 1;
  for (std::size_t t = 0; t <= n; ++t) {
    sum += binom;
    if (sum >= target) return t;
    binom = binom * (n - t) / (t + 1);
  }
  return n;
}

std::optional<std::uint64_t> design_check(const LinearCode& c, std::size_t w) {
  const std::size_t n = c.length();
  std::vector<std::uint64_t> count(n, 0);
  std::uint64_t words = 0;
  for (Word x : codewords_of_weight(c, w)) {
    ++words;
    for (Word y = x; y; y &= y - 1) ++count[__builtin_ctzll(y)];
  }
  if (std::any_of(count.begin(), count.end(), [&](std::uint64_t v) { return v != count[0]; })) return std::nullopt;
  if (count[0] * n != words * w) throw InvariantError("design check: lambda n differs from A_w w");
  return count[0];
}

std::size_t weight8_subcode_dim(const LinearCode& c) {
  auto rows = codewords_of_weight(c, 8);
  return words::rref(rows, c.length()).size();
}

namespace {

std::vector<unsigned> odd_primes_dividing(const BigInt& order, std::size_t n) {
  std::vector<unsigned> out;
  for (unsigned p = 3; p <= n; p += 2) {
    bool prime = true;
    for (unsigned q = 3; q * q <= p; q += 2)
      if (p % q == 0) prime = false;
    if (prime && order % p == 0) out.push_back(p);
  }
  return out;
}

}  // namespace

Census census(const std::vector<CatalogRecord>& records, unsigned threads) {
  struct Row {
    std::size_t radius = 0;
    bool has_radius = false;
    std::size_t w8 = 0;
    std::set<AutType> types;
    bool exact = true;
  };
  std::vector<Row> rows(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const auto& r = records[i];
    Row& row = rows[i];
    if (r.code.length() - r.code.dimension() <= kMaxSyndromeBits) {
      row.radius = covering_radius(r.code).radius;
      row.has_radius = true;
    }
    row.w8 = weight8_subcode_dim(r.code);
    PermGroup g = r.aut_generators.empty() ? automorphism_group(r.code) : PermGroup(r.code.length(), r.aut_generators);
    for (unsigned p : odd_primes_dividing(r.aut_order, r.code.length())) {
      auto pt = prime_order_types(g, p);
      row.types.insert(pt.types.begin(), pt.types.end());
      row.exact = row.exact && pt.exact;
    }
  });
  Census c;
  c.codes = records.size();
  if (!records.empty()) c.n = records.front().code.length();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    ++c.a4[r.a4];
    if (rows[i].has_radius) ++c.covering[{r.min_weight, rows[i].radius}];
    ++c.aut_orders[r.aut_order];
    for (const auto& t : rows[i].types) ++c.prime_types[t];
    c.prime_types_exact = c.prime_types_exact && rows[i].exact;
    ++c.weight8_dims[rows[i].w8];
  }
  return c;
}

std::string census_tsv(const Census& c) {
  std::ostringstream out;
  out << "# section\tkey\tcount\n";
  out << "n\t" << c.n << "\t" << c.codes << "\n";
  for (const auto& [a4, k] : c.a4) out << "a4\t" << a4 << "\t" << k << "\n";
  for (const auto& [dr, k] : c.covering) out << "covering_radius\td=" << dr.first << ",R=" << dr.second << "\t" << k << "\n";
  for (const auto& [order, k] : c.aut_orders) out << "aut_order\t" << to_decimal(order) << "\t" << k << "\n";
  for (const auto& [t, k] : c.prime_types)
    out << "prime_type\t" << to_string(t) << "\t" << k << (c.prime_types_exact ? "" : "\tlower-bound") << "\n";
  for (const auto& [dim, k] : c.weight8_dims) out << "weight8_dim\t" << dim << "\t" << k << "\n";
  return out.str();
}

std::vector<SubtractedCode> extremal_subtraction(const std::vector<LinearCode>& inputs, std::size_t t, unsigned threads) {
  std::vector<LinearCode> cands;
  std::vector<std::string> provs;
  for (const auto& d : inputs) {
    const std::size_t n = d.length();
    if (!is_self_dual(d) || !is_doubly_even(d))
      throw ValidationError("extremal subtraction: input is not doubly even self-dual");
    const std::size_t target = t ? t : extremal_bound(n - 2);
    auto pairs = (n == 40 && target == 8) ? subtraction_candidates(d) : min_weight_pairs(d, target);
    std::string tag = "subtract:" + short_hash(sha256_hex(to_gm(d)));
    for (auto [i, j] : pairs) {
      cands.push_back(subtract(d, i, j));
      provs.push_back(tag + ":" + std::to_string(i) + "," + std::to_string(j));
      if (cands.back().length() != n - 2 || min_weight(cands.back()) < target)
        throw InvariantError("subtracted code fails its length or minimum weight");
    }
  }
  auto labels = label_all(cands, threads);
  std::map<std::string, std::size_t> first;  // hash -> candidate with the least provenance
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto h = canonical_hash(labels[i].canonical.code);
    auto [it, inserted] = first.emplace(h, i);
    if (!inserted && provs[i] < provs[it->second]) it->second = i;
  }
  std::vector<SubtractedCode> out;
  for (const auto& [h, i] : first) {
    SubtractedCode sc{make_record(labels[i], provs[i]), 0, 0};
    const auto& code = sc.record.code;
    if (!is_doubly_even(code)) {
      const auto& sw = shadow(code).shadow_weights;
      for (std::size_t w = 1; w < sw.counts.size(); ++w)
        if (sw[w]) {
          sc.shadow_min_weight = w;
          break;
        }
    }
    if (code.length() == 38 && sc.record.min_weight == 8) {
      auto a8 = code.weights()[8];
      if (a8 == 171) sc.we_class = 1;
      else if (a8 == 203) sc.we_class = 2;
      else throw InvariantError("length-38 code with A8 = " + std::to_string(a8));
      bool shadow_says_two = sc.shadow_min_weight == 3;
      if (shadow_says_two != (sc.we_class == 2)) throw InvariantError("weight enumerator and shadow disagree");
    }
    out.push_back(std::move(sc));
  }
  std::sort(out.begin(), out.end(),
            [](const SubtractedCode& a, const SubtractedCode& b) { return record_less(a.record, b.record); });
  return out;
}

}  // namespace sdc
