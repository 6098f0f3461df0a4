#include "sdcode/quadspace.hpp"

#include "sdcode/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace sdc {

bool QuadraticForm::eval(QVec v) const noexcept {
  unsigned r = 0;
  for (QVec a = v; a; a &= a - 1) {
    auto i = static_cast<std::size_t>(__builtin_ctzll(a));
    r ^= q[i];
    // pairs i < j
    r ^= __builtin_parityll(b[i] & v & ~((QVec{2} << i) - 1));
  }
  return r & 1u;
}

bool QuadraticForm::bilinear(QVec x, QVec y) const noexcept {
  unsigned r = 0;
  for (QVec a = x; a; a &= a - 1) r ^= __builtin_parityll(b[__builtin_ctzll(a)] & y);
  return r & 1u;
}

bool QuadraticForm::nondegenerate() const {
  std::vector<Word> rows(b.begin(), b.end());
  return k == 0 || words::rref(rows, k).size() == k;
}

std::string to_string(FormType t) { return t == FormType::plus ? "plus" : "minus"; }

QuadraticForm standard_form(std::size_t k, FormType t) {
  if (k % 2) throw ValidationError("standard form needs even dimension");
  QuadraticForm f;
  f.k = k;
  f.q.assign(k, 0);
  f.b.assign(k, 0);
  for (std::size_t i = 0; i + 1 < k; i += 2) {
    f.b[i] = QVec{1} << (i + 1);
    f.b[i + 1] = QVec{1} << i;
  }
  if (t == FormType::minus) {
    if (k == 0) throw ValidationError("the zero space has plus type only");
    f.q[k - 2] = f.q[k - 1] = 1;
  }
  return f;
}

Isometry::Isometry(std::vector<QVec> columns) : cols_(std::move(columns)) {}

Isometry Isometry::identity(std::size_t k) {
  std::vector<QVec> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = QVec{1} << i;
  return Isometry(std::move(c));
}

QVec Isometry::apply(QVec v) const noexcept {
  QVec r = 0;
  for (QVec a = v; a; a &= a - 1) r ^= cols_[__builtin_ctzll(a)];
  return r;
}

bool Isometry::invertible() const {
  std::vector<Word> rows(cols_.begin(), cols_.end());
  return words::rref(rows, dim()).size() == dim();
}

Isometry Isometry::inverse() const {
  const std::size_t k = dim();
  // Gauss-Jordan on [columns | identity], columns treated as rows of M^T.
  std::vector<QVec> a = cols_, inv(k);
  for (std::size_t i = 0; i < k; ++i) inv[i] = QVec{1} << i;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && !((a[p] >> c) & 1)) ++p;
    if (p == k) throw ValidationError("isometry is not invertible");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    for (std::size_t r = 0; r < k; ++r)
      if (r != c && ((a[r] >> c) & 1)) {
        a[r] ^= a[c];
        inv[r] ^= inv[c];
      }
  }
  // Row ops on M^T give (M^T)^{-1} = (M^{-1})^T, whose rows are columns of M^{-1}.
  return Isometry(std::move(inv));
}

bool Isometry::is_identity() const noexcept {
  for (std::size_t i = 0; i < cols_.size(); ++i)
    if (cols_[i] != (QVec{1} << i)) return false;
  return true;
}

bool Isometry::preserves(const QuadraticForm& source, const QuadraticForm& target) const {
  if (source.k != dim() || target.k != dim() || !invertible()) return false;
  const std::size_t k = dim();
  if (k <= 16) {
    for (QVec v = 0; v < (QVec{1} << k); ++v)
      if (target.eval(apply(v)) != source.eval(v)) return false;
    return true;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (target.eval(cols_[i]) != static_cast<bool>(source.q[i])) return false;
    for (std::size_t j = i + 1; j < k; ++j)
      if (target.bilinear(cols_[i], cols_[j]) != source.bilinear(QVec{1} << i, QVec{1} << j)) return false;
  }
  return true;
}

std::vector<std::uint8_t> Isometry::row_major() const {
  const std::size_t k = dim();
  std::vector<std::uint8_t> out(k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) out[r * k + c] = (cols_[c] >> r) & 1;
  return out;
}

std::string Isometry::to_string() const {
  const std::size_t k = dim();
  std::string s;
  auto bits = row_major();
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) s += bits[r * k + c] ? '1' : '0';
    s += '\n';
  }
  return s;
}

Isometry operator*(const Isometry& a, const Isometry& b) {
  std::vector<QVec> c(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) c[i] = a.apply(b.columns()[i]);
  return Isometry(std::move(c));
}

std::strong_ordering operator<=>(const Isometry& a, const Isometry& b) {
  if (auto r = a.dim() <=> b.dim(); r != 0) return r;
  return a.row_major() <=> b.row_major();
}

FormType arf_type_by_count(const QuadraticForm& f) {
  if (f.k % 2) throw ValidationError("Arf type needs even dimension");
  std::uint64_t zeros = 0;
  for (QVec v = 0; v < (QVec{1} << f.k); ++v) zeros += !f.eval(v);
  if (f.k == 0) return FormType::plus;
  std::uint64_t half = std::uint64_t{1} << (f.k - 1), excess = std::uint64_t{1} << (f.k / 2 - 1);
  if (zeros == half + excess) return FormType::plus;
  if (zeros == half - excess) return FormType::minus;
  throw ValidationError("form is degenerate: zero count matches neither type");
}

StandardForm standardize(const QuadraticForm& f) {
  if (f.k % 2) throw ValidationError("standardize: odd dimension " + std::to_string(f.k));
  if (!f.nondegenerate()) throw ValidationError("standardize: degenerate bilinear form");
  std::vector<QVec> w(f.k);
  for (std::size_t i = 0; i < f.k; ++i) w[i] = QVec{1} << i;
  std::vector<std::pair<QVec, QVec>> hyperbolic, anisotropic;
  while (!w.empty()) {
    QVec e = w[0];
    std::size_t j = 1;
    while (j < w.size() && !f.bilinear(e, w[j])) ++j;
    if (j == w.size()) throw InvariantError("standardize: no partner in a nondegenerate subspace");
    QVec g = w[j];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
    w.erase(w.begin());
    for (auto& x : w) {
      bool bxg = f.bilinear(x, g), bxe = f.bilinear(x, e);
      if (bxg) x ^= e;
      if (bxe) x ^= g;
    }
    // normalize the plane <e, g>
    QVec iso = 0;
    for (QVec cand : {e, g, e ^ g})
      if (!f.eval(cand)) {
        iso = cand;
        break;
      }
    if (!iso) {
      anisotropic.emplace_back(e, g);
      continue;
    }
    QVec other = iso == e ? g : e;  // b(iso, other) = 1 in every case
    if (f.eval(other)) other ^= iso;
    hyperbolic.emplace_back(iso, other);
  }
  while (anisotropic.size() >= 2) {
    auto [e1, f1] = anisotropic[anisotropic.size() - 2];
    auto [e2, f2] = anisotropic.back();
    anisotropic.resize(anisotropic.size() - 2);
    hyperbolic.emplace_back(e1 ^ e2, f1 ^ e1 ^ e2);
    QVec a2 = f1 ^ f2;
    hyperbolic.emplace_back(a2, e2 ^ a2);
  }
  std::vector<QVec> cols;
  for (auto [e, g] : hyperbolic) {
    cols.push_back(e);
    cols.push_back(g);
  }
  StandardForm sf;
  sf.witt_index = hyperbolic.size();
  if (!anisotropic.empty()) {
    cols.push_back(anisotropic[0].first);
    cols.push_back(anisotropic[0].second);
    sf.type = FormType::minus;
  }
  sf.change_of_basis = Isometry(std::move(cols));
  if (!sf.change_of_basis.preserves(standard_form(f.k, sf.type), f))
    throw InvariantError("standardize: change of basis is not an isometry");
  return sf;
}

BigInt orthogonal_group_order(std::size_t k, FormType t) {
  if (k % 2) throw ValidationError("orthogonal group order needs even dimension");
  if (k == 0) return 1;
  std::size_t m = k / 2;
  BigInt r = 2;
  r <<= m * (m - 1);
  BigInt two_m = BigInt(1) << m;
  r *= t == FormType::plus ? BigInt(two_m - 1) : BigInt(two_m + 1);
  for (std::size_t i = 1; i < m; ++i) r *= (BigInt(1) << (2 * i)) - 1;
  return r;
}

namespace {

constexpr std::size_t kMaxPermGroupDim = 12;

Permutation as_permutation(const Isometry& g) {
  const std::size_t k = g.dim();
  std::vector<Point> img((std::size_t{1} << k) - 1);
  for (QVec v = 1; v < (QVec{1} << k); ++v) img[v - 1] = static_cast<Point>(g.apply(v) - 1);
  return Permutation(std::move(img));
}

PermGroup as_perm_group(std::size_t k, const std::vector<Isometry>& gens) {
  if (k > kMaxPermGroupDim) throw BudgetError("matrix group of dimension > 12");
  std::vector<Permutation> p;
  for (const auto& g : gens) p.push_back(as_permutation(g));
  return PermGroup((std::size_t{1} << k) - 1, std::move(p));
}

Isometry transvection(const QuadraticForm& f, QVec v) {
  std::vector<QVec> c(f.k);
  for (std::size_t i = 0; i < f.k; ++i) c[i] = (QVec{1} << i) ^ (f.bilinear(QVec{1} << i, v) ? v : 0);
  return Isometry(std::move(c));
}

// Depth-first search over isometries of f; visit returns false to stop.
void for_each_isometry(const QuadraticForm& f, const std::function<bool(const Isometry&)>& visit) {
  const std::size_t k = f.k;
  std::vector<QVec> img(k);
  std::function<bool(std::size_t, std::vector<Word>&)> rec = [&](std::size_t i, std::vector<Word>& span) -> bool {
    if (i == k) return visit(Isometry(img));
    for (QVec v = 1; v < (QVec{1} << k); ++v) {
      if (f.eval(v) != static_cast<bool>(f.q[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = f.bilinear(img[j], v) == f.bilinear(QVec{1} << j, QVec{1} << i);
      if (!ok) continue;
      std::vector<Word> ext = span;
      ext.push_back(v);
      if (words::rref(ext, k).size() != i + 1) continue;
      img[i] = v;
      if (!rec(i + 1, ext)) return false;
    }
    return true;
  };
  std::vector<Word> span;
  rec(0, span);
}

}  // namespace

BigInt matrix_group_order(std::size_t k, const std::vector<Isometry>& gens) {
  if (k == 0) return 1;
  return as_perm_group(k, gens).order();
}

std::vector<Isometry> orthogonal_group_gens(const QuadraticForm& f) {
  if (f.k == 0) return {};
  auto sf = standardize(f);
  std::vector<QVec> order((QVec{1} << f.k) - 1);
  std::iota(order.begin(), order.end(), QVec{1});
  std::stable_sort(order.begin(), order.end(), [](QVec a, QVec b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
  std::vector<Isometry> gens;
  if (f.k > kMaxPermGroupDim) {
    for (QVec v : order)
      if (f.eval(v)) gens.push_back(transvection(f, v));
    return gens;
  }
  BigInt target = orthogonal_group_order(f.k, sf.type);
  BigInt current = 1;
  for (QVec v : order) {
    if (current == target) break;
    if (!f.eval(v)) continue;
    Isometry t = transvection(f, v);
    if (!gens.empty() && as_perm_group(f.k, gens).contains(as_permutation(t))) continue;
    gens.push_back(std::move(t));
    current = matrix_group_order(f.k, gens);
  }
  while (current < target) {
    PermGroup g = as_perm_group(f.k, gens);
    std::optional<Isometry> missing;
    for_each_isometry(f, [&](const Isometry& x) {
      if (g.contains(as_permutation(x))) return true;
      missing = x;
      return false;
    });
    if (!missing) throw InvariantError("orthogonal group generation fell short of the order formula");
    gens.push_back(*missing);
    current = matrix_group_order(f.k, gens);
  }
  if (current != target) throw InvariantError("orthogonal group order mismatch");
  for (const auto& g : gens)
    if (!g.preserves(f, f)) throw InvariantError("orthogonal generator is not an isometry");
  return gens;
}

QVec QuotientSpace::coords(Word x) const {
  Word r = code.reduce(x);
  QVec v = 0;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if ((r >> rep_pivots[i]) & 1) v |= QVec{1} << i;
  if (word(v) != r) throw ValidationError("vector is not in the dual code");
  return v;
}

Word QuotientSpace::word(QVec v) const noexcept {
  Word w = 0;
  for (QVec a = v; a; a &= a - 1) w ^= reps[__builtin_ctzll(a)];
  return w;
}

QuotientSpace quotient_space(const LinearCode& c) {
  if (!c.contains(c.all_ones())) throw ValidationError("quotient space: code does not contain the all-one vector");
  if (!is_doubly_even(c)) throw ValidationError("quotient space: code is not doubly even");
  QuotientSpace q{c, dual(c), {}, {}, {}};
  for (Word w : q.dual.basis()) q.reps.push_back(c.reduce(w));
  q.rep_pivots = words::rref(q.reps, c.length());
  const std::size_t k = q.reps.size();
  q.form.k = k;
  q.form.q.resize(k);
  q.form.b.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    q.form.q[i] = (words::weight(q.reps[i]) / 2) & 1;
    for (std::size_t j = 0; j < k; ++j)
      if (words::dot(q.reps[i], q.reps[j])) q.form.b[i] |= QVec{1} << j;
  }
  return q;
}

std::vector<Isometry> isometry_group_gens(const QuotientSpace& q) { return orthogonal_group_gens(q.form); }

Isometry induced_isometry(const QuotientSpace& q, const Permutation& p) {
  if (!(permute(q.code, p) == q.code)) throw ValidationError("permutation does not preserve the code");
  std::vector<QVec> cols;
  for (Word r : q.reps) cols.push_back(q.coords(p.apply(r)));
  Isometry f(std::move(cols));
  if (!f.preserves(q.form, q.form)) throw InvariantError("induced map is not an isometry");
  return f;
}

std::vector<Isometry> induced_group_gens(const QuotientSpace& q, const std::vector<Permutation>& auts) {
  std::vector<Isometry> out;
  for (const auto& p : auts) {
    Isometry f = induced_isometry(q, p);
    if (!f.is_identity() && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  return out;
}

std::optional<Isometry> find_isometry(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.k != b.k) return std::nullopt;
  auto sa = standardize(a);
  auto sb = standardize(b);
  if (sa.type != sb.type) return std::nullopt;
  Isometry f = sb.change_of_basis * sa.change_of_basis.inverse();
  if (!f.preserves(a, b)) throw InvariantError("find_isometry: composed map fails verification");
  return f;
}

std::optional<Isometry> find_isometry(const QuotientSpace& a, const QuotientSpace& b) {
  std::size_t n1 = a.code.length(), n2 = b.code.length();
  std::size_t d1 = a.code.dimension(), d2 = b.code.dimension();
  if (n1 + 2 * d2 != n2 + 2 * d1) return std::nullopt;
  if ((n1 + 8 * 64 - n2) % 8 != 0) return std::nullopt;
  return find_isometry(a.form, b.form);
}

namespace {

struct ColumnsHash {
  std::size_t operator()(const std::vector<QVec>& c) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (QVec x : c) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

struct Closure {
  std::vector<Isometry> elements;
  std::unordered_map<std::vector<QVec>, std::size_t, ColumnsHash> index;
  bool complete = true;
};

Closure closure(std::size_t k, const std::vector<Isometry>& gens, std::uint64_t budget) {
  Closure c;
  Isometry id = Isometry::identity(k);
  c.index.emplace(id.columns(), 0);
  c.elements.push_back(id);
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    for (const auto& g : gens) {
      Isometry y = c.elements[i] * g;
      if (c.index.count(y.columns())) continue;
      if (c.elements.size() >= budget) {
        c.complete = false;
        return c;
      }
      c.index.emplace(y.columns(), c.elements.size());
      c.elements.push_back(std::move(y));
    }
  }
  return c;
}

}  // namespace

std::vector<Isometry> enumerate_group(std::size_t k, const std::vector<Isometry>& gens, std::uint64_t budget) {
  auto c = closure(k, gens, budget);
  if (!c.complete) throw BudgetError("group enumeration exceeded the element budget");
  std::sort(c.elements.begin(), c.elements.end());
  return c.elements;
}

DoubleCosets double_coset_reps(std::size_t k, const std::vector<Isometry>& left, const std::vector<Isometry>& right,
                               const std::vector<Isometry>& ambient, std::uint64_t budget, bool partial) {
  auto c = closure(k, ambient, budget);
  if (!c.complete && !partial)
    throw BudgetError("double cosets: ambient group exceeds the element budget; rerun in partial mode");
  const std::size_t m = c.elements.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, const Isometry& y) {
    auto it = c.index.find(y.columns());
    if (it == c.index.end()) {
      if (c.complete) throw ValidationError("double cosets: subgroup generator outside the ambient group");
      return;
    }
    std::size_t ra = find(a), rb = find(it->second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& h : left) unite(i, h * c.elements[i]);
    for (const auto& h : right) unite(i, c.elements[i] * h);
  }
  std::unordered_map<std::size_t, std::size_t> root_to_class;
  std::vector<std::size_t> best;
  std::vector<std::uint64_t> sizes;
  for (std::size_t i = 0; i < m; ++i) {
    auto [it, inserted] = root_to_class.emplace(find(i), best.size());
    if (inserted) {
      best.push_back(i);
      sizes.push_back(0);
    }
    ++sizes[it->second];
    if (c.elements[i] < c.elements[best[it->second]]) best[it->second] = i;
  }
  std::vector<std::size_t> order(best.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.elements[best[a]] < c.elements[best[b]]; });
  DoubleCosets out;
  out.ambient_order = m;
  out.complete = c.complete;
  for (auto o : order) {
    out.reps.push_back(c.elements[best[o]]);
    out.class_sizes.push_back(sizes[o]);
  }
  return out;
}

}  // namespace sdc
