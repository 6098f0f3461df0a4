#include "sdcode/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sdc {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw std::invalid_argument("Permutation: images are not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a >= degree || b >= degree || used[a]) throw std::invalid_argument("from_cycles: bad cycle");
      used[a] = true;
      img[a] = b;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse_cycles(std::size_t degree, std::string_view text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle notation: expected '('");
    ++i;
    std::vector<Point> cyc;
    while (true) {
      skip_ws();
      if (i >= text.size()) throw std::invalid_argument("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (start == i) throw std::invalid_argument("cycle notation: expected a point");
      unsigned long v = std::stoul(std::string(text.substr(start, i - start)));
      if (v == 0 || v > degree) throw std::invalid_argument("cycle notation: point out of range");
      cyc.push_back(static_cast<Point>(v - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

Word Permutation::apply(Word v) const noexcept {
  Word out = 0;
  while (v) {
    int i = __builtin_ctzll(v);
    v &= v - 1;
    out |= Word{1} << images_[static_cast<std::size_t>(i)];
  }
  return out;
}

BitVector Permutation::apply(const BitVector& v) const {
  if (v.size() != images_.size()) throw std::invalid_argument("Permutation::apply: degree mismatch");
  BitVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.test(i)) out.set(images_[i]);
  return out;
}

std::string Permutation::to_cycle_string() const {
  std::string s;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    s += '(';
    bool first = true;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) s += ',';
      s += std::to_string(x + 1);
      first = false;
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("Permutation product: degree mismatch");
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q.images_[p.images_[i]];
  Permutation r;
  r.images_ = std::move(img);
  return r;
}

}  // namespace sdc
