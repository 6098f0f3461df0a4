#include "sdcode/record.hpp"

#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/perm_group.hpp"

#include <algorithm>
#include <sstream>

namespace sdc {

CatalogRecord make_record(const LabelingResult& lab, std::string provenance) {
  const LinearCode& code = lab.canonical.code;
  if (!is_self_dual(code)) throw ValidationError("catalog record: code is not self-dual");
  CatalogRecord r{code, fingerprint(code), canonical_hash(code), 0, min_weight(code), 0, std::move(provenance), {}};
  const Permutation& lam = lab.canonical.relabeling;
  Permutation lam_inv = lam.inverse();
  for (const auto& g : lab.generators) r.aut_generators.push_back(lam_inv * g * lam);
  r.aut_order = PermGroup(code.length(), r.aut_generators).order();
  r.fingerprint.aut_order = r.aut_order;
  r.a4 = r.fingerprint.a4;
  return r;
}

CatalogRecord make_record(const LinearCode& c, std::string provenance, const CanonicalOptions& opts) {
  return make_record(canonical_labeling(c, opts), std::move(provenance));
}

bool record_less(const CatalogRecord& a, const CatalogRecord& b) {
  if (auto cmp = a.fingerprint <=> b.fingerprint; cmp != 0) return cmp < 0;
  return to_gm(a.code) < to_gm(b.code);
}

void sort_records(std::vector<CatalogRecord>& records) { std::sort(records.begin(), records.end(), record_less); }

std::string row_to_hex(Word row, std::size_t n) {
  const std::size_t len = (n + 3) / 4;
  std::vector<unsigned> nibbles(len, 0);
  // value = sum of bit i times 2^(n-1-i)
  for (std::size_t i = 0; i < n; ++i)
    if ((row >> i) & 1) {
      std::size_t e = n - 1 - i;
      nibbles[len - 1 - e / 4] |= 1u << (e % 4);
    }
  std::string out;
  for (unsigned v : nibbles) out += "0123456789abcdef"[v];
  return out;
}

Word hex_to_row(std::string_view hex, std::size_t n) {
  const std::size_t len = (n + 3) / 4;
  if (hex.size() != len) throw ParseError("hex row has " + std::to_string(hex.size()) + " digits, expected " +
                                          std::to_string(len));
  Word row = 0;
  for (std::size_t pos = 0; pos < len; ++pos) {
    char ch = hex[pos];
    unsigned v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else throw ParseError(std::string("bad hex digit '") + ch + "'");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      std::size_t e = (len - 1 - pos) * 4 + b;
      if (e >= n) throw ParseError("hex row has bits beyond the code length");
      row |= Word{1} << (n - 1 - e);
    }
  }
  return row;
}

std::string format_record(const CatalogRecord& r) {
  std::ostringstream out;
  const std::size_t n = r.code.length();
  out << n << ' ' << r.code.dimension() << ' ' << r.min_weight << ' ' << r.a4 << ' ' << to_decimal(r.aut_order) << ' '
      << r.hash << ' ';
  bool first = true;
  for (Word w : r.code.basis()) {
    if (!first) out << ':';
    out << row_to_hex(w, n);
    first = false;
  }
  if (first) out << '-';
  out << ' ' << (r.provenance.empty() ? "-" : r.provenance);
  return out.str();
}

namespace {

std::size_t parse_count(const std::string& s, const char* field) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 18)
    throw ParseError(std::string("bad ") + field + " '" + s + "'");
  return std::stoull(s);
}

}  // namespace

StatedRecord parse_record_line(std::string_view line, std::size_t line_no) {
  try {
    std::istringstream in{std::string(line)};
    std::vector<std::string> f;
    for (std::string tok; in >> tok;) f.push_back(tok);
    if (f.size() != 8) throw ParseError("expected 8 fields, found " + std::to_string(f.size()));
    StatedRecord r;
    r.n = parse_count(f[0], "length");
    if (r.n == 0 || r.n > kMaxCodeLength) throw ParseError("length out of range");
    r.k = parse_count(f[1], "dimension");
    r.d = parse_count(f[2], "minimum weight");
    r.a4 = parse_count(f[3], "A4");
    if (f[4].empty() || !std::all_of(f[4].begin(), f[4].end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("bad automorphism group order '" + f[4] + "'");
    r.aut_order = parse_decimal(f[4]);
    if (f[5].size() != 64 || !std::all_of(f[5].begin(), f[5].end(), [](char c) {
          return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        }))
      throw ParseError("bad canonical hash");
    r.hash = f[5];
    std::vector<Word> rows;
    if (f[6] != "-") {
      std::string_view rest = f[6];
      while (true) {
        auto colon = rest.find(':');
        rows.push_back(hex_to_row(rest.substr(0, colon), r.n));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
      }
    }
    if (rows.size() != r.k) throw ParseError("row count differs from the stated dimension");
    r.code = LinearCode(r.n, rows);
    if (r.code.dimension() != r.k) throw ParseError("generator rows are linearly dependent");
    r.provenance = f[7] == "-" ? "" : f[7];
    return r;
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }
}

std::vector<std::string> record_mismatches(const StatedRecord& s, const CatalogRecord& c) {
  std::vector<std::string> out;
  auto check = [&](const char* field, const std::string& stated, const std::string& computed) {
    if (stated != computed) out.push_back(std::string(field) + ": stated " + stated + ", computed " + computed);
  };
  check("n", std::to_string(s.n), std::to_string(c.code.length()));
  check("k", std::to_string(s.k), std::to_string(c.code.dimension()));
  check("d", std::to_string(s.d), std::to_string(c.min_weight));
  check("a4", std::to_string(s.a4), std::to_string(c.a4));
  check("aut_order", to_decimal(s.aut_order), to_decimal(c.aut_order));
  check("hash", s.hash, c.hash);
  return out;
}

}  // namespace sdc
