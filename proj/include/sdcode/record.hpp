#pragma once

// Catalog records and their one-line text form:
//   n k d a4 aut_order canonical_hash hex_rows provenance
// hex_rows holds each generator row as big-endian hex (coordinate 1 is the
// most significant bit, left-padded to ceil(n/4) digits), rows joined by ':'.

#include "sdcode/bigint.hpp"
#include "sdcode/code.hpp"
#include "sdcode/equivalence.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sdc {

struct CatalogRecord {
  LinearCode code;  // canonical form
  Fingerprint fingerprint;
  std::string hash;
  BigInt aut_order;
  std::size_t min_weight = 0;
  std::uint64_t a4 = 0;
  std::string provenance;
  std::vector<Permutation> aut_generators;  // of `code`; empty after parsing
};

// Labels `c`, then fills every field. Requires a self-dual code.
CatalogRecord make_record(const LinearCode& c, std::string provenance, const CanonicalOptions& opts = {});
// Same, reusing a labeling of `c` that was already computed.
CatalogRecord make_record(const LabelingResult& lab, std::string provenance);

// Catalog order: fingerprint, then canonical GM bytes.
bool record_less(const CatalogRecord& a, const CatalogRecord& b);
void sort_records(std::vector<CatalogRecord>& records);

std::string row_to_hex(Word row, std::size_t n);
Word hex_to_row(std::string_view hex, std::size_t n);

std::string format_record(const CatalogRecord& r);

// The fields as written in a line, before any recomputation.
struct StatedRecord {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::uint64_t a4 = 0;
  BigInt aut_order;
  std::string hash;
  LinearCode code{1, {}};
  std::string provenance;
};

// Throws ParseError (with `line_no` when nonzero).
StatedRecord parse_record_line(std::string_view line, std::size_t line_no = 0);

// Field-by-field differences between a stated record and the recomputed one,
// as "field: stated X, computed Y" strings. Empty when they agree.
std::vector<std::string> record_mismatches(const StatedRecord& stated, const CatalogRecord& computed);

}  // namespace sdc
