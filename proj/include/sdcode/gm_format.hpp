#pragma once

// Generator-matrix text format: a header line "n k" followed by k rows of n
// characters from {0,1}. Several matrices may follow each other in one file.

#include "sdcode/code.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sdc {

struct GmOptions {
  // Accept rank-deficient matrices and re-reduce them instead of failing.
  bool allow_dependent = false;
};

std::vector<LinearCode> parse_gm_all(std::string_view text, GmOptions opts = {});
// Exactly one matrix expected.
LinearCode parse_gm(std::string_view text, GmOptions opts = {});
LinearCode read_gm_file(const std::string& path, GmOptions opts = {});

std::string to_gm(const LinearCode& c);
void write_gm_file(const std::string& path, const LinearCode& c);

}  // namespace sdc
