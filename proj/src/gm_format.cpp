#include "sdcode/gm_format.hpp"

#include "sdcode/errors.hpp"

#include <fstream>
#include <sstream>

namespace sdc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<LinearCode> parse_gm_all(std::string_view text, GmOptions opts) {
  auto lines = split_lines(text);
  std::vector<LinearCode> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string_view header = trim(lines[i]);
    if (header.empty()) {
      ++i;
      continue;
    }
    std::size_t header_line = i + 1;
    std::istringstream hs{std::string(header)};
    long long n = -1, k = -1;
    std::string extra;
    if (!(hs >> n >> k) || (hs >> extra)) throw ParseError("expected header \"n k\"", header_line);
    if (n <= 0 || n > static_cast<long long>(kMaxCodeLength)) throw ParseError("length out of range 1..64", header_line);
    if (k < 0 || k > n) throw ParseError("dimension out of range", header_line);
    ++i;
    std::vector<Word> rows;
    for (long long r = 0; r < k; ++r, ++i) {
      if (i >= lines.size()) throw ParseError("missing generator rows", i);
      std::string_view row = trim(lines[i]);
      if (row.size() != static_cast<std::size_t>(n))
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), i + 1);
      Word w = 0;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == '1')
          w |= Word{1} << c;
        else if (row[c] != '0')
          throw ParseError("row contains a character other than 0/1", i + 1);
      }
      rows.push_back(w);
    }
    LinearCode code(static_cast<std::size_t>(n), rows);
    if (code.dimension() != static_cast<std::size_t>(k) && !opts.allow_dependent)
      throw ParseError("generator matrix has rank " + std::to_string(code.dimension()) + " < " + std::to_string(k) +
                           " (use --allow-dependent to accept)",
                       header_line);
    out.push_back(std::move(code));
  }
  return out;
}

LinearCode parse_gm(std::string_view text, GmOptions opts) {
  auto all = parse_gm_all(text, opts);
  if (all.size() != 1) throw ParseError("expected exactly one generator matrix, found " + std::to_string(all.size()));
  return std::move(all.front());
}

LinearCode read_gm_file(const std::string& path, GmOptions opts) { return parse_gm(read_file(path), opts); }

std::string to_gm(const LinearCode& c) {
  std::string s = std::to_string(c.length()) + " " + std::to_string(c.dimension()) + "\n";
  for (Word w : c.basis()) s += word_to_string(w, c.length()) + "\n";
  return s;
}

void write_gm_file(const std::string& path, const LinearCode& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << to_gm(c);
}

}  // namespace sdc
