#include "sdcode/catalog.hpp"

#include "sdcode/equivalence.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/parallel.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace sdc {

namespace fs = std::filesystem;

CatalogStore::CatalogStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  reload();
}

std::string CatalogStore::file_name(std::size_t n, std::size_t d) {
  return "n" + std::to_string(n) + "_d" + std::to_string(d) + ".cat";
}

void CatalogStore::reload() {
  std::lock_guard lock(mutex_);
  files_.clear();
  index_.clear();
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".cat") continue;
    std::ifstream in(entry.path());
    auto name = entry.path().filename().string();
    auto& lines = files_[name];
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      if (line.empty()) continue;
      auto s = parse_record_line(line, no);
      if (!index_.emplace(s.hash, Location{name, lines.size()}).second)
        throw ValidationError("catalog " + name + " line " + std::to_string(no) + ": duplicate hash");
      lines.push_back(line);
    }
  }
}

void CatalogStore::write_file(const std::string& name) const {
  fs::path path = dir_ / name;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& line : files_.at(name)) out << line << '\n';
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::size_t CatalogStore::insert(const std::vector<CatalogRecord>& records) {
  std::lock_guard lock(mutex_);
  std::set<std::string> touched;
  std::size_t added = 0;
  for (const auto& r : records) {
    if (index_.count(r.hash)) continue;
    auto name = file_name(r.code.length(), r.min_weight);
    auto& lines = files_[name];
    index_.emplace(r.hash, Location{name, lines.size()});
    lines.push_back(format_record(r));
    touched.insert(name);
    ++added;
  }
  for (const auto& name : touched) write_file(name);
  return added;
}

bool CatalogStore::insert(const CatalogRecord& record) { return insert(std::vector<CatalogRecord>{record}) == 1; }

bool CatalogStore::contains(const std::string& hash) const {
  std::lock_guard lock(mutex_);
  return index_.count(hash) != 0;
}

std::size_t CatalogStore::size() const {
  std::lock_guard lock(mutex_);
  return index_.size();
}

std::vector<std::string> CatalogStore::lines() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, lines] : files_) out.insert(out.end(), lines.begin(), lines.end());
  return out;
}

std::vector<StatedRecord> CatalogStore::records() const {
  std::vector<StatedRecord> out;
  for (const auto& line : lines()) out.push_back(parse_record_line(line));
  return out;
}

namespace {

IngestFormat detect(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::size_t tokens = 0;
    for (std::string tok; ls >> tok;) ++tokens;
    if (tokens == 0 || line[line.find_first_not_of(" \t")] == '#') continue;
    return tokens == 8 ? IngestFormat::catalog_line : IngestFormat::gm;
  }
  return IngestFormat::gm;
}

}  // namespace

IngestReport ingest_text(std::string_view text, IngestFormat format, bool allow_dependent, unsigned threads) {
  if (format == IngestFormat::automatic) format = detect(text);
  IngestReport rep;
  std::vector<LinearCode> codes;
  std::vector<std::optional<StatedRecord>> stated;
  std::vector<std::size_t> line_nos;
  if (format == IngestFormat::gm) {
    for (auto& c : parse_gm_all(text, GmOptions{allow_dependent})) {
      codes.push_back(std::move(c));
      stated.emplace_back();
      line_nos.push_back(0);
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      auto s = parse_record_line(line, no);
      codes.push_back(s.code);
      stated.emplace_back(std::move(s));
      line_nos.push_back(no);
    }
  }
  std::vector<std::optional<CatalogRecord>> made(codes.size());
  std::vector<std::string> errors(codes.size());
  parallel_for(codes.size(), threads, [&](std::size_t i) {
    if (!is_self_dual(codes[i])) {
      errors[i] = "code is not self-dual";
      return;
    }
    made[i] = make_record(codes[i], stated[i] ? stated[i]->provenance : "ingest");
  });
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (!made[i]) {
      rep.issues.push_back({i + 1, line_nos[i], errors[i]});
      continue;
    }
    if (stated[i]) {
      auto diffs = record_mismatches(*stated[i], *made[i]);
      if (!diffs.empty()) {
        for (auto& d : diffs) rep.issues.push_back({i + 1, line_nos[i], std::move(d)});
        continue;
      }
    }
    rep.records.push_back(std::move(*made[i]));
  }
  return rep;
}

IngestReport ingest_file(const fs::path& path, IngestFormat format, bool allow_dependent, unsigned threads) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_text(buf.str(), format, allow_dependent, threads);
}

}  // namespace sdc
