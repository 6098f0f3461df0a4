#pragma once

// On-disk catalogs: one file of record lines per (n, d), deduplicated by
// canonical hash, and ingest of external generator-matrix collections.

#include "sdcode/record.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace sdc {

class CatalogStore {
 public:
  struct Location {
    std::string file;
    std::size_t line = 0;  // 0-based within the file
    friend bool operator==(const Location&, const Location&) = default;
  };

  // Creates the directory if needed and loads every *.cat file in it.
  explicit CatalogStore(std::filesystem::path dir);

  static std::string file_name(std::size_t n, std::size_t d);

  // Records whose hash is new are appended; each touched file is rewritten
  // through a temporary and a rename. Returns the number added.
  std::size_t insert(const std::vector<CatalogRecord>& records);
  bool insert(const CatalogRecord& record);

  bool contains(const std::string& hash) const;
  std::size_t size() const;
  const std::map<std::string, Location>& index() const noexcept { return index_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

  // The stored lines, file by file in name order.
  std::vector<StatedRecord> records() const;
  std::vector<std::string> lines() const;
  void reload();

 private:
  void write_file(const std::string& name) const;

  std::filesystem::path dir_;
  std::map<std::string, std::vector<std::string>> files_;
  std::map<std::string, Location> index_;
  mutable std::mutex mutex_;
};

enum class IngestFormat { automatic, gm, catalog_line };

struct IngestIssue {
  std::size_t record = 0;  // 1-based position in the input
  std::size_t line = 0;    // source line, when known
  std::string message;
};

struct IngestReport {
  std::vector<CatalogRecord> records;  // verified records only
  std::vector<IngestIssue> issues;
};

// GM input: every matrix must span a self-dual code. Catalog lines: the
// stated k, d, A4, |Aut| and hash are recomputed; a record that disagrees is
// reported and left out. ParseError on malformed text.
IngestReport ingest_text(std::string_view text, IngestFormat format = IngestFormat::automatic,
                         bool allow_dependent = false, unsigned threads = 1);
IngestReport ingest_file(const std::filesystem::path& path, IngestFormat format = IngestFormat::automatic,
                         bool allow_dependent = false, unsigned threads = 1);

}  // namespace sdc
