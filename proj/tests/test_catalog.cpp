#include "doctest.h"

#include "sdcode/catalog.hpp"
#include "sdcode/classify.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/standard_codes.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

using namespace sdc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sdcode_catalog_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("ingest of a generator matrix") {
    auto rep = ingest_text(to_gm(codes::e8()));
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.issues.empty());
    CHECK(rep.records[0].min_weight == 4);
    CHECK(rep.records[0].a4 == 14);
    CHECK(rep.records[0].aut_order == 1344);
    CHECK(rep.records[0].provenance == "ingest");

    std::string dependent = "8 5\n11110000\n00111100\n00001111\n10101010\n11001100\n";
    CHECK_THROWS_AS(ingest_text(dependent), ParseError);
    std::string dep2 = "8 5\n11110000\n00111100\n00001111\n10101010\n11000011\n";
    auto relaxed = ingest_text(dep2, IngestFormat::gm, true);
    CHECK(relaxed.records.size() == 1);
    CHECK(relaxed.issues.empty());

    auto bad = ingest_text("4 2\n1100\n1010\n");
    CHECK(bad.records.empty());
    REQUIRE(bad.issues.size() == 1);
    CHECK(bad.issues[0].record == 1);
    CHECK_THROWS_AS(ingest_text("8 1\n1111000\n"), ParseError);
  }

  TEST_CASE("catalog lines round trip and mismatches are reported") {
    auto cat = classify_doubly_even(16);
    std::vector<std::string> lines;
    for (const auto& r : cat.records) lines.push_back(format_record(r));
    auto rep = ingest_text(join(lines));
    CHECK(rep.issues.empty());
    std::vector<std::string> again;
    for (const auto& r : rep.records) again.push_back(format_record(r));
    CHECK(again == lines);

    // claim d = 8 for a code of minimum weight 4
    std::string wrong = lines[0];
    wrong.replace(wrong.find(" 4 "), 3, " 8 ");
    auto mism = ingest_text(join({wrong, lines[1]}));
    CHECK(mism.records.size() == 1);
    REQUIRE(!mism.issues.empty());
    CHECK(mism.issues[0].line == 1);
    CHECK(mism.issues[0].message.find("d: stated 8, computed 4") != std::string::npos);
    CHECK_THROWS_AS(ingest_text("16 8 4 28 1 zz 00 x\n", IngestFormat::catalog_line), ParseError);
  }

  TEST_CASE("store deduplicates and reloads") {
    auto dir = scratch("store");
    std::mt19937_64 rng(3);
    auto g = codes::golay24();
    {
      CatalogStore store(dir);
      auto a = make_record(permute(g, random_perm(24, rng)), "ingest");
      auto b = make_record(permute(g, random_perm(24, rng)), "ingest");
      CHECK(store.insert(a));
      CHECK(!store.insert(b));
      CHECK(store.size() == 1);
      CHECK(store.insert(classify_doubly_even(16).records) == 2);
      CHECK(store.size() == 3);
      CHECK(fs::exists(dir / CatalogStore::file_name(24, 8)));
      CHECK(fs::exists(dir / CatalogStore::file_name(16, 4)));
      for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
      auto index = store.index();
      auto lines = store.lines();
      store.reload();
      CHECK(store.index() == index);
      CHECK(store.lines() == lines);
      CatalogStore other(dir);
      CHECK(other.index() == index);
    }
    std::ofstream(dir / "broken.cat") << "not a record\n";
    CHECK_THROWS_AS(CatalogStore{dir}, ParseError);
    fs::remove_all(dir);
  }
}
