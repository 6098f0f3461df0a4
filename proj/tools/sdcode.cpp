// Command-line front end. Exit codes: 0 ok, 1 inequivalent (equiv), 2 parse,
// 3 validation, 4 budget, 5 incomplete, 6 internal error.

#include "sdcode/catalog.hpp"
#include "sdcode/classify.hpp"
#include "sdcode/construct.hpp"
#include "sdcode/equivalence.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

using namespace sdc;

namespace {

unsigned thread_count(unsigned flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("SDCODE_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("SDCODE_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

void print_gm(const LinearCode& c) { std::cout << to_gm(c); }

int run_mass(std::size_t n) {
  std::cout << to_decimal(mass(n)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification tools for binary doubly even self-dual codes"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads_flag = 0;
  app.add_option("--threads", threads_flag, "worker threads (default: $SDCODE_THREADS or 1)")->check(CLI::PositiveNumber);
  int status = 0;

  auto* mass_cmd = app.add_subcommand("mass", "number of distinct doubly even self-dual codes of length n");
  std::size_t mass_n = 0;
  mass_cmd->add_option("n", mass_n)->required();
  mass_cmd->callback([&] { status = run_mass(mass_n); });

  auto* classify_cmd = app.add_subcommand("classify", "classify doubly even self-dual codes of length n");
  std::size_t cl_n = 0;
  std::string cl_method = "neighbor", cl_out, cl_checkpoint;
  std::size_t cl_budget = 0;
  bool cl_quiet = false;
  classify_cmd->add_option("n", cl_n)->required();
  classify_cmd->add_option("--method", cl_method, "neighbor, glue or lift-chain")->capture_default_str();
  classify_cmd->add_option("--out", cl_out, "catalog directory (default: print records)");
  classify_cmd->add_option("--checkpoint", cl_checkpoint, "checkpoint directory for resumable runs");
  classify_cmd->add_option("--budget", cl_budget, "stop after this many shards (required at length 40)");
  classify_cmd->add_flag("--quiet", cl_quiet, "no progress on stderr");
  classify_cmd->callback([&] {
    ClassifyOptions opts;
    opts.method = parse_method(cl_method);
    opts.threads = thread_count(threads_flag);
    if (!cl_checkpoint.empty()) opts.checkpoint_dir = cl_checkpoint;
    opts.shard_budget = cl_budget;
    if (!cl_quiet) opts.log = [](const std::string& m) { std::cerr << m << "\n"; };
    auto res = classify_doubly_even(cl_n, opts);
    if (cl_out.empty()) {
      for (const auto& r : res.records) std::cout << format_record(r) << "\n";
    } else {
      CatalogStore store(cl_out);
      store.insert(res.records);
    }
    std::size_t extremal = 0;
    for (const auto& r : res.records)
      if (r.min_weight == extremal_bound(cl_n)) ++extremal;
    std::cerr << "length " << cl_n << ": " << res.records.size() << " codes (" << res.records.size() - extremal
              << " non-extremal, " << extremal << " extremal), mass " << to_decimal(res.account.total)
              << " certified\n";
  });

  auto* equiv_cmd = app.add_subcommand("equiv", "test two codes for equivalence");
  std::string eq_a, eq_b;
  equiv_cmd->add_option("a", eq_a)->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("b", eq_b)->required()->check(CLI::ExistingFile);
  equiv_cmd->callback([&] {
    auto a = read_gm_file(eq_a), b = read_gm_file(eq_b);
    if (auto p = is_equivalent(a, b)) {
      std::cout << "equivalent\n" << p->to_cycle_string() << "\n";
    } else {
      std::cout << "inequivalent\n";
      status = 1;
    }
  });

  auto* aut_cmd = app.add_subcommand("aut", "automorphism group order and generators");
  std::string aut_file;
  aut_cmd->add_option("code", aut_file)->required()->check(CLI::ExistingFile);
  aut_cmd->callback([&] {
    auto lab = canonical_labeling(read_gm_file(aut_file));
    PermGroup g(lab.canonical.code.length(), lab.generators);
    std::cout << "order " << to_decimal(g.order()) << "\n";
    for (const auto& p : lab.generators) std::cout << "generator " << p.to_cycle_string() << "\n";
  });

  auto* covrad_cmd = app.add_subcommand("covrad", "covering radius by syndrome search");
  std::string cr_file;
  covrad_cmd->add_option("code", cr_file)->required()->check(CLI::ExistingFile);
  covrad_cmd->callback([&] {
    auto c = read_gm_file(cr_file);
    auto res = covering_radius(c);
    std::cout << "radius " << res.radius << "\n"
              << "witness " << word_to_string(res.witness, c.length()) << "\n"
              << "sphere_bound " << sphere_covering_bound(c.length(), c.dimension()) << "\n";
    for (std::size_t t = 0; t < res.layer_sizes.size(); ++t) std::cout << "cosets " << t << " " << res.layer_sizes[t] << "\n";
  });

  auto* weights_cmd = app.add_subcommand("weights", "weight distribution");
  std::string w_file;
  weights_cmd->add_option("code", w_file)->required()->check(CLI::ExistingFile);
  weights_cmd->callback([&] {
    const auto& wd = read_gm_file(w_file).weights();
    for (std::size_t w = 0; w < wd.counts.size(); ++w)
      if (wd[w]) std::cout << w << " " << wd[w] << "\n";
  });

  auto* shadow_cmd = app.add_subcommand("shadow", "shadow of a singly even self-dual code");
  std::string sh_file;
  shadow_cmd->add_option("code", sh_file)->required()->check(CLI::ExistingFile);
  shadow_cmd->callback([&] {
    auto c = read_gm_file(sh_file);
    auto sd = shadow(c);
    std::cout << "c0_dim " << sd.c0.dimension() << "\n";
    for (std::size_t w = 0; w < sd.shadow_weights.counts.size(); ++w)
      if (sd.shadow_weights[w]) std::cout << w << " " << sd.shadow_weights[w] << "\n";
  });

  auto* lift_cmd = app.add_subcommand("lift", "doubly even code of length n+2 from a singly even code of length n = 6 mod 8");
  std::string lift_file;
  lift_cmd->add_option("code", lift_file)->required()->check(CLI::ExistingFile);
  lift_cmd->callback([&] { print_gm(bp_lift(read_gm_file(lift_file))); });

  auto* glue_cmd = app.add_subcommand("glue", "glue two doubly even codes containing the all-one vector");
  std::string g1, g2;
  bool glue_all = false;
  glue_cmd->add_option("c1", g1)->required()->check(CLI::ExistingFile);
  glue_cmd->add_option("c2", g2)->required()->check(CLI::ExistingFile);
  glue_cmd->add_flag("--all", glue_all, "one code per double coset instead of a single glue");
  glue_cmd->callback([&] {
    auto c1 = read_gm_file(g1), c2 = read_gm_file(g2);
    if (glue_all) {
      auto fam = glue_family(c1, c2);
      if (fam.codes.empty()) throw ValidationError("glue: the quotients are not isometric");
      for (const auto& d : fam.codes) print_gm(d);
      std::cerr << fam.codes.size() << " double cosets\n";
    } else {
      auto f = find_isometry(quotient_space(c1), quotient_space(c2));
      if (!f) throw ValidationError("glue: the quotients are not isometric");
      print_gm(glue(GlueSpec{c1, c2, *f}));
    }
  });

  auto* sub_cmd = app.add_subcommand("subtract", "subtraction of coordinate pairs");
  std::string sub_file, sub_pair;
  bool sub_extremal = false, sub_pipeline = false;
  std::size_t sub_min_weight = 0;
  sub_cmd->add_option("code", sub_file)->required()->check(CLI::ExistingFile);
  auto* ext_flag = sub_cmd->add_flag("--extremal-pairs", sub_extremal, "pairs passing the weight-8 Gram filter (A4 <= 1)");
  auto* mw_opt = sub_cmd->add_option("--min-weight", sub_min_weight, "pairs whose subtraction has at least this minimum weight");
  auto* pair_opt = sub_cmd->add_option("--pair", sub_pair, "subtract the 1-based pair i,j and print the code");
  auto* pipe_flag = sub_cmd->add_flag("--pipeline", sub_pipeline,
                                      "subtract every admissible pair of every code in the file and print the "
                                      "inequivalent results as records");
  ext_flag->excludes(mw_opt)->excludes(pair_opt)->excludes(pipe_flag);
  mw_opt->excludes(pair_opt)->excludes(pipe_flag);
  pair_opt->excludes(pipe_flag);
  sub_cmd->callback([&] {
    if (sub_pipeline) {
      auto rep = ingest_file(sub_file, IngestFormat::automatic, false, thread_count(threads_flag));
      for (const auto& i : rep.issues) std::cerr << "record " << i.record << ": " << i.message << "\n";
      if (!rep.issues.empty()) throw ValidationError("pipeline input has invalid records");
      std::vector<LinearCode> inputs;
      for (const auto& r : rep.records) inputs.push_back(r.code);
      for (const auto& s : extremal_subtraction(inputs, sub_min_weight, thread_count(threads_flag))) {
        std::cout << format_record(s.record);
        if (s.we_class) std::cout << "  # WE" << s.we_class << " shadow_min " << s.shadow_min_weight;
        std::cout << "\n";
      }
      return;
    }
    auto d = read_gm_file(sub_file);
    if (!sub_pair.empty()) {
      auto comma = sub_pair.find(',');
      if (comma == std::string::npos) throw ParseError("--pair expects i,j");
      std::size_t i = std::stoul(sub_pair.substr(0, comma)), j = std::stoul(sub_pair.substr(comma + 1));
      if (i < 1 || j < 1 || i > d.length() || j > d.length() || i == j) throw ValidationError("--pair out of range");
      print_gm(subtract(d, i - 1, j - 1));
      return;
    }
    std::vector<CoordPair> pairs;
    if (sub_min_weight) pairs = min_weight_pairs(d, sub_min_weight);
    else pairs = subtraction_candidates(d);
    for (auto [i, j] : pairs) std::cout << i + 1 << " " << j + 1 << "\n";
    std::cerr << pairs.size() << " pairs\n";
  });

  auto* verify_cmd = app.add_subcommand("verify-catalog", "re-verify a catalog directory");
  std::string v_dir;
  bool v_mass = false;
  verify_cmd->add_option("dir", v_dir)->required()->check(CLI::ExistingDirectory);
  verify_cmd->add_flag("--mass", v_mass, "check the mass formula for every length present");
  verify_cmd->callback([&] {
    CatalogStore store(v_dir);
    auto stated = store.records();
    std::vector<std::string> problems;
    std::vector<std::optional<CatalogRecord>> made(stated.size());
    parallel_for(stated.size(), thread_count(threads_flag),
                 [&](std::size_t i) { made[i] = make_record(stated[i].code, stated[i].provenance); });
    std::map<std::size_t, std::vector<CatalogRecord>> by_n;
    for (std::size_t i = 0; i < stated.size(); ++i) {
      for (auto& m : record_mismatches(stated[i], *made[i]))
        problems.push_back("record " + std::to_string(i + 1) + ": " + m);
      by_n[stated[i].n].push_back(std::move(*made[i]));
    }
    for (const auto& p : problems) std::cerr << p << "\n";
    std::cout << "records " << stated.size() << "\n";
    bool incomplete = false;
    if (v_mass)
      for (const auto& [n, recs] : by_n) {
        bool doubly = std::all_of(recs.begin(), recs.end(), [](const CatalogRecord& r) { return is_doubly_even(r.code); });
        BigInt expected = doubly && n % 8 == 0 ? mass(n) : self_dual_mass(n);
        auto acc = mass_account(n, recs, expected);
        std::cout << "length " << n << ": " << recs.size() << " codes, total " << to_decimal(acc.total) << ", expected "
                  << to_decimal(acc.expected) << (acc.complete() ? ", complete" : ", INCOMPLETE") << "\n";
        if (!acc.complete()) incomplete = true;
      }
    if (!problems.empty()) throw ValidationError(std::to_string(problems.size()) + " mismatches");
    if (incomplete) throw IncompleteError("mass formula not satisfied");
  });

  auto* census_cmd = app.add_subcommand("census", "histograms over a catalog directory");
  std::string c_dir;
  census_cmd->add_option("dir", c_dir)->required()->check(CLI::ExistingDirectory);
  census_cmd->callback([&] {
    CatalogStore store(c_dir);
    std::map<std::size_t, std::vector<CatalogRecord>> by_n;
    auto stated = store.records();
    std::vector<std::optional<CatalogRecord>> made(stated.size());
    parallel_for(stated.size(), thread_count(threads_flag),
                 [&](std::size_t i) { made[i] = make_record(stated[i].code, stated[i].provenance); });
    for (auto& m : made) by_n[m->code.length()].push_back(std::move(*m));
    for (auto& [n, recs] : by_n) {
      sort_records(recs);
      std::cout << census_tsv(census(recs, thread_count(threads_flag)));
    }
  });

  auto* export_cmd = app.add_subcommand("export", "print catalog records as generator matrices");
  std::string ex_dir, ex_hash;
  export_cmd->add_option("dir", ex_dir)->required()->check(CLI::ExistingDirectory);
  std::size_t ex_d = 0;
  export_cmd->add_option("--hash", ex_hash, "only records whose hash starts with this prefix");
  export_cmd->add_option("--min-weight", ex_d, "only records of this minimum weight");
  export_cmd->callback([&] {
    CatalogStore store(ex_dir);
    for (const auto& s : store.records())
      if (s.hash.compare(0, ex_hash.size(), ex_hash) == 0 && (ex_d == 0 || s.d == ex_d)) print_gm(s.code);
  });

  auto* ingest_cmd = app.add_subcommand("ingest", "verify and import generator matrices or catalog lines");
  std::string in_file, in_store, in_format = "auto";
  bool in_dependent = false;
  ingest_cmd->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--store", in_store, "catalog directory to add the verified records to");
  ingest_cmd->add_option("--format", in_format, "auto, gm or catalog")->capture_default_str();
  ingest_cmd->add_flag("--allow-dependent", in_dependent, "accept rank-deficient generator matrices");
  ingest_cmd->callback([&] {
    IngestFormat fmt = IngestFormat::automatic;
    if (in_format == "gm") fmt = IngestFormat::gm;
    else if (in_format == "catalog") fmt = IngestFormat::catalog_line;
    else if (in_format != "auto") throw ValidationError("unknown format '" + in_format + "'");
    auto rep = ingest_file(in_file, fmt, in_dependent, thread_count(threads_flag));
    for (const auto& i : rep.issues)
      std::cerr << "record " << i.record << (i.line ? " (line " + std::to_string(i.line) + ")" : "") << ": "
                << i.message << "\n";
    if (in_store.empty()) {
      for (const auto& r : rep.records) std::cout << format_record(r) << "\n";
    } else {
      CatalogStore store(in_store);
      std::cerr << store.insert(rep.records) << " new records\n";
    }
    if (!rep.issues.empty()) throw ValidationError(std::to_string(rep.issues.size()) + " ingest issues");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ClassificationIncomplete& e) {
    std::cerr << "incomplete: " << e.what() << " (" << e.classes_found() << " classes so far)\n";
    return 5;
  } catch (const sdc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const sdc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const IncompleteError& e) {
    std::cerr << "incomplete: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  }
  return status;
}
