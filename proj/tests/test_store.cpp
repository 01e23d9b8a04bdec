#include <doctest.h>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "paley/errors.hpp"
#include "paley/scan.hpp"
#include "paley/store.hpp"

using namespace paley;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("paley_store_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string export_string(const fs::path& cache, ExportOptions opts) {
  std::ostringstream out;
  export_cache(cache, opts, out);
  return out.str();
}

ScanConfig base_config(const fs::path& out) {
  ScanConfig c;
  c.output = out;
  return c;
}

}  // namespace

TEST_CASE("prime filter") {
  PrimeFilter f{3, 23, Congruence::three};
  CHECK(f.primes() == std::vector<std::uint64_t>{3, 7, 11, 19, 23});
  f = {5, 13, Congruence::one};
  CHECK(f.primes() == std::vector<std::uint64_t>{5, 13});
  f = {1, 12, Congruence::both};
  CHECK(f.primes() == std::vector<std::uint64_t>{3, 5, 7, 11});
  f = {10, 5, Congruence::both};
  CHECK_THROWS_AS(f.primes(), input_error);
  CHECK_THROWS_AS(parse_congruence("2"), input_error);
}

TEST_CASE("record round trip") {
  CommandParams params;
  params.k = 3;
  const auto rec = compute_record("rip", 7, params);
  CHECK_FALSE(rec.failed);
  const auto line = to_json(rec).dump();
  const auto back = record_from_json(Json::parse(line));
  CHECK(to_json(back).dump() == line);
  CHECK(back.key() == rec.key());
  CHECK(rec.timestamp.size() == 20);
  CHECK(rec.timestamp.back() == 'Z');
  Json bad = to_json(rec);
  bad["schema_version"] = 2;
  CHECK_THROWS_AS(record_from_json(bad), input_error);
}

TEST_CASE("seeds are derived per record") {
  CommandParams params;
  params.seed = 1234;
  params.mode = SearchMode::sampled;
  const auto a = record_params("rip", 7, params), b = record_params("rip", 11, params);
  CHECK(derive_seed(1234, "rip", 7, a) == derive_seed(1234, "rip", 7, a));
  CHECK(derive_seed(1234, "rip", 7, a) != derive_seed(1234, "rip", 11, b));
  CHECK(derive_seed(1234, "rip", 7, a) != derive_seed(1235, "rip", 7, a));
  CHECK(derive_seed(1234, "rip", 7, a) != derive_seed(1234, "flat-rip", 7, a));
  const auto r1 = compute_record("rip", 13, params), r2 = compute_record("rip", 13, params);
  CHECK(r1.result.dump() == r2.result.dump());
  CHECK(r1.result["rng_seed"] == derive_seed(1234, "rip", 13, r1.params));
}

TEST_CASE("failed records carry the error") {
  CommandParams params;
  params.k = 9;
  const auto rec = compute_record("rip", 7, params);
  CHECK(rec.failed);
  CHECK(rec.error.rfind("input:", 0) == 0);
  params.k = 3;
  params.budget = 5;
  const auto budget = compute_record("rip", 7, params);
  CHECK(budget.failed);
  CHECK(budget.error.rfind("budget:", 0) == 0);
  CHECK_FALSE(record_numerical_failure(budget));
}

TEST_CASE("scan example configurations") {
  TempDir dir;
  auto cfg = base_config(dir.path / "cache.jsonl");
  cfg.primes = {3, 23, Congruence::three};
  cfg.commands = {"transitive"};
  auto s = run_scan(cfg);
  CHECK(s.appended == 5);
  CHECK(s.violations == 0);
  const auto contents = read_cache(cfg.output);
  REQUIRE(contents.records.size() == 5);
  std::vector<std::uint64_t> ps;
  for (const auto& r : contents.records) {
    ps.push_back(r.p);
    const auto size = r.result["size"].get<double>();
    CHECK(size <= tabib_bound(r.p));
    CHECK(size <= appendix_bound(r.p));
  }
  CHECK(ps == std::vector<std::uint64_t>{3, 7, 11, 19, 23});

  const auto before = slurp(cfg.output);
  s = run_scan(cfg);
  CHECK(s.appended == 0);
  CHECK(s.skipped == 5);
  CHECK(slurp(cfg.output) == before);

  cfg.primes = {5, 13, Congruence::one};
  cfg.commands = {"clique"};
  s = run_scan(cfg);
  CHECK(s.appended == 2);
}

TEST_CASE("records are appended in ascending p with many workers") {
  TempDir dir;
  auto cfg = base_config(dir.path / "c.jsonl");
  cfg.primes = {3, 60, Congruence::both};
  cfg.commands = {"coherence", "bounds"};
  cfg.workers = 4;
  run_scan(cfg);
  const auto recs = read_cache(cfg.output).records;
  REQUIRE(recs.size() == 2 * PrimeFilter{3, 60, Congruence::both}.primes().size());
  for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i - 1].p <= recs[i].p);
  for (const auto& r : recs)
    if (r.command == "coherence")
      CHECK(std::abs(r.result["coherence"].get<double>() - r.result["welch_bound"].get<double>()) < 1e-12);
}

TEST_CASE("scan validation") {
  TempDir dir;
  auto cfg = base_config(dir.path / "c.jsonl");
  cfg.primes = {3, 11, Congruence::both};
  cfg.commands = {"rip"};
  cfg.params.mode = SearchMode::sampled;
  CHECK_THROWS_AS(run_scan(cfg), input_error);
  cfg.params.seed = 1;
  cfg.commands = {"nope"};
  CHECK_THROWS_AS(run_scan(cfg), input_error);
  cfg.commands = {"rip"};
  cfg.primes = {11, 3, Congruence::both};
  CHECK_THROWS_AS(run_scan(cfg), input_error);
  cfg.primes = {3, 11, Congruence::both};
  cfg.output = dir.path / "missing" / "c.jsonl";
  CHECK_THROWS_AS(run_scan(cfg), input_error);
}

TEST_CASE("budget exhaustion is recorded and the scan continues") {
  TempDir dir;
  auto cfg = base_config(dir.path / "c.jsonl");
  cfg.primes = {3, 13, Congruence::both};
  cfg.commands = {"rip"};
  cfg.params.k = 2;
  cfg.params.budget = 40;
  const auto s = run_scan(cfg);
  CHECK(s.appended == 5);
  CHECK(s.failed == 2);  // C(12, 2) and C(14, 2) exceed 40
  const auto csv = export_string(cfg.output, {});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  ExportOptions json;
  json.format = ExportFormat::json;
  CHECK(Json::parse(export_string(cfg.output, json)).size() == 5);
}

TEST_CASE("cache lock is exclusive") {
  TempDir dir;
  ResultCache first(dir.path / "c.jsonl");
  CHECK_THROWS_AS(ResultCache(dir.path / "c.jsonl"), input_error);
}

TEST_CASE("truncated tail is quarantined and corrupt lines are reported") {
  TempDir dir;
  const auto path = dir.path / "c.jsonl";
  {
    auto cfg = base_config(path);
    cfg.primes = {3, 13, Congruence::both};
    cfg.commands = {"coherence"};
    run_scan(cfg);
  }
  const auto good = slurp(path);
  {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    out << "not json\n" << R"({"schema_version":1,"timestamp":"x","comm)";
  }
  ExportOptions opts;
  std::ostringstream sink;
  const auto summary = export_cache(path, opts, sink);
  REQUIRE(summary.corrupt.size() == 2);
  CHECK(summary.corrupt[0].line == 6);
  CHECK(summary.rows == 5);
  {
    ResultCache cache(path);
    CHECK(cache.quarantined());
    CHECK(cache.records().size() == 5);
    REQUIRE(cache.corrupt().size() == 1);
    CHECK(cache.corrupt()[0].line == 6);
  }
  CHECK(slurp(path) == good + "not json\n");
  CHECK(slurp(path.string() + ".quarantine") == "{\"schema_version\":1,\"timestamp\":\"x\",\"comm\n");
}

TEST_CASE("export layout") {
  TempDir dir;
  const auto path = dir.path / "c.jsonl";
  auto cfg = base_config(path);
  cfg.primes = {3, 13, Congruence::both};
  cfg.commands = {"bounds", "rip", "coherence"};
  run_scan(cfg);

  ExportOptions opts;
  opts.filter.command = "bounds";
  const auto bounds = export_string(path, opts);
  CHECK(bounds.rfind("p,tabib,hp,appendix,measured,witness,runtime_ms\n", 0) == 0);
  CHECK(bounds.find("\n7,3.424428900898052,,4.6055512754639896,3,0;3;6,") != std::string::npos);

  opts.filter.command = "rip";
  const auto rip = export_string(path, opts);
  CHECK(rip.rfind("p,K,delta,witness_support,mode,enumerated_count,rng_seed,runtime_ms\n", 0) == 0);
  CHECK(std::count(rip.begin(), rip.end(), '\n') == 6);
  CHECK(rip.find("coherence") == std::string::npos);

  opts.filter.command = "flat-rip";
  CHECK(export_string(path, opts) ==
        "p,K,theta,witness_I,witness_J,mode,enumerated_count,rng_seed,runtime_ms\n");

  opts.filter = {};
  opts.omit_timing = true;
  const auto mixed = export_string(path, opts);
  CHECK(mixed.rfind("command,p,params,result\n", 0) == 0);
  // Sorted by command, then p.
  CHECK(mixed.find("\nbounds,3,") < mixed.find("\ncoherence,3,"));
  CHECK(mixed.find("\ncoherence,13,") < mixed.find("\nrip,3,"));

  opts.format = ExportFormat::json;
  const auto j = Json::parse(export_string(path, opts));
  CHECK(j.size() == 15);
  CHECK_FALSE(j[0].contains("timestamp"));
  CHECK_FALSE(j[0].contains("runtime_ms"));
  CHECK(j[0]["command"] == "bounds");

  CHECK_THROWS_AS(parse_export_format("xml"), input_error);
  CHECK_THROWS_AS(export_cache(dir.path / "none.jsonl", opts, std::cout), input_error);
}
