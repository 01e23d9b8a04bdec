#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paley/charsum.hpp"
#include "paley/combinatorics.hpp"
#include "paley/store.hpp"

namespace paley {

enum class Congruence { one, three, both };
Congruence parse_congruence(const std::string& text);

struct PrimeFilter {
  std::uint64_t lo = 3;
  std::uint64_t hi = 3;
  Congruence residue_class = Congruence::both;
  // Odd primes in [lo, hi] of the requested class mod 4.
  std::vector<std::uint64_t> primes() const;
};

struct CommandParams {
  std::size_t k = 2;
  // When tau is set, rip/flat-rip use K = ceil(p^(tau + beta0)) per prime.
  std::optional<double> tau;
  double beta0 = 0;
  double alpha = 0.5;
  Pairing pairing = Pairing::independent;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t samples = 10000;
  std::optional<std::uint64_t> seed;
  bool exact = true;
  std::uint64_t exact_limit = 100;
};

inline const std::vector<std::string>& scan_commands() {
  static const std::vector<std::string> names{"coherence", "rip",        "flat-rip", "charsum-scan",
                                              "clique",    "transitive", "bounds"};
  return names;
}

// clique needs p = 1 mod 4, transitive p = 3 mod 4; everything else runs for any odd prime.
bool command_applies(const std::string& command, std::uint64_t p);

// Canonical params object for a record; carries the global seed.
Json record_params(const std::string& command, std::uint64_t p, const CommandParams& params);

// Per-record seed: hash of the global seed with (command, p, params).
std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& command, std::uint64_t p,
                          const Json& params);

// Runs one command at one prime. Budget and input errors become failed
// records; numerical_error is recorded as failed with error prefix "numerical:".
ScanRecord compute_record(const std::string& command, std::uint64_t p, const CommandParams& params,
                          unsigned workers = 1);

bool record_violation(const ScanRecord& record);
bool record_numerical_failure(const ScanRecord& record);

struct ScanConfig {
  PrimeFilter primes;
  std::vector<std::string> commands;
  CommandParams params;
  unsigned workers = 1;
  std::filesystem::path output;
};

// Throws input_error for an unknown command, an empty/invalid range or a
// sampled mode without a seed.
void validate(const ScanConfig& config);

struct ScanSummary {
  std::size_t appended = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::size_t numerical_failures = 0;
  std::size_t violations = 0;
};

// Records are computed concurrently and appended by the calling thread in
// ascending (p, command order). Keys already in the cache are skipped.
ScanSummary run_scan(const ScanConfig& config,
                     const std::function<void(const ScanRecord&)>& on_record = {});

}  // namespace paley
