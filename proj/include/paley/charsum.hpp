#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paley/combinatorics.hpp"
#include "paley/ff_core.hpp"

namespace paley {

// sum_{s in S, t in T} chi(s - t), exact. S and T must be nonempty and in range.
std::int64_t double_char_sum(const PrimeField& field, std::span<const Residue> s,
                             std::span<const Residue> t);

// sum_{s1, s2 in S} chi(s1 - s2).
std::int64_t self_char_sum(const PrimeField& field, std::span<const Residue> s);

struct SubsetPair {
  std::vector<Residue> s;  // ascending
  std::vector<Residue> t;  // ascending
};

// |double_char_sum| / (|S||T|) kept as an exact fraction.
struct PairRatio {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

PairRatio evaluate_pair_ratio(const PrimeField& field, std::span<const Residue> s,
                              std::span<const Residue> t);

// -log_p(ratio); +infinity when ratio is 0.
double implied_beta(std::uint64_t p, double ratio);

enum class Pairing { independent, diagonal };
const char* to_string(Pairing pairing) noexcept;
Pairing parse_pairing(const std::string& text);

struct PgcScanOptions {
  double alpha = 0.5;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = kDefaultBudget;  // exhaustive pair-evaluation cap
  std::uint64_t samples = 10000;          // sampled pairs (sampled mode)
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Pairing pairing = Pairing::independent;  // diagonal: T = S
};

struct PgcScanReport {
  std::uint64_t p = 0;
  double alpha = 0;
  SearchMode mode = SearchMode::exhaustive;
  Pairing pairing = Pairing::independent;
  std::uint64_t sample_count = 0;        // pairs evaluated
  std::uint64_t adversarial_count = 0;   // injected extremal candidates (sampled mode)
  std::size_t min_size = 0;              // smallest |S|, |T| with size > p^alpha
  PairRatio worst;
  double worst_ratio = 0;
  SubsetPair worst_pair_witness;
  double implied_beta = 0;
  std::uint64_t rng_seed = 0;
};

// Smallest integer strictly greater than p^alpha.
std::size_t pgc_min_size(std::uint64_t p, double alpha);

// Empirical evidence for P(alpha, beta): the worst observed ratio over
// pairs with |S|, |T| > p^alpha. Exhaustive mode enumerates every pair of
// such subsets (p <= 31) and throws budget_exceeded above the budget.
PgcScanReport scan_pgc_property(const PrimeField& field, const PgcScanOptions& options);

struct FlatBoundCheck {
  bool pass = false;
  std::int64_t sum = 0;
  double bound = 0;   // p^tau sqrt(|S||T|)
  double margin = 0;  // bound - |sum|
};

// |sum chi(s - t)| <= p^tau sqrt(|S||T|) for |S|, |T| <= p^(tau + beta).
FlatBoundCheck check_flat_charsum_bound(const PrimeField& field, double tau, double beta,
                                        std::span<const Residue> s, std::span<const Residue> t);

}  // namespace paley
