#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paley/combinatorics.hpp"
#include "paley/paley.hpp"

namespace paley {

// max_{j != k} |<col_j, col_k>|. Columns must be unit-norm within 1e-9.
double coherence(const ComplexMatrix& matrix);
double coherence(const PaleyMatrix& matrix);

// sqrt((N - M) / (M (N - 1))), 1 <= M <= N.
double welch_bound(std::uint64_t m, std::uint64_t n);

// Gram matrix G_{jk} = <col_j, col_k>.
ComplexMatrix gram_matrix(const ComplexMatrix& matrix);

struct SupportSpectrum {
  double lambda_min = 0;
  double lambda_max = 0;
  double deviation() const noexcept;  // max(lambda_max - 1, 1 - lambda_min)
};

// Extreme eigenvalues of the Gram of the selected columns, with the
// eigenpair residual check ||Gv - lambda v|| <= 1e-9 ||G||.
SupportSpectrum support_spectrum(const ComplexMatrix& matrix, std::span<const std::size_t> support);

struct EnumerationOptions {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = kDefaultBudget;  // exhaustive cap on supports / pairs
  std::uint64_t samples = 10000;          // sampled mode draws
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct RipReport {
  std::uint64_t p = 0;  // 0 for matrices not built from a prime
  std::size_t k = 0;
  double delta = 0;
  std::vector<std::size_t> witness_support;  // 0-based columns, ascending
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t enumerated_count = 0;
  std::uint64_t rng_seed = 0;
  // Sampled mode only certifies delta from below.
  bool lower_bound_only = false;
};

// delta_K = max over |S| = K of max(lambda_max(G_S) - 1, 1 - lambda_min(G_S)).
// Exhaustive supports run in colex order; ties keep the first support.
RipReport rip_constant_exact(const ComplexMatrix& matrix, std::size_t k,
                             const EnumerationOptions& options = {}, std::uint64_t p = 0);
RipReport rip_constant_exact(const PaleyMatrix& matrix, std::size_t k,
                             const EnumerationOptions& options = {});

struct FlatRipReport {
  std::uint64_t p = 0;
  std::size_t k = 0;
  double theta = 0;
  std::vector<std::size_t> witness_i;
  std::vector<std::size_t> witness_j;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t enumerated_count = 0;
  std::uint64_t rng_seed = 0;
  bool lower_bound_only = false;
};

// |<sum_{i in I} col_i, sum_{j in J} col_j>| / sqrt(|I||J|), computed from the columns.
double flat_pair_value(const ComplexMatrix& matrix, std::span<const std::size_t> i_set,
                       std::span<const std::size_t> j_set);

// Unordered disjoint pairs {I, J} with 1 <= |I|, |J| <= K among n columns.
std::uint64_t flat_pair_count(std::size_t n, std::size_t k);

FlatRipReport flat_rip_constant_exact(const ComplexMatrix& matrix, std::size_t k,
                                      const EnumerationOptions& options = {}, std::uint64_t p = 0);
FlatRipReport flat_rip_constant_exact(const PaleyMatrix& matrix, std::size_t k,
                                      const EnumerationOptions& options = {});

// 150 theta ln K.
double flat_to_rip_delta(std::size_t k, double theta);

struct LastColumnCorrection {
  double value = 0;  // |<sum_{i in I} phi_i, phi_{p+1}>|
  double bound = 0;  // |I| / sqrt(p)
  bool within_bound = false;
};

LastColumnCorrection last_column_correction(const PaleyMatrix& matrix,
                                            std::span<const std::size_t> columns);

}  // namespace paley
