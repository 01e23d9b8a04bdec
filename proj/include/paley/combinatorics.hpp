#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace paley {

enum class SearchMode { exhaustive, sampled };

const char* to_string(SearchMode mode) noexcept;
// Throws input_error on anything but "exhaustive" / "sampled".
SearchMode parse_search_mode(const std::string& text);

// Default pair/support budget for exhaustive enumeration.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// k-subset of {0..n-1} with colexicographic rank `rank`, ascending.
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k);

// Advance to the colex successor within {0..n-1}; false after the last subset.
bool colex_next(std::vector<std::size_t>& subset, std::size_t n);

// Runs body(shard) for shard in [0, shards) on up to `workers` threads.
// Shards are claimed in ascending order; body must be thread-safe.
void parallel_shards(std::size_t shards, unsigned workers,
                     const std::function<void(std::size_t)>& body);

unsigned default_workers();

// SplitMix64 finaliser, used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace paley
