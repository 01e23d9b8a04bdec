#include "paley/combinatorics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

#include "paley/errors.hpp"

namespace paley {

const char* to_string(SearchMode mode) noexcept {
  return mode == SearchMode::exhaustive ? "exhaustive" : "sampled";
}

SearchMode parse_search_mode(const std::string& text) {
  if (text == "exhaustive") return SearchMode::exhaustive;
  if (text == "sampled") return SearchMode::sampled;
  throw input_error("unknown mode '" + text + "' (expected exhaustive or sampled)");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<std::size_t> out(k);
  for (std::size_t i = k; i > 0; --i) {
    // Largest c with C(c, i) <= rank.
    std::size_t c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    out[i - 1] = c;
    rank -= binomial(c, i);
  }
  return out;
}

bool colex_next(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = (i + 1 < k) ? subset[i + 1] : n;
    if (subset[i] + 1 < limit) {
      ++subset[i];
      for (std::size_t j = 0; j < i; ++j) subset[j] = j;
      return true;
    }
  }
  return false;
}

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

void parallel_shards(std::size_t shards, unsigned workers,
                     const std::function<void(std::size_t)>& body) {
  workers = std::max(1U, workers);
  if (workers == 1 || shards <= 1) {
    for (std::size_t s = 0; s < shards; ++s) body(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t s = next++; s < shards; s = next++) {
      try {
        body(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto count = std::min<std::size_t>(workers, shards);
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(run);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace paley
