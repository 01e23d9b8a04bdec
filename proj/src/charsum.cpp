#include "paley/charsum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "paley/errors.hpp"
#include "paley/tournament_analysis.hpp"

namespace paley {

namespace {

void check_subset(const PrimeField& field, std::span<const Residue> s, const char* op) {
  if (s.empty()) throw input_error(std::string(op) + ": subsets must be nonempty");
  for (Residue x : s) {
    if (x >= field.p()) throw input_error(std::string(op) + ": residue out of range");
  }
}

std::vector<Residue> mask_elements(std::uint32_t mask) {
  std::vector<Residue> out;
  while (mask != 0) {
    out.push_back(static_cast<Residue>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

struct Candidate {
  PairRatio ratio;
  SubsetPair pair;
  bool valid = false;
};

// a/b > c/d without overflow.
int compare_ratio(const PairRatio& x, const PairRatio& y) {
  const auto lhs = static_cast<__int128>(x.numerator) * y.denominator;
  const auto rhs = static_cast<__int128>(y.numerator) * x.denominator;
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

// Larger ratio wins; ties go to the lexicographically smallest (S, T).
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const int c = compare_ratio(a.ratio, b.ratio);
  if (c != 0) return c > 0;
  if (a.pair.s != b.pair.s) return a.pair.s < b.pair.s;
  return a.pair.t < b.pair.t;
}

std::vector<Residue> random_subset(std::mt19937_64& rng, std::uint64_t p, std::size_t min_size) {
  std::uniform_int_distribution<std::size_t> size_dist(min_size, p);
  const std::size_t k = size_dist(rng);
  std::vector<Residue> pool(p);
  std::iota(pool.begin(), pool.end(), Residue{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, p - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<SubsetPair> adversarial_pairs(const PrimeField& field, std::size_t min_size,
                                          Pairing pairing) {
  std::vector<SubsetPair> out;
  std::vector<Residue> ordered;
  if (field.r() == 1) {
    const Tournament t = build_paley_tournament(field);
    ordered = field.p() < 200 ? max_transitive(t).witness.vertices : greedy_transitive(t).vertices;
  } else {
    const Graph g = build_paley_graph(field);
    ordered = field.p() < 200 ? max_clique(g).witness : greedy_clique(g);
  }
  auto sorted = [](std::vector<Residue> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (pairing == Pairing::diagonal) {
    if (ordered.size() >= min_size) out.push_back({sorted(ordered), sorted(ordered)});
    return out;
  }
  // Prefix splits: every cross pair is an arc (tournament) or an edge (clique), ratio 1.
  for (std::size_t x = 1; x < ordered.size(); ++x) {
    if (x < min_size || ordered.size() - x < min_size) continue;
    out.push_back({sorted({ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(x)}),
                   sorted({ordered.begin() + static_cast<std::ptrdiff_t>(x), ordered.end()})});
  }
  if (field.r() == 0 && ordered.size() >= min_size) out.push_back({sorted(ordered), sorted(ordered)});
  return out;
}

}  // namespace

std::int64_t double_char_sum(const PrimeField& field, std::span<const Residue> s,
                             std::span<const Residue> t) {
  check_subset(field, s, "double_char_sum");
  check_subset(field, t, "double_char_sum");
  std::int64_t total = 0;
  for (Residue x : s) {
    for (Residue y : t) total += field.chi_diff(x, y);
  }
  return total;
}

std::int64_t self_char_sum(const PrimeField& field, std::span<const Residue> s) {
  return double_char_sum(field, s, s);
}

PairRatio evaluate_pair_ratio(const PrimeField& field, std::span<const Residue> s,
                              std::span<const Residue> t) {
  const auto sum = double_char_sum(field, s, t);
  return {sum < 0 ? -sum : sum, static_cast<std::int64_t>(s.size() * t.size())};
}

double implied_beta(std::uint64_t p, double ratio) {
  if (ratio <= 0) return std::numeric_limits<double>::infinity();
  const double beta = -std::log(ratio) / std::log(static_cast<double>(p));
  return beta == 0.0 ? 0.0 : beta;  // no negative zero
}

const char* to_string(Pairing pairing) noexcept {
  return pairing == Pairing::diagonal ? "diagonal" : "independent";
}

Pairing parse_pairing(const std::string& text) {
  if (text == "independent") return Pairing::independent;
  if (text == "diagonal") return Pairing::diagonal;
  throw input_error("unknown pairing '" + text + "' (expected independent or diagonal)");
}

std::size_t pgc_min_size(std::uint64_t p, double alpha) {
  const double threshold = std::pow(static_cast<double>(p), alpha);
  return static_cast<std::size_t>(std::floor(threshold)) + 1;
}

PgcScanReport scan_pgc_property(const PrimeField& field, const PgcScanOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw input_error("scan_pgc_property: alpha must lie in (0, 1)");
  }
  const std::uint64_t p = field.p();
  PgcScanReport report;
  report.p = p;
  report.alpha = options.alpha;
  report.mode = options.mode;
  report.pairing = options.pairing;
  report.rng_seed = options.seed;
  report.min_size = pgc_min_size(p, options.alpha);

  const unsigned workers = std::max(1U, options.workers);
  std::vector<Candidate> shard_best;

  if (options.mode == SearchMode::exhaustive) {
    if (p > 31) {
      throw budget_exceeded("scan_pgc_property: exhaustive mode supports p <= 31; use sampled mode");
    }
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << p); ++m) {
      if (static_cast<std::size_t>(std::popcount(m)) >= report.min_size) masks.push_back(m);
    }
    const auto n = static_cast<std::uint64_t>(masks.size());
    const std::uint64_t pairs = options.pairing == Pairing::diagonal ? n : n * n;
    if (pairs > options.budget) {
      throw budget_exceeded("scan_pgc_property: " + std::to_string(pairs) +
                            " pair evaluations exceed the budget of " +
                            std::to_string(options.budget) + "; use sampled mode");
    }
    report.sample_count = pairs;
    const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(masks.size(), 64));
    shard_best.resize(shards);
    parallel_shards(shards, workers, [&](std::size_t shard) {
      std::vector<std::int64_t> profile(p);
      Candidate& best = shard_best[shard];
      for (std::size_t i = shard; i < masks.size(); i += shards) {
        const std::uint32_t sm = masks[i];
        const auto s_elems = mask_elements(sm);
        // profile[t] = sum_{s in S} chi(s - t)
        for (Residue t = 0; t < p; ++t) {
          std::int64_t acc = 0;
          for (Residue s : s_elems) acc += field.chi_diff(s, t);
          profile[t] = acc;
        }
        auto consider = [&](std::uint32_t tm) {
          std::int64_t sum = 0;
          for (std::uint32_t w = tm; w != 0; w &= w - 1) sum += profile[std::countr_zero(w)];
          Candidate c;
          c.ratio = {sum < 0 ? -sum : sum,
                     static_cast<std::int64_t>(s_elems.size()) * std::popcount(tm)};
          c.valid = true;
          if (best.valid) {
            const int cmp = compare_ratio(c.ratio, best.ratio);
            if (cmp < 0) return;
            c.pair = {s_elems, mask_elements(tm)};
            if (cmp == 0 && !better(c, best)) return;
          } else {
            c.pair = {s_elems, mask_elements(tm)};
          }
          best = std::move(c);
        };
        if (options.pairing == Pairing::diagonal) {
          consider(sm);
        } else {
          for (std::uint32_t tm : masks) consider(tm);
        }
      }
    });
  } else {
    std::mt19937_64 rng(options.seed);
    std::vector<SubsetPair> candidates;
    if (report.min_size <= p) {
      candidates.reserve(options.samples);
      for (std::uint64_t i = 0; i < options.samples; ++i) {
        SubsetPair pair;
        pair.s = random_subset(rng, p, report.min_size);
        pair.t = options.pairing == Pairing::diagonal ? pair.s : random_subset(rng, p, report.min_size);
        candidates.push_back(std::move(pair));
      }
      auto extra = adversarial_pairs(field, report.min_size, options.pairing);
      report.adversarial_count = extra.size();
      for (auto& e : extra) candidates.push_back(std::move(e));
    }
    report.sample_count = candidates.size();
    const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(candidates.size(), 64));
    shard_best.resize(shards);
    parallel_shards(shards, workers, [&](std::size_t shard) {
      Candidate& best = shard_best[shard];
      for (std::size_t i = shard; i < candidates.size(); i += shards) {
        Candidate c{evaluate_pair_ratio(field, candidates[i].s, candidates[i].t), candidates[i], true};
        if (better(c, best)) best = std::move(c);
      }
    });
  }

  Candidate overall;
  for (auto& c : shard_best) {
    if (better(c, overall)) overall = std::move(c);
  }
  if (overall.valid) {
    report.worst = overall.ratio;
    report.worst_pair_witness = std::move(overall.pair);
  } else {
    report.worst = {0, 1};
  }
  report.worst_ratio = report.worst.value();
  report.implied_beta = implied_beta(p, report.worst_ratio);
  return report;
}

FlatBoundCheck check_flat_charsum_bound(const PrimeField& field, double tau, double beta,
                                        std::span<const Residue> s, std::span<const Residue> t) {
  check_subset(field, s, "check_flat_charsum_bound");
  check_subset(field, t, "check_flat_charsum_bound");
  const auto p = static_cast<double>(field.p());
  const double size_cap = std::pow(p, tau + beta);
  if (static_cast<double>(s.size()) > size_cap || static_cast<double>(t.size()) > size_cap) {
    throw input_error("check_flat_charsum_bound: |S| and |T| must not exceed p^(tau + beta)");
  }
  FlatBoundCheck check;
  check.sum = double_char_sum(field, s, t);
  check.bound = std::pow(p, tau) * std::sqrt(static_cast<double>(s.size() * t.size()));
  check.margin = check.bound - static_cast<double>(check.sum < 0 ? -check.sum : check.sum);
  check.pass = check.margin >= 0;
  return check;
}

}  // namespace paley
