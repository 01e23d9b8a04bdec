#include "paley/rip.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "paley/errors.hpp"

namespace paley {

namespace {

// Values closer than this count as ties; the earlier candidate is kept.
constexpr double kTie = 1e-12;

std::string format_support(std::span<const std::size_t> support) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < support.size(); ++i) os << (i ? "," : "") << support[i];
  os << '}';
  return os.str();
}

ComplexMatrix select(const ComplexMatrix& gram, std::span<const std::size_t> support) {
  const auto k = static_cast<Eigen::Index>(support.size());
  ComplexMatrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      sub(a, b) = gram(static_cast<Eigen::Index>(support[a]), static_cast<Eigen::Index>(support[b]));
    }
  }
  return sub;
}

double deviation_of(const ComplexMatrix& sub, std::span<const std::size_t> support) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eigensolver did not converge on support " + format_support(support));
  }
  const auto& ev = solver.eigenvalues();
  return std::max(ev.maxCoeff() - 1.0, 1.0 - ev.minCoeff());
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::span<const std::size_t> pool_in,
                                       std::size_t k) {
  std::vector<std::size_t> pool(pool_in.begin(), pool_in.end());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_k(const ComplexMatrix& matrix, std::size_t k, const char* op) {
  // K above the row count is allowed: the Gram is then singular and delta_K >= 1.
  if (k == 0 || k > static_cast<std::size_t>(matrix.cols())) {
    throw input_error(std::string(op) + ": K must satisfy 1 <= K <= cols");
  }
}

}  // namespace

double coherence(const ComplexMatrix& matrix) {
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    const double norm = matrix.col(j).norm();
    if (std::abs(norm - 1.0) > 1e-9) {
      throw input_error("coherence: column " + std::to_string(j) + " has norm " +
                        std::to_string(norm) + ", expected 1");
    }
  }
  double mu = 0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index k = j + 1; k < matrix.cols(); ++k) {
      mu = std::max(mu, std::abs(inner(matrix.col(j), matrix.col(k))));
    }
  }
  return mu;
}

double coherence(const PaleyMatrix& matrix) { return coherence(matrix.entries()); }

double welch_bound(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || m > n) throw input_error("welch_bound: requires 1 <= M <= N");
  if (m == n) return 0.0;
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  return std::sqrt((nd - md) / (md * (nd - 1.0)));
}

ComplexMatrix gram_matrix(const ComplexMatrix& matrix) {
  return matrix.transpose() * matrix.conjugate();
}

double SupportSpectrum::deviation() const noexcept {
  return std::max(lambda_max - 1.0, 1.0 - lambda_min);
}

SupportSpectrum support_spectrum(const ComplexMatrix& matrix, std::span<const std::size_t> support) {
  for (std::size_t c : support) {
    if (c >= static_cast<std::size_t>(matrix.cols())) throw input_error("support_spectrum: column out of range");
  }
  const ComplexMatrix sub = select(gram_matrix(matrix), support);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sub);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eigensolver did not converge on support " + format_support(support));
  }
  const auto& ev = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const double scale = std::max(1.0, sub.norm());
  for (Eigen::Index idx : {Eigen::Index{0}, ev.size() - 1}) {
    const double residual = (sub * vecs.col(idx) - ev(idx) * vecs.col(idx)).norm();
    if (residual > 1e-9 * scale) {
      throw numerical_error("eigenpair residual " + std::to_string(residual) + " on support " +
                            format_support(support));
    }
  }
  return {ev(0), ev(ev.size() - 1)};
}

RipReport rip_constant_exact(const ComplexMatrix& matrix, std::size_t k,
                             const EnumerationOptions& options, std::uint64_t p) {
  check_k(matrix, k, "rip_constant_exact");
  const auto n = static_cast<std::size_t>(matrix.cols());
  const ComplexMatrix gram = gram_matrix(matrix);
  RipReport report;
  report.p = p;
  report.k = k;
  report.mode = options.mode;
  report.rng_seed = options.seed;

  struct Best {
    double delta = -1;
    std::vector<std::size_t> support;
  };

  if (options.mode == SearchMode::exhaustive) {
    const std::uint64_t total = binomial(n, k);
    if (total > options.budget) {
      throw budget_exceeded("rip_constant_exact: C(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") = " + std::to_string(total) + " supports exceed the budget of " +
                            std::to_string(options.budget) + "; use sampled mode");
    }
    const std::uint64_t shards = std::min<std::uint64_t>(total, 256);
    std::vector<Best> best(shards);
    parallel_shards(shards, options.workers, [&](std::size_t shard) {
      const std::uint64_t lo = total * shard / shards;
      const std::uint64_t hi = total * (shard + 1) / shards;
      auto support = colex_unrank(lo, k);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        const double d = deviation_of(select(gram, support), support);
        if (d > best[shard].delta + kTie) best[shard] = {d, support};
        if (rank + 1 < hi) colex_next(support, n);
      }
    });
    Best overall;
    for (auto& b : best) {
      if (b.delta > overall.delta + kTie) overall = std::move(b);
    }
    report.enumerated_count = total;
    report.delta = overall.delta;
    report.witness_support = std::move(overall.support);
  } else {
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> supports(options.samples);
    for (auto& s : supports) s = random_subset(rng, all, k);
    const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(supports.size(), 256));
    std::vector<Best> best(shards);
    parallel_shards(shards, options.workers, [&](std::size_t shard) {
      const std::size_t lo = supports.size() * shard / shards;
      const std::size_t hi = supports.size() * (shard + 1) / shards;
      for (std::size_t i = lo; i < hi; ++i) {
        const double d = deviation_of(select(gram, supports[i]), supports[i]);
        if (d > best[shard].delta + kTie) best[shard] = {d, supports[i]};
      }
    });
    Best overall;
    for (auto& b : best) {
      if (b.delta > overall.delta + kTie) overall = std::move(b);
    }
    report.enumerated_count = supports.size();
    report.delta = std::max(0.0, overall.delta);
    report.witness_support = std::move(overall.support);
    report.lower_bound_only = true;
  }
  if (!report.witness_support.empty()) {
    // Re-derive the witness through the checked eigensolver path.
    report.delta = support_spectrum(matrix, report.witness_support).deviation();
  }
  return report;
}

RipReport rip_constant_exact(const PaleyMatrix& matrix, std::size_t k, const EnumerationOptions& options) {
  return rip_constant_exact(matrix.entries(), k, options, matrix.field().p());
}

double flat_pair_value(const ComplexMatrix& matrix, std::span<const std::size_t> i_set,
                       std::span<const std::size_t> j_set) {
  if (i_set.empty() || j_set.empty()) throw input_error("flat_pair_value: I and J must be nonempty");
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(matrix.rows());
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(matrix.rows());
  for (std::size_t i : i_set) x += matrix.col(static_cast<Eigen::Index>(i));
  for (std::size_t j : j_set) y += matrix.col(static_cast<Eigen::Index>(j));
  return std::abs(inner(x, y)) / std::sqrt(static_cast<double>(i_set.size() * j_set.size()));
}

std::uint64_t flat_pair_count(std::size_t n, std::size_t k) {
  std::uint64_t ordered = 0;
  for (std::size_t a = 1; a <= k && a <= n; ++a) {
    for (std::size_t b = 1; b <= k && a + b <= n; ++b) {
      ordered += binomial(n, a) * binomial(n - a, b);
    }
  }
  return ordered / 2;
}

namespace {

struct FlatBest {
  double theta = -1;
  std::vector<std::size_t> i_set;
  std::vector<std::size_t> j_set;
};

// All J inside `allowed` (ascending, each > min I) with 1 <= |J| <= k.
void scan_j(const Eigen::VectorXcd& row_sum, std::size_t i_size, std::span<const std::size_t> allowed,
            std::size_t k, std::size_t from, std::vector<std::size_t>& j_set, ComplexValue acc,
            FlatBest& best, std::uint64_t& count) {
  for (std::size_t idx = from; idx < allowed.size(); ++idx) {
    const std::size_t j = allowed[idx];
    j_set.push_back(j);
    const ComplexValue next = acc + row_sum(static_cast<Eigen::Index>(j));
    ++count;
    const double v = std::abs(next) / std::sqrt(static_cast<double>(i_size * j_set.size()));
    if (v > best.theta + kTie) {
      best.theta = v;
      best.j_set = j_set;
      best.i_set.clear();  // filled by the caller
    }
    if (j_set.size() < k) scan_j(row_sum, i_size, allowed, k, idx + 1, j_set, next, best, count);
    j_set.pop_back();
  }
}

}  // namespace

FlatRipReport flat_rip_constant_exact(const ComplexMatrix& matrix, std::size_t k,
                                      const EnumerationOptions& options, std::uint64_t p) {
  check_k(matrix, k, "flat_rip_constant_exact");
  const auto n = static_cast<std::size_t>(matrix.cols());
  if (n < 2) throw input_error("flat_rip_constant_exact: need at least two columns");
  FlatRipReport report;
  report.p = p;
  report.k = k;
  report.mode = options.mode;
  report.rng_seed = options.seed;

  if (options.mode == SearchMode::exhaustive) {
    const std::uint64_t total = flat_pair_count(n, k);
    if (total > options.budget) {
      throw budget_exceeded("flat_rip_constant_exact: " + std::to_string(total) +
                            " disjoint pairs exceed the budget of " + std::to_string(options.budget) +
                            "; use sampled mode");
    }
    const ComplexMatrix gram = gram_matrix(matrix);
    // Every I of size 1..k, by size then colex rank.
    std::vector<std::vector<std::size_t>> i_sets;
    for (std::size_t a = 1; a <= k && a < n; ++a) {
      std::vector<std::size_t> s(a);
      std::iota(s.begin(), s.end(), std::size_t{0});
      do {
        i_sets.push_back(s);
      } while (colex_next(s, n));
    }
    const std::size_t shards = std::min<std::size_t>(i_sets.size(), 256);
    std::vector<FlatBest> best(shards);
    std::vector<std::uint64_t> counts(shards, 0);
    parallel_shards(shards, options.workers, [&](std::size_t shard) {
      const std::size_t lo = i_sets.size() * shard / shards;
      const std::size_t hi = i_sets.size() * (shard + 1) / shards;
      std::vector<std::size_t> j_set;
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const auto& i_set = i_sets[idx];
        Eigen::VectorXcd row_sum = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t i : i_set) row_sum += gram.row(static_cast<Eigen::Index>(i)).transpose();
        // J avoids I and starts after min(I), so each unordered pair appears once.
        std::vector<std::size_t> allowed;
        for (std::size_t c = i_set.front() + 1; c < n; ++c) {
          if (!std::binary_search(i_set.begin(), i_set.end(), c)) allowed.push_back(c);
        }
        FlatBest local;
        local.theta = best[shard].theta;
        scan_j(row_sum, i_set.size(), allowed, k, 0, j_set, {0.0, 0.0}, local, counts[shard]);
        if (local.theta > best[shard].theta + kTie) {
          local.i_set = i_set;
          best[shard] = std::move(local);
        }
      }
    });
    FlatBest overall;
    for (auto& b : best) {
      if (b.theta > overall.theta + kTie) overall = std::move(b);
    }
    std::uint64_t counted = 0;
    for (auto c : counts) counted += c;
    if (counted != total) throw numerical_error("flat_rip_constant_exact: pair enumeration mismatch");
    report.enumerated_count = total;
    report.witness_i = std::move(overall.i_set);
    report.witness_j = std::move(overall.j_set);
  } else {
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const std::size_t max_size = std::min(k, n - 1);
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs(options.samples);
    for (auto& [i_set, j_set] : pairs) {
      std::uniform_int_distribution<std::size_t> size_i(1, max_size);
      i_set = random_subset(rng, all, size_i(rng));
      std::vector<std::size_t> rest;
      std::set_difference(all.begin(), all.end(), i_set.begin(), i_set.end(), std::back_inserter(rest));
      std::uniform_int_distribution<std::size_t> size_j(1, std::min(k, rest.size()));
      j_set = random_subset(rng, rest, size_j(rng));
    }
    const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(pairs.size(), 256));
    std::vector<FlatBest> best(shards);
    parallel_shards(shards, options.workers, [&](std::size_t shard) {
      const std::size_t lo = pairs.size() * shard / shards;
      const std::size_t hi = pairs.size() * (shard + 1) / shards;
      for (std::size_t i = lo; i < hi; ++i) {
        const double v = flat_pair_value(matrix, pairs[i].first, pairs[i].second);
        if (v > best[shard].theta + kTie) best[shard] = {v, pairs[i].first, pairs[i].second};
      }
    });
    FlatBest overall;
    for (auto& b : best) {
      if (b.theta > overall.theta + kTie) overall = std::move(b);
    }
    report.enumerated_count = pairs.size();
    report.witness_i = std::move(overall.i_set);
    report.witness_j = std::move(overall.j_set);
    report.lower_bound_only = true;
  }
  report.theta = report.witness_i.empty()
                     ? 0.0
                     : flat_pair_value(matrix, report.witness_i, report.witness_j);
  return report;
}

FlatRipReport flat_rip_constant_exact(const PaleyMatrix& matrix, std::size_t k,
                                      const EnumerationOptions& options) {
  return flat_rip_constant_exact(matrix.entries(), k, options, matrix.field().p());
}

double flat_to_rip_delta(std::size_t k, double theta) {
  if (k < 2) throw input_error("flat_to_rip_delta: K must be at least 2");
  if (theta < 0) throw input_error("flat_to_rip_delta: theta must be non-negative");
  return 150.0 * theta * std::log(static_cast<double>(k));
}

LastColumnCorrection last_column_correction(const PaleyMatrix& matrix,
                                            std::span<const std::size_t> columns) {
  if (columns.empty()) throw input_error("last_column_correction: I must be nonempty");
  const std::size_t spike = matrix.spike_column();
  std::vector<std::size_t> sorted(columns.begin(), columns.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.back() >= spike) {
    throw input_error("last_column_correction: I must be distinct field columns");
  }
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(matrix.rows()));
  for (std::size_t c : sorted) sum += matrix.entries().col(static_cast<Eigen::Index>(c));
  LastColumnCorrection out;
  out.value = std::abs(inner(sum, matrix.entries().col(static_cast<Eigen::Index>(spike))));
  out.bound = static_cast<double>(sorted.size()) / std::sqrt(static_cast<double>(matrix.field().p()));
  out.within_bound = out.value <= out.bound + 1e-12;
  return out;
}

}  // namespace paley
