#include "paley/tournament_analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "paley/combinatorics.hpp"
#include "paley/errors.hpp"

namespace paley {

namespace {

std::vector<Residue> to_residues(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

Bitset all_vertices(std::size_t n) {
  Bitset b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i);
  return b;
}

// ---------------------------------------------------------------- cliques

struct Colouring {
  std::vector<std::size_t> order;
  std::vector<std::size_t> colour;
};

// Greedy sequential colouring in ascending vertex order; colour[i] is an
// upper bound on the clique number of the prefix order[0..i].
void colour_candidates(const Graph& g, const Bitset& candidates, Colouring& out) {
  out.order.clear();
  out.colour.clear();
  Bitset uncoloured = candidates;
  std::size_t k = 0;
  const std::size_t n = g.order();
  while (!uncoloured.none()) {
    ++k;
    Bitset q = uncoloured;
    for (std::size_t v = q.next(0); v < n; v = q.next(v + 1)) {
      out.order.push_back(v);
      out.colour.push_back(k);
      uncoloured.reset(v);
      q.subtract(g.neighbours(v));
    }
  }
}

class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, std::size_t initial_best, bool stop_on_improvement)
      : g_(g), best_(initial_best), stop_on_improvement_(stop_on_improvement) {}

  void expand(std::vector<std::size_t>& clique, Bitset candidates) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    Colouring c;
    colour_candidates(g_, candidates, c);
    for (std::size_t i = c.order.size(); i-- > 0;) {
      if (found_) return;
      if (clique.size() + c.colour[i] <= best_.load()) return;
      const std::size_t v = c.order[i];
      clique.push_back(v);
      Bitset next = candidates & g_.neighbours(v);
      if (next.none()) {
        record(clique);
      } else {
        expand(clique, std::move(next));
      }
      clique.pop_back();
      candidates.reset(v);
    }
  }

  // Root-level branches as independent shards.
  void run(const std::vector<std::size_t>& root, const Bitset& candidates, unsigned workers) {
    if (root.size() > best_.load()) record(root);
    Colouring c;
    colour_candidates(g_, candidates, c);
    const std::size_t m = c.order.size();
    std::vector<Bitset> branch_candidates(m);
    Bitset remaining = candidates;
    for (std::size_t i = m; i-- > 0;) {
      branch_candidates[i] = remaining & g_.neighbours(c.order[i]);
      remaining.reset(c.order[i]);
    }
    parallel_shards(m, workers, [&](std::size_t shard) {
      const std::size_t i = m - 1 - shard;
      if (found_ || root.size() + c.colour[i] <= best_.load()) return;
      std::vector<std::size_t> clique = root;
      clique.push_back(c.order[i]);
      if (branch_candidates[i].none()) {
        record(clique);
      } else {
        expand(clique, branch_candidates[i]);
      }
    });
  }

  std::size_t best() const { return best_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  std::optional<std::vector<std::size_t>> improvement() const {
    std::lock_guard lock(mutex_);
    return improvement_;
  }

 private:
  void record(const std::vector<std::size_t>& clique) {
    if (clique.size() <= best_.load()) return;
    std::lock_guard lock(mutex_);
    if (clique.size() <= best_.load()) return;
    best_.store(clique.size());
    improvement_ = clique;
    if (stop_on_improvement_) found_ = true;
  }

  const Graph& g_;
  std::atomic<std::size_t> best_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> found_{false};
  bool stop_on_improvement_;
  mutable std::mutex mutex_;
  std::optional<std::vector<std::size_t>> improvement_;
};

std::size_t colour_count(const Graph& g, const Bitset& candidates) {
  Colouring c;
  colour_candidates(g, candidates, c);
  return c.colour.empty() ? 0 : c.colour.back();
}

// Smallest clique in ascending-list order that extends `clique` to `target`.
bool lex_first_clique(const Graph& g, std::vector<std::size_t>& clique, Bitset candidates,
                      std::size_t target) {
  if (clique.size() == target) return true;
  if (clique.size() + candidates.count() < target) return false;
  if (clique.size() + colour_count(g, candidates) < target) return false;
  const std::size_t n = g.order();
  for (std::size_t v = candidates.next(0); v < n; v = candidates.next(v + 1)) {
    candidates.reset(v);
    Bitset next = candidates & g.neighbours(v);
    if (clique.size() + 1 + next.count() >= target) {
      clique.push_back(v);
      if (lex_first_clique(g, clique, std::move(next), target)) return true;
      clique.pop_back();
    }
    if (clique.size() + candidates.count() < target) return false;
  }
  return false;
}

struct CliqueRoot {
  std::vector<std::size_t> clique;
  Bitset candidates;
};

CliqueRoot clique_root(const Graph& g, const ExtremalOptions& options) {
  const std::size_t n = g.order();
  if (options.use_symmetry && g.paley_prime() != 0 && n >= 5) {
    // Translations fix vertex 0; square dilations act transitively on N(0) = Q_p, which holds 1.
    return {{0, 1}, g.neighbours(0) & g.neighbours(1)};
  }
  return {{}, all_vertices(n)};
}

// ------------------------------------------------------------- tournaments

// Largest m such that some m vertices could carry out-degrees m-1, ..., 0
// (and in-degrees 0, ..., m-1) inside the candidate set.
std::size_t degree_sequence_bound(std::vector<std::size_t> out_deg, std::size_t m) {
  std::vector<std::size_t> in_deg(out_deg.size());
  for (std::size_t i = 0; i < out_deg.size(); ++i) in_deg[i] = m - 1 - out_deg[i];
  auto cap = [](std::vector<std::size_t>& d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    std::size_t best = 0;
    std::size_t running = SIZE_MAX;
    for (std::size_t i = 1; i <= d.size(); ++i) {
      running = std::min(running, d[i - 1] + i);
      if (running < i) break;
      best = i;
    }
    return best;
  };
  return std::min(cap(out_deg), cap(in_deg));
}

struct Candidate {
  std::size_t vertex;
  std::size_t out_degree;
};

// Candidates with their out-degree inside the set, ordered by descending
// out-degree then ascending residue.
std::vector<Candidate> rank_candidates(const Tournament& t, const Bitset& set) {
  std::vector<Candidate> out;
  set.for_each([&](std::size_t v) { out.push_back({v, set.and_count(t.out_neighbours(v))}); });
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.out_degree != b.out_degree ? a.out_degree > b.out_degree : a.vertex < b.vertex;
  });
  return out;
}

std::size_t candidate_bound(const std::vector<Candidate>& ranked) {
  std::vector<std::size_t> deg(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) deg[i] = ranked[i].out_degree;
  return degree_sequence_bound(std::move(deg), ranked.size());
}

class TransitiveSearch {
 public:
  TransitiveSearch(const Tournament& t, std::size_t initial_best, bool stop_on_improvement)
      : t_(t), best_(initial_best), stop_on_improvement_(stop_on_improvement) {}

  void expand(std::vector<std::size_t>& chain, const Bitset& extension) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    record(chain);
    if (found_) return;
    const std::size_t m = extension.count();
    if (m == 0 || chain.size() + m <= best_.load()) return;
    const auto ranked = rank_candidates(t_, extension);
    if (chain.size() + candidate_bound(ranked) <= best_.load()) return;
    for (const auto& c : ranked) {
      if (found_ || chain.size() + 1 + c.out_degree <= best_.load()) return;
      chain.push_back(c.vertex);
      expand(chain, extension & t_.out_neighbours(c.vertex));
      chain.pop_back();
    }
  }

  void run(const std::vector<std::size_t>& root, const Bitset& extension, unsigned workers) {
    record(root);
    const auto ranked = rank_candidates(t_, extension);
    parallel_shards(ranked.size(), workers, [&](std::size_t shard) {
      const auto& c = ranked[shard];
      if (found_ || root.size() + 1 + c.out_degree <= best_.load()) return;
      std::vector<std::size_t> chain = root;
      chain.push_back(c.vertex);
      expand(chain, extension & t_.out_neighbours(c.vertex));
    });
  }

  std::size_t best() const { return best_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  std::optional<std::vector<std::size_t>> improvement() const {
    std::lock_guard lock(mutex_);
    return improvement_;
  }

 private:
  void record(const std::vector<std::size_t>& chain) {
    if (chain.size() <= best_.load()) return;
    std::lock_guard lock(mutex_);
    if (chain.size() <= best_.load()) return;
    best_.store(chain.size());
    improvement_ = chain;
    if (stop_on_improvement_) found_ = true;
  }

  const Tournament& t_;
  std::atomic<std::size_t> best_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> found_{false};
  bool stop_on_improvement_;
  mutable std::mutex mutex_;
  std::optional<std::vector<std::size_t>> improvement_;
};

bool lex_first_transitive(const Tournament& t, std::vector<std::size_t>& chain,
                          const Bitset& extension, std::size_t target) {
  if (chain.size() == target) return true;
  const std::size_t need = target - chain.size();
  if (extension.count() < need) return false;
  const std::size_t n = t.order();
  for (std::size_t v = extension.next(0); v < n; v = extension.next(v + 1)) {
    Bitset next = extension & t.out_neighbours(v);
    if (next.count() + 1 < need) continue;
    chain.push_back(v);
    if (lex_first_transitive(t, chain, next, target)) return true;
    chain.pop_back();
  }
  return false;
}

struct ChainRoot {
  std::vector<std::size_t> chain;
  Bitset extension;
};

bool symmetric_tournament(const Tournament& t, const ExtremalOptions& options) {
  return options.use_symmetry && t.paley_prime() != 0 && t.order() >= 3;
}

ChainRoot chain_root(const Tournament& t, bool symmetric) {
  const std::size_t n = t.order();
  if (symmetric) {
    // Every arc is an affine image of (0, n0) with n0 the least out-neighbour of 0.
    const std::size_t second = t.out_neighbours(0).next(0);
    return {{0, second}, t.out_neighbours(0) & t.out_neighbours(second)};
  }
  return {{}, all_vertices(n)};
}

void collect_chains(const Tournament& t, std::vector<std::size_t>& chain, const Bitset& extension,
                    std::size_t target, std::vector<TransitiveWitness>& out) {
  if (chain.size() == target) {
    out.push_back({to_residues(chain)});
    return;
  }
  if (chain.size() + extension.count() < target) return;
  extension.for_each([&](std::size_t v) {
    chain.push_back(v);
    collect_chains(t, chain, extension & t.out_neighbours(v), target, out);
    chain.pop_back();
  });
}

}  // namespace

CliqueResult max_clique(const Graph& graph, const ExtremalOptions& options) {
  CliqueResult result;
  if (graph.order() == 0) return result;
  auto root = clique_root(graph, options);
  CliqueSearch search(graph, 0, false);
  search.run(root.clique, root.candidates, options.workers);
  result.size = search.best();
  result.nodes = search.nodes();
  std::vector<std::size_t> witness = root.clique;
  if (!lex_first_clique(graph, witness, root.candidates, result.size)) {
    throw certificate_error("max_clique: witness reconstruction failed");
  }
  result.witness = to_residues(witness);
  if (!is_clique(graph, result.witness)) throw certificate_error("max_clique: witness is not a clique");
  return result;
}

TransitiveResult max_transitive(const Tournament& tournament, const ExtremalOptions& options) {
  TransitiveResult result;
  if (tournament.order() == 0) return result;
  const bool symmetric = symmetric_tournament(tournament, options);
  auto root = chain_root(tournament, symmetric);
  TransitiveSearch search(tournament, 0, false);
  search.run(root.chain, root.extension, options.workers);
  result.nodes = search.nodes();
  std::vector<std::size_t> witness = root.chain;
  if (!lex_first_transitive(tournament, witness, root.extension, search.best())) {
    throw certificate_error("max_transitive: witness reconstruction failed");
  }
  result.witness.vertices = to_residues(witness);
  if (!is_transitive_order(tournament, result.witness.vertices)) {
    throw certificate_error("max_transitive: witness is not transitive");
  }
  return result;
}

std::optional<std::vector<Residue>> find_clique_larger_than(const Graph& graph, std::size_t limit,
                                                            const ExtremalOptions& options) {
  auto root = clique_root(graph, options);
  if (root.clique.size() > limit) return to_residues(root.clique);
  CliqueSearch search(graph, limit, true);
  search.run(root.clique, root.candidates, options.workers);
  if (auto found = search.improvement()) {
    auto w = to_residues(*found);
    std::sort(w.begin(), w.end());
    return w;
  }
  return std::nullopt;
}

std::optional<TransitiveWitness> find_transitive_larger_than(const Tournament& tournament,
                                                             std::size_t limit,
                                                             const ExtremalOptions& options) {
  auto root = chain_root(tournament, symmetric_tournament(tournament, options));
  if (root.chain.size() > limit) return TransitiveWitness{to_residues(root.chain)};
  TransitiveSearch search(tournament, limit, true);
  search.run(root.chain, root.extension, options.workers);
  if (auto found = search.improvement()) return TransitiveWitness{to_residues(*found)};
  return std::nullopt;
}

std::vector<Residue> greedy_clique(const Graph& graph) {
  const std::size_t n = graph.order();
  if (n == 0) return {};
  auto grow = [&](std::vector<std::size_t> clique, Bitset cand) {
    while (!cand.none()) {
      std::size_t pick = n;
      std::size_t pick_deg = 0;
      cand.for_each([&](std::size_t v) {
        const std::size_t d = cand.and_count(graph.neighbours(v));
        if (pick == n || d > pick_deg) {
          pick = v;
          pick_deg = d;
        }
      });
      clique.push_back(pick);
      cand &= graph.neighbours(pick);
    }
    return clique;
  };
  Bitset start = graph.neighbours(0);
  std::vector<std::size_t> best = {0};
  // Try every first neighbour of 0, then extend greedily.
  start.for_each([&](std::size_t v) {
    auto c = grow({0, v}, start & graph.neighbours(v));
    if (c.size() > best.size()) best = std::move(c);
  });
  auto out = to_residues(best);
  std::sort(out.begin(), out.end());
  return out;
}

TransitiveWitness greedy_transitive(const Tournament& tournament) {
  const std::size_t n = tournament.order();
  if (n == 0) return {};
  auto grow = [&](std::vector<std::size_t> chain, Bitset ext) {
    while (!ext.none()) {
      const auto ranked = rank_candidates(tournament, ext);
      chain.push_back(ranked.front().vertex);
      ext &= tournament.out_neighbours(ranked.front().vertex);
    }
    return chain;
  };
  const Bitset& first = tournament.out_neighbours(0);
  std::vector<std::size_t> best = {0};
  first.for_each([&](std::size_t v) {
    auto c = grow({0, v}, first & tournament.out_neighbours(v));
    if (c.size() > best.size()) best = std::move(c);
  });
  return {to_residues(best)};
}

std::vector<TransitiveWitness> all_transitive_of_size(const Tournament& tournament, std::size_t size,
                                                      bool rooted) {
  std::vector<TransitiveWitness> out;
  if (rooted && (size < 2 || tournament.order() < 3)) {
    throw input_error("all_transitive_of_size: rooted enumeration needs size >= 2");
  }
  auto root = chain_root(tournament, rooted);
  collect_chains(tournament, root.chain, root.extension, size, out);
  return out;
}

std::vector<Residue> affine_image(const PrimeField& field, Residue a, Residue b,
                                  std::span<const Residue> vertices) {
  std::vector<Residue> out;
  out.reserve(vertices.size());
  for (Residue v : vertices) out.push_back(field.add(field.mul(a, v), b));
  return out;
}

bool is_clique(const Graph& graph, std::span<const Residue> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!graph.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

bool is_transitive_order(const Tournament& tournament, std::span<const Residue> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= tournament.order()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!tournament.arc(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

TransitivityCheck is_transitive(const Tournament& tournament, std::span<const Residue> vertices) {
  std::vector<Residue> set(vertices.begin(), vertices.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (Residue v : set) {
    if (v >= tournament.order()) throw input_error("is_transitive: vertex out of range");
  }
  std::vector<std::size_t> score(set.size(), 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (i != j && tournament.arc(set[i], set[j])) ++score[i];
    }
  }
  TransitivityCheck check;
  std::vector<std::size_t> idx(set.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return score[a] != score[b] ? score[a] > score[b] : set[a] < set[b];
  });
  for (std::size_t i : idx) check.order.push_back(set[i]);
  if (is_transitive_order(tournament, check.order)) {
    check.transitive = true;
    return check;
  }
  check.order.clear();
  // Some arc x -> y has score(x) <= score(y); then out(y) \ out(x) holds a z with z -> x.
  for (std::size_t x = 0; x < set.size(); ++x) {
    for (std::size_t y = 0; y < set.size(); ++y) {
      if (x == y || !tournament.arc(set[x], set[y]) || score[x] > score[y]) continue;
      for (std::size_t z = 0; z < set.size(); ++z) {
        if (z != x && z != y && tournament.arc(set[y], set[z]) && tournament.arc(set[z], set[x])) {
          check.cycle = {set[x], set[y], set[z]};
          return check;
        }
      }
    }
  }
  throw certificate_error("is_transitive: no 3-cycle found in a non-transitive set");
}

std::int64_t a_squared_closed_form(std::int64_t u, std::int64_t j, std::int64_t k) {
  if (j == k) return u - 1;
  if (j < k) return u + 2 * (j - k);
  return u + 2 * (k - j);
}

AMatrices build_A_and_square(std::size_t u) {
  if (u == 0) throw input_error("build_A_and_square: u must be positive");
  const auto n = static_cast<Eigen::Index>(u);
  AMatrices out;
  out.a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j < k) out.a(j, k) = ComplexValue(0, 1);
      if (j > k) out.a(j, k) = ComplexValue(0, -1);
    }
  }
  out.a_squared = out.a * out.a;
  out.matches_closed_form = true;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexValue expected(
          static_cast<double>(a_squared_closed_form(static_cast<std::int64_t>(u), j + 1, k + 1)), 0.0);
      if (out.a_squared(j, k) != expected) out.matches_closed_form = false;
    }
  }
  return out;
}

RayleighCheck rayleigh_lower_bound(std::size_t u) {
  if (u == 0) throw input_error("rayleigh_lower_bound: u must be positive");
  const auto a = build_A_and_square(u);
  RayleighCheck check;
  const auto uu = static_cast<double>(u);
  check.bound = (uu * uu - 1.0) / 3.0;
  std::int64_t total = 0;
  for (Eigen::Index j = 0; j < a.a_squared.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.a_squared.cols(); ++k) {
      total += static_cast<std::int64_t>(std::llround(a.a_squared(j, k).real()));
    }
  }
  check.ones_form = total;
  check.rayleigh_quotient = static_cast<double>(total) / uu;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.a_squared, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numerical_error("rayleigh_lower_bound: eigensolver failed");
  check.lambda_max = solver.eigenvalues().maxCoeff();
  check.verified = check.lambda_max >= check.bound - 1e-9 &&
                   std::abs(check.rayleigh_quotient - check.bound) < 1e-9;
  return check;
}

double TransitiveGram::deviation() const noexcept {
  return std::max(lambda_max - 1.0, 1.0 - lambda_min);
}

TransitiveGram gram_of_transitive(const PaleyMatrix& matrix, const TransitiveWitness& witness) {
  const PrimeField& field = matrix.field();
  const auto& w = witness.vertices;
  if (w.empty()) throw input_error("gram_of_transitive: empty witness");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= field.p()) throw certificate_error("gram_of_transitive: vertex out of range");
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (field.chi_diff(w[i], w[j]) != 1) {
        throw certificate_error("gram_of_transitive: (" + std::to_string(w[i]) + ", " +
                                std::to_string(w[j]) + ") is not an arc of T_p");
      }
    }
  }
  const auto u = static_cast<Eigen::Index>(w.size());
  TransitiveGram out;
  out.gram.resize(u, u);
  for (Eigen::Index j = 0; j < u; ++j) {
    for (Eigen::Index k = 0; k < u; ++k) {
      out.gram(j, k) = inner(matrix.entries().col(static_cast<Eigen::Index>(matrix.column_of(w[j]))),
                             matrix.entries().col(static_cast<Eigen::Index>(matrix.column_of(w[k]))));
    }
  }
  const auto a = build_A_and_square(w.size());
  const ComplexMatrix expected =
      ComplexMatrix::Identity(u, u) + a.a / std::sqrt(static_cast<double>(field.p()));
  out.closed_form_error = (out.gram - expected).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram_solver(out.gram, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> a_solver(a.a, Eigen::EigenvaluesOnly);
  if (gram_solver.info() != Eigen::Success || a_solver.info() != Eigen::Success) {
    throw numerical_error("gram_of_transitive: eigensolver failed");
  }
  out.lambda_min = gram_solver.eigenvalues().minCoeff();
  out.lambda_max = gram_solver.eigenvalues().maxCoeff();
  out.a_norm = a_solver.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

double rip_implied_transitive_bound(std::uint64_t p, double delta) {
  if (delta < 0) throw input_error("rip_implied_transitive_bound: delta must be non-negative");
  return delta * std::sqrt(3.0 * static_cast<double>(p)) + 1.0;
}

SumsetCheck hp_sumset_check(const PrimeField& field, std::span<const Residue> a,
                            std::span<const Residue> b) {
  if (a.empty() || b.empty()) throw input_error("hp_sumset_check: sets must be nonempty");
  for (auto s : {a, b}) {
    for (Residue x : s) {
      if (x >= field.p()) throw input_error("hp_sumset_check: residue out of range");
    }
  }
  // Inputs are small, so quadratic scans beat sorting copies; repeated
  // elements are counted once.
  auto first_occurrence = [](std::span<const Residue> s, std::size_t i) {
    return std::find(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i), s[i]) ==
           s.begin() + static_cast<std::ptrdiff_t>(i);
  };
  SumsetCheck check;
  check.premise_holds = true;
  std::int64_t size_a = 0, size_b = 0, common = 0;
  for (std::size_t i = 0; i < a.size(); ++i) size_a += first_occurrence(a, i);
  for (std::size_t j = 0; j < b.size(); ++j) {
    bool negated = false;
    for (Residue x : a) {
      const Residue sum = field.add(x, b[j]);
      if (field.chi(sum) == -1) check.premise_holds = false;
      negated = negated || sum == 0;
    }
    if (first_occurrence(b, j)) {
      ++size_b;
      common += negated;
    }
  }
  check.product = size_a * size_b;
  check.rhs = static_cast<std::int64_t>((field.p() - 1) / 2) + common;
  check.slack = check.rhs - check.product;
  check.inequality_holds = check.premise_holds && check.product <= check.rhs;
  return check;
}


PartitionCheck partition_inequality_check(std::uint64_t p, std::uint64_t u) {
  if (u < 2) throw input_error("partition_inequality_check: u must be at least 2");
  PartitionCheck check;
  for (std::uint64_t x = 1; x < u; ++x) {
    // 2 x (u - x) <= (p - 1) + 2x, in integers.
    if (2 * x * (u - x) > (p - 1) + 2 * x) {
      check.all_pass = false;
      check.first_failing_x = x;
      break;
    }
  }
  return check;
}

double tabib_bound(std::uint64_t p) { return -1.5 + std::sqrt(3.0 * static_cast<double>(p) + 3.25); }
double hp_clique_bound(std::uint64_t p) { return std::sqrt(static_cast<double>(p) / 2.0) + 1.0; }
double appendix_bound(std::uint64_t p) { return 1.0 + std::sqrt(2.0 * static_cast<double>(p) - 1.0); }

std::uint64_t bound_floor(double bound) {
  return bound < 0 ? 0 : static_cast<std::uint64_t>(std::floor(bound + 1e-9));
}

const char* to_string(MeasuredKind kind) noexcept {
  switch (kind) {
    case MeasuredKind::exact: return "exact";
    case MeasuredKind::lower_bound: return "lower_bound";
    default: return "none";
  }
}

BoundsLedger bounds_ledger(const PrimeField& field, const LedgerOptions& options) {
  BoundsLedger ledger;
  const std::uint64_t p = field.p();
  ledger.p = p;
  ledger.tabib_bound = tabib_bound(p);
  ExtremalOptions search{options.workers, true};
  if (field.r() == 0) {
    ledger.hp_clique_bound = hp_clique_bound(p);
    if (!options.compute_exact) return ledger;
    const auto cap = bound_floor(*ledger.hp_clique_bound);
    const Graph g = build_paley_graph(field);
    if (p < options.exact_limit) {
      auto res = max_clique(g, search);
      ledger.measured_extremal = res.size;
      ledger.measured_kind = MeasuredKind::exact;
      ledger.witness = res.witness;
      ledger.bound_certified = res.size <= cap;
    } else {
      ledger.witness = greedy_clique(g);
      ledger.measured_extremal = ledger.witness.size();
      ledger.measured_kind = MeasuredKind::lower_bound;
      auto above = find_clique_larger_than(g, cap, search);
      ledger.bound_certified = !above.has_value();
      if (above) {
        ledger.witness = *above;
        ledger.measured_extremal = above->size();
      }
    }
  } else {
    ledger.appendix_bound = appendix_bound(p);
    if (!options.compute_exact) return ledger;
    const auto cap = bound_floor(std::min(ledger.tabib_bound, *ledger.appendix_bound));
    const Tournament t = build_paley_tournament(field);
    if (p < options.exact_limit) {
      auto res = max_transitive(t, search);
      ledger.measured_extremal = res.size();
      ledger.measured_kind = MeasuredKind::exact;
      ledger.witness = res.witness.vertices;
      ledger.bound_certified = res.size() <= cap;
    } else {
      ledger.witness = greedy_transitive(t).vertices;
      ledger.measured_extremal = ledger.witness.size();
      ledger.measured_kind = MeasuredKind::lower_bound;
      auto above = find_transitive_larger_than(t, cap, search);
      ledger.bound_certified = !above.has_value();
      if (above) {
        ledger.witness = above->vertices;
        ledger.measured_extremal = above->size();
      }
    }
  }
  ledger.violation = ledger.bound_certified.has_value() && !*ledger.bound_certified;
  return ledger;
}

}  // namespace paley
