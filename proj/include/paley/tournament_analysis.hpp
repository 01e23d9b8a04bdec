#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paley/ff_core.hpp"
#include "paley/paley.hpp"

namespace paley {

// Vertices of a transitive subtournament listed source first: every
// (vertices[i], vertices[j]) with i < j is an arc.
struct TransitiveWitness {
  std::vector<Residue> vertices;
  std::size_t size() const noexcept { return vertices.size(); }
};

struct ExtremalOptions {
  unsigned workers = 1;
  // Fix the first one (translations) or two (translations and square
  // dilations) vertices. Only honoured for Paley-built graphs/tournaments.
  bool use_symmetry = true;
};

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Residue> witness;  // ascending, lexicographically smallest maximum clique
  std::uint64_t nodes = 0;
};

struct TransitiveResult {
  TransitiveWitness witness;  // lexicographically smallest maximum in source-first order
  std::uint64_t nodes = 0;
  std::size_t size() const noexcept { return witness.size(); }
};

// Exact clique number by bitset branch and bound with a greedy colouring bound.
CliqueResult max_clique(const Graph& graph, const ExtremalOptions& options = {});

// Exact maximum transitive subtournament by chain extension.
TransitiveResult max_transitive(const Tournament& tournament, const ExtremalOptions& options = {});

// Complete search for a clique / transitive set strictly larger than `limit`.
// nullopt is a proof that none exists.
std::optional<std::vector<Residue>> find_clique_larger_than(const Graph& graph, std::size_t limit,
                                                            const ExtremalOptions& options = {});
std::optional<TransitiveWitness> find_transitive_larger_than(const Tournament& tournament,
                                                             std::size_t limit,
                                                             const ExtremalOptions& options = {});

// Deterministic greedy constructions (lower bounds for large p).
std::vector<Residue> greedy_clique(const Graph& graph);
TransitiveWitness greedy_transitive(const Tournament& tournament);

// Every transitive set of exactly `size` vertices, source-first. With
// `rooted`, only those whose first arc is (0, least element of out(0)); on a
// Paley tournament every such set is the unique affine image of a rooted one.
std::vector<TransitiveWitness> all_transitive_of_size(const Tournament& tournament, std::size_t size,
                                                      bool rooted);

// x -> a x + b applied elementwise.
std::vector<Residue> affine_image(const PrimeField& field, Residue a, Residue b,
                                  std::span<const Residue> vertices);

struct TransitivityCheck {
  bool transitive = false;
  std::vector<Residue> order;          // source-first order when transitive
  std::array<Residue, 3> cycle{};      // c0 -> c1 -> c2 -> c0 otherwise
};

TransitivityCheck is_transitive(const Tournament& tournament, std::span<const Residue> vertices);

bool is_clique(const Graph& graph, std::span<const Residue> vertices);

// True iff every earlier vertex beats every later one.
bool is_transitive_order(const Tournament& tournament, std::span<const Residue> vertices);

struct AMatrices {
  ComplexMatrix a;
  ComplexMatrix a_squared;
  bool matches_closed_form = false;
};

// Closed form of (A^2)_{jk} for 1-based j, k.
std::int64_t a_squared_closed_form(std::int64_t u, std::int64_t j, std::int64_t k);

// A_{jk} = +i (j<k), 0 (j=k), -i (j>k); A^2 by multiplication, checked entrywise.
AMatrices build_A_and_square(std::size_t u);

struct RayleighCheck {
  double bound = 0.0;              // (u^2 - 1) / 3
  double rayleigh_quotient = 0.0;  // 1^T A^2 1 / u
  std::int64_t ones_form = 0;      // 1^T A^2 1, exact
  double lambda_max = 0.0;         // of A^2
  bool verified = false;
};

RayleighCheck rayleigh_lower_bound(std::size_t u);

struct TransitiveGram {
  ComplexMatrix gram;            // G_{jk} = <phi_{u_j}, phi_{u_k}>
  double closed_form_error = 0;  // max |G - (I + A / sqrt p)|
  double lambda_min = 0;
  double lambda_max = 0;
  double a_norm = 0;             // spectral norm of A
  double deviation() const noexcept;  // max(lambda_max - 1, 1 - lambda_min)
};

// Gram of the witness's columns; throws certificate_error if W is not a
// source-first transitive order in T_p.
TransitiveGram gram_of_transitive(const PaleyMatrix& matrix, const TransitiveWitness& witness);

// delta sqrt(3p) + 1.
double rip_implied_transitive_bound(std::uint64_t p, double delta);

struct SumsetCheck {
  bool premise_holds = false;     // A + B inside Q_p u {0}
  bool inequality_holds = false;  // only meaningful when the premise holds
  std::int64_t product = 0;       // |A||B|
  std::int64_t rhs = 0;           // (p-1)/2 + |B n (-A)|
  std::int64_t slack = 0;         // rhs - product
};

SumsetCheck hp_sumset_check(const PrimeField& field, std::span<const Residue> a,
                            std::span<const Residue> b);

struct PartitionCheck {
  bool all_pass = true;
  std::optional<std::uint64_t> first_failing_x;
};

// x(u-x) <= (p-1)/2 + x for every 1 <= x <= u-1.
PartitionCheck partition_inequality_check(std::uint64_t p, std::uint64_t u);

double tabib_bound(std::uint64_t p);
double hp_clique_bound(std::uint64_t p);
double appendix_bound(std::uint64_t p);

// Integer cap implied by a real bound, tolerant to rounding (floor(b + 1e-9)).
std::uint64_t bound_floor(double bound);

enum class MeasuredKind { none, exact, lower_bound };
const char* to_string(MeasuredKind kind) noexcept;

struct BoundsLedger {
  std::uint64_t p = 0;
  double tabib_bound = 0;
  std::optional<double> hp_clique_bound;  // p = 1 mod 4
  std::optional<double> appendix_bound;   // p = 3 mod 4
  std::optional<std::size_t> measured_extremal;
  MeasuredKind measured_kind = MeasuredKind::none;
  std::vector<Residue> witness;
  // Result of the complete search for anything above the applicable bound.
  std::optional<bool> bound_certified;
  bool violation = false;
};

struct LedgerOptions {
  bool compute_exact = true;
  // Exact extremal search below this prime; above it the measured value is a
  // greedy lower bound and the bound itself is certified by complete search.
  std::uint64_t exact_limit = 100;
  unsigned workers = 1;
};

BoundsLedger bounds_ledger(const PrimeField& field, const LedgerOptions& options = {});

}  // namespace paley
