#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "paley/charsum.hpp"
#include "paley/errors.hpp"
#include "paley/paley.hpp"
#include "paley/serialize.hpp"
#include "paley/tournament_analysis.hpp"

using namespace paley;

namespace {

// Euler's criterion; independent of the sieve table.
int euler_chi(std::uint64_t p, std::int64_t x) {
  const std::uint64_t r = std::uint64_t(((x % std::int64_t(p)) + std::int64_t(p)) % std::int64_t(p));
  if (r == 0) return 0;
  std::uint64_t acc = 1, b = r, e = (p - 1) / 2;
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

std::int64_t naive_sum(std::uint64_t p, const std::vector<Residue>& s, const std::vector<Residue>& t) {
  std::int64_t sum = 0;
  for (auto a : s)
    for (auto b : t) sum += euler_chi(p, std::int64_t(a) - std::int64_t(b));
  return sum;
}

std::vector<Residue> random_subset(std::mt19937_64& rng, std::uint64_t p) {
  std::vector<Residue> out;
  while (out.empty())
    for (Residue x = 0; x < p; ++x)
      if (rng() & 1) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("double sum examples") {
  const PrimeField f(7);
  CHECK(double_char_sum(f, std::vector<Residue>{0}, std::vector<Residue>{1}) == -1);
  const std::vector<Residue> s{0, 1, 2};
  CHECK(double_char_sum(f, s, s) == 0);
  CHECK(double_char_sum(f, std::vector<Residue>{2}, std::vector<Residue>{1, 0}) == 2);
  CHECK(self_char_sum(PrimeField(5), std::vector<Residue>{0}) == 0);
  CHECK(self_char_sum(PrimeField(13), std::vector<Residue>{0, 1, 4}) == 6);
  CHECK_THROWS_AS(double_char_sum(f, std::vector<Residue>{}, s), input_error);
  CHECK_THROWS_AS(double_char_sum(f, s, std::vector<Residue>{7}), input_error);
}

TEST_CASE("double sum matches Euler-criterion oracle and algebraic identities") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto s = random_subset(rng, p), t = random_subset(rng, p);
      const auto st = double_char_sum(f, s, t);
      REQUIRE(st == naive_sum(p, s, t));
      REQUIRE(std::abs(st) <= std::int64_t(s.size() * t.size()));
      const auto ts = double_char_sum(f, t, s);
      if (p % 4 == 3) {
        REQUIRE(st == -ts);
        REQUIRE(self_char_sum(f, s) == 0);
      } else {
        REQUIRE(st == ts);
      }
      // Split s into two disjoint halves.
      if (s.size() >= 2) {
        const std::vector<Residue> s1(s.begin(), s.begin() + s.size() / 2), s2(s.begin() + s.size() / 2, s.end());
        REQUIRE(st == double_char_sum(f, s1, t) + double_char_sum(f, s2, t));
      }
    }
  }
}

TEST_CASE("clique self sum is |S|(|S|-1)") {
  for (std::uint64_t p : {13ULL, 17ULL, 29ULL, 37ULL}) {
    const PrimeField f(p);
    const auto c = max_clique(build_paley_graph(f));
    const auto n = std::int64_t(c.witness.size());
    CHECK(self_char_sum(f, c.witness) == n * (n - 1));
  }
}

TEST_CASE("pair ratio and implied beta") {
  const PrimeField f(7);
  const auto r = evaluate_pair_ratio(f, std::vector<Residue>{2}, std::vector<Residue>{0, 1});
  CHECK(r.numerator == 2);
  CHECK(r.denominator == 2);
  CHECK(r.value() == 1.0);
  CHECK(implied_beta(7, 1.0) == 0.0);
  CHECK(implied_beta(7, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(std::abs(implied_beta(49, 1.0 / 7) - 0.5) < 1e-15);
  CHECK(pgc_min_size(7, 0.5) == 3);
  CHECK(pgc_min_size(13, 0.5) == 4);
}

TEST_CASE("exhaustive scan at p = 7 matches brute force") {
  const PrimeField f(7);
  PgcScanOptions opts;
  opts.alpha = 0.5;
  const auto report = scan_pgc_property(f, opts);
  CHECK(report.min_size == 3);

  // Brute force: all pairs of subsets with at least 3 elements.
  std::vector<std::vector<Residue>> subsets;
  for (unsigned mask = 0; mask < 128; ++mask) {
    if (__builtin_popcount(mask) < 3) continue;
    std::vector<Residue> s;
    for (Residue x = 0; x < 7; ++x)
      if (mask >> x & 1) s.push_back(x);
    subsets.push_back(s);
  }
  double worst = 0;
  for (const auto& s : subsets)
    for (const auto& t : subsets)
      worst = std::max(worst, std::abs(double(naive_sum(7, s, t))) / double(s.size() * t.size()));
  CHECK(report.sample_count == subsets.size() * subsets.size());
  CHECK(report.worst_ratio == doctest::Approx(worst).epsilon(1e-15));
  const auto again = evaluate_pair_ratio(f, report.worst_pair_witness.s, report.worst_pair_witness.t);
  CHECK(again.value() == report.worst_ratio);
  CHECK(report.worst_pair_witness.s.size() >= 3);
  CHECK(report.worst_pair_witness.t.size() >= 3);
  CHECK(report.implied_beta == doctest::Approx(-std::log(worst) / std::log(7.0)));
}

TEST_CASE("exhaustive scan respects the budget") {
  PgcScanOptions opts;
  opts.alpha = 0.5;
  opts.budget = 1000;
  CHECK_THROWS_AS(scan_pgc_property(PrimeField(11), opts), budget_exceeded);
  opts.budget = kDefaultBudget;
  CHECK_THROWS_AS(scan_pgc_property(PrimeField(101), opts), budget_exceeded);
}

TEST_CASE("sampled scan is reproducible and finds the transitive partition") {
  PgcScanOptions opts;
  opts.alpha = 0.2;
  opts.mode = SearchMode::sampled;
  opts.samples = 3000;
  opts.seed = 42;
  const PrimeField f(19);
  const auto a = scan_pgc_property(f, opts);
  opts.workers = 3;
  const auto b = scan_pgc_property(f, opts);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.adversarial_count > 0);
  CHECK(a.worst_ratio == 1.0);
  CHECK(a.implied_beta == 0.0);
  const auto again = evaluate_pair_ratio(f, a.worst_pair_witness.s, a.worst_pair_witness.t);
  CHECK(again.value() == 1.0);
  opts.seed = 43;
  CHECK(to_json(scan_pgc_property(f, opts)).dump() != to_json(a).dump());
}

TEST_CASE("diagonal pairing vanishes for p = 3 mod 4 away from injected pairs") {
  PgcScanOptions opts;
  opts.alpha = 0.5;
  opts.mode = SearchMode::sampled;
  opts.samples = 500;
  opts.seed = 5;
  opts.pairing = Pairing::diagonal;
  const auto r = scan_pgc_property(PrimeField(31), opts);
  CHECK(r.worst_ratio == 0.0);
  CHECK(std::isinf(r.implied_beta));
  CHECK(r.worst_pair_witness.s == r.worst_pair_witness.t);
}

TEST_CASE("flat character-sum bound") {
  const PrimeField f(7);
  const std::vector<Residue> s{2}, t{0, 1};
  const auto c = check_flat_charsum_bound(f, 0.49, 0.2, s, t);
  const double bound = std::pow(7.0, 0.49) * std::sqrt(2.0);
  CHECK(c.sum == 2);
  CHECK(c.bound == doctest::Approx(bound));
  CHECK(c.margin == doctest::Approx(bound - 2));
  CHECK(c.pass == (bound >= 2));
  // Trivial regime: |S||T| <= p^(2 tau) always passes.
  std::mt19937_64 rng(3);
  const PrimeField f101(101);
  for (int i = 0; i < 50; ++i) {
    std::vector<Residue> a, b;
    for (int k = 0; k < 3; ++k) a.push_back(rng() % 101), b.push_back(rng() % 101);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    REQUIRE(check_flat_charsum_bound(f101, 0.25, 0.3, a, b).pass);
  }
  CHECK_THROWS_AS(check_flat_charsum_bound(f, 0.1, 0.1, std::vector<Residue>{0, 1, 2}, t), input_error);
  CHECK_THROWS_AS(check_flat_charsum_bound(f, 0.4, 0.1, std::vector<Residue>{}, t), input_error);
}

TEST_CASE("report json round trip") {
  PgcScanOptions opts;
  opts.alpha = 0.5;
  opts.mode = SearchMode::sampled;
  opts.samples = 200;
  opts.seed = 9;
  const auto r = scan_pgc_property(PrimeField(19), opts);
  const auto j = to_json(r);
  CHECK(to_json(pgc_report_from_json(Json::parse(j.dump()))).dump() == j.dump());
}
