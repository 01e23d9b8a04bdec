#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "paley/errors.hpp"
#include "paley/ff_core.hpp"

using namespace paley;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// chi by squaring every element, no sieve table involved.
int naive_chi(std::uint64_t p, std::uint64_t x) {
  if (x % p == 0) return 0;
  for (std::uint64_t y = 1; y < p; ++y)
    if (y * y % p == x % p) return 1;
  return -1;
}

std::vector<std::uint64_t> odd_primes_below(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 3; q < n; ++q)
    if (trial_division_prime(q)) out.push_back(q);
  return out;
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
  CHECK(is_prime(2305843009213693951ULL));     // 2^61 - 1
  CHECK_FALSE(is_prime(3215031751ULL));        // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime(341550071728321ULL));
  CHECK(is_prime(18446744073709551557ULL));
}

TEST_CASE("segmented sieve lists exactly the primes") {
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 900; n <= 2100; ++n)
    if (trial_division_prime(n)) expected.push_back(n);
  CHECK(primes_in_range(900, 2100) == expected);
  CHECK(primes_in_range(0, 10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_in_range(24, 28).empty());
}

TEST_CASE("field construction rejects non odd primes") {
  CHECK_THROWS_AS(PrimeField(2), input_error);
  CHECK_THROWS_AS(PrimeField(9), input_error);
  CHECK_THROWS_AS(PrimeField(1), input_error);
  CHECK(PrimeField(5).r() == 0);
  CHECK(PrimeField(7).r() == 1);
}

TEST_CASE("quadratic character small values") {
  const PrimeField f7(7);
  CHECK(quadratic_character(f7, 0) == 0);
  CHECK(quadratic_character(f7, 4) == 1);
  CHECK(quadratic_character(f7, 3) == -1);
  CHECK_THROWS_AS(quadratic_character(f7, 7), input_error);
  CHECK(quadratic_residues(f7) == std::vector<Residue>{1, 2, 4});
  CHECK(quadratic_residues(PrimeField(5)) == std::vector<Residue>{1, 4});
  CHECK(quadratic_residues(PrimeField(3)) == std::vector<Residue>{1});
  CHECK(least_nonresidue(f7) == 3);
  CHECK(least_nonresidue(PrimeField(17)) == 3);
  CHECK(least_nonresidue(PrimeField(71)) == 7);
}

TEST_CASE("character table matches squaring oracle and is balanced") {
  for (auto p : odd_primes_below(200)) {
    const PrimeField f(p);
    int plus = 0, minus = 0, total = 0;
    for (Residue x = 0; x < p; ++x) {
      const int c = quadratic_character(f, x);
      REQUIRE(c == naive_chi(p, x));
      plus += c == 1;
      minus += c == -1;
      total += c;
    }
    CHECK(plus == int(p - 1) / 2);
    CHECK(minus == int(p - 1) / 2);
    CHECK(total == 0);
    CHECK(f.chi(p - 1) == (f.r() == 0 ? 1 : -1));
  }
}

TEST_CASE("character is multiplicative for p < 200") {
  for (auto p : odd_primes_below(200)) {
    const PrimeField f(p);
    bool ok = true;
    for (Residue x = 0; x < p; ++x)
      for (Residue y = 0; y < p; ++y) ok = ok && f.chi(f.mul(x, y)) == f.chi(x) * f.chi(y);
    CHECK_MESSAGE(ok, "p = " << p);
  }
}

TEST_CASE("additive character is a homomorphism onto the unit circle") {
  const PrimeField f3(3);
  const auto w = additive_character(f3, 1);
  CHECK(std::abs(w - ComplexValue(-0.5, std::sqrt(3.0) / 2)) < 1e-12);
  CHECK(std::abs(additive_character(PrimeField(5), 0) - ComplexValue(1, 0)) < 1e-15);
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL, 101ULL}) {
    const PrimeField f(p);
    for (Residue x = 0; x < p; ++x) {
      REQUIRE(std::abs(std::abs(additive_character(f, x)) - 1.0) < 1e-12);
      for (Residue y = 0; y < p; y += 3) {
        const auto lhs = additive_character(f, f.add(x, y));
        const auto rhs = additive_character(f, x) * additive_character(f, y);
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss sums small examples") {
  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  CHECK(std::abs(gauss_sum(PrimeField(3), 1) - ComplexValue(0, s3)) < 1e-12);
  CHECK(std::abs(gauss_sum(PrimeField(5), 1) - ComplexValue(s5, 0)) < 1e-12);
  CHECK(std::abs(gauss_sum(PrimeField(5), 2) - ComplexValue(-s5, 0)) < 1e-12);
  CHECK_THROWS_AS(gauss_sum(PrimeField(5), 0), input_error);
}

TEST_CASE("gauss sum against independently evaluated closed form") {
  for (auto p : odd_primes_below(120)) {
    const PrimeField f(p);
    const ComplexValue ir = p % 4 == 1 ? ComplexValue(1, 0) : ComplexValue(0, 1);
    for (Residue a = 1; a < p; ++a) {
      const ComplexValue expected = ir * double(naive_chi(p, a)) * std::sqrt(double(p));
      REQUIRE(std::abs(gauss_sum(f, a) - expected) < 1e-9);
      REQUIRE(std::abs(gauss_sum_closed_form(f, a) - expected) < 1e-12);
    }
  }
}

TEST_CASE("modular arithmetic near 64 bits") {
  const std::uint64_t m = 18446744073709551557ULL;
  CHECK(mul_mod(m - 1, m - 1, m) == 1);
  CHECK(pow_mod(3, m - 1, m) == 1);
  const PrimeField f(1000003);
  CHECK(f.normalize(-1) == 1000002);
  CHECK(f.sub(0, 1) == 1000002);
  CHECK(f.neg(0) == 0);
}

TEST_CASE("i_power cycles") {
  CHECK(i_power(0) == ComplexValue(1, 0));
  CHECK(i_power(1) == ComplexValue(0, 1));
  CHECK(i_power(2) == ComplexValue(-1, 0));
  CHECK(i_power(-1) == ComplexValue(0, -1));
  CHECK(i_power(7) == ComplexValue(0, -1));
}
