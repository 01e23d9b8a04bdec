#include "paley/ff_core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "paley/errors.hpp"

namespace paley {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                          17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases certify every n < 3.3e24.
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<bool> small(root + 1, true);
  std::vector<bool> segment(hi - lo + 1, true);
  for (std::uint64_t q = 2; q <= root; ++q) {
    if (!small[q]) continue;
    for (std::uint64_t m = q * q; m <= root; m += q) small[m] = false;
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t m = start; m <= hi; m += q) segment[m - lo] = false;
  }
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (segment[n - lo]) out.push_back(n);
  }
  return out;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), r_(p % 4 == 1 ? 0 : 1) {
  if (p < 3 || !is_prime(p)) {
    throw input_error("PrimeField: " + std::to_string(p) + " is not an odd prime");
  }
  if (p > kMaxTablePrime) {
    throw input_error("PrimeField: p = " + std::to_string(p) +
                      " exceeds the character-table limit");
  }
  qr_table_.assign(p, -1);
  qr_table_[0] = 0;
  for (std::uint64_t x = 1; x <= (p - 1) / 2; ++x) qr_table_[mul_mod(x, x, p)] = 1;
}

Residue PrimeField::normalize(std::int64_t x) const noexcept {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t v = x % m;
  if (v < 0) v += m;
  return static_cast<Residue>(v);
}

Residue PrimeField::add(Residue x, Residue y) const noexcept {
  Residue s = x + y;
  return s >= p_ ? s - p_ : s;
}

Residue PrimeField::sub(Residue x, Residue y) const noexcept {
  return x >= y ? x - y : x + p_ - y;
}

Residue PrimeField::neg(Residue x) const noexcept { return x == 0 ? 0 : p_ - x; }

Residue PrimeField::mul(Residue x, Residue y) const noexcept { return mul_mod(x, y, p_); }

namespace {

void check_residue(const PrimeField& field, Residue x, const char* op) {
  if (x >= field.p()) {
    throw input_error(std::string(op) + ": residue " + std::to_string(x) +
                      " out of range for p = " + std::to_string(field.p()));
  }
}

}  // namespace

int quadratic_character(const PrimeField& field, Residue x) {
  check_residue(field, x, "quadratic_character");
  return field.chi(x);
}

ComplexValue additive_character(const PrimeField& field, Residue x) {
  check_residue(field, x, "additive_character");
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(field.p());
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Residue> quadratic_residues(const PrimeField& field) {
  std::vector<Residue> out;
  out.reserve((field.p() - 1) / 2);
  for (Residue x = 1; x < field.p(); ++x) {
    if (field.chi(x) == 1) out.push_back(x);
  }
  return out;
}

Residue least_nonresidue(const PrimeField& field) {
  for (Residue x = 2; x < field.p(); ++x) {
    if (field.chi(x) == -1) return x;
  }
  return 0;  // unreachable for odd p
}

ComplexValue gauss_sum(const PrimeField& field, Residue a) {
  check_residue(field, a, "gauss_sum");
  if (a == 0) throw input_error("gauss_sum: a must be nonzero");
  ComplexValue total{0.0, 0.0};
  for (Residue x = 0; x < field.p(); ++x) {
    total += additive_character(field, field.mul(a, field.mul(x, x)));
  }
  return total;
}

ComplexValue i_power(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

ComplexValue gauss_sum_closed_form(const PrimeField& field, Residue a) {
  check_residue(field, a, "gauss_sum_closed_form");
  return i_power(field.r()) * static_cast<double>(field.chi(a)) *
         std::sqrt(static_cast<double>(field.p()));
}

}  // namespace paley
