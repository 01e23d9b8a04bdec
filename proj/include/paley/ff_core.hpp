#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace paley {

using Residue = std::uint64_t;
using ComplexValue = std::complex<double>;

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// All primes in [lo, hi], ascending (segment sieve).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// The prime field F_p together with its quadratic character table.
///
/// Residues are canonical representatives 0..p-1; the `normalize` helpers
/// map signed or oversized integers onto that range. The character table is
/// built once from a squares sieve, so chi() is a single lookup.
class PrimeField {
 public:
  // Largest prime for which the O(p) character table is allocated.
  static constexpr std::uint64_t kMaxTablePrime = std::uint64_t{1} << 31;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  // 0 iff p = 1 mod 4.
  int r() const noexcept { return r_; }

  Residue normalize(std::int64_t x) const noexcept;
  Residue add(Residue x, Residue y) const noexcept;
  Residue sub(Residue x, Residue y) const noexcept;
  Residue neg(Residue x) const noexcept;
  Residue mul(Residue x, Residue y) const noexcept;

  // Unchecked character lookup; x must already be canonical.
  int chi(Residue x) const noexcept { return qr_table_[x]; }
  // chi(x - y) without bounds checks.
  int chi_diff(Residue x, Residue y) const noexcept {
    return qr_table_[x >= y ? x - y : x + p_ - y];
  }

  std::span<const std::int8_t> qr_table() const noexcept { return qr_table_; }

 private:
  std::uint64_t p_;
  int r_;
  std::vector<std::int8_t> qr_table_;
};

// chi(x): 0, +1 on nonzero squares, -1 otherwise. Throws input_error unless 0 <= x < p.
int quadratic_character(const PrimeField& field, Residue x);

// psi(x) = exp(2 pi i x / p).
ComplexValue additive_character(const PrimeField& field, Residue x);

// Q_p ascending; length (p-1)/2.
std::vector<Residue> quadratic_residues(const PrimeField& field);

// Smallest quadratic non-residue.
Residue least_nonresidue(const PrimeField& field);

// sum_x psi(a x^2) by direct summation. a must be nonzero.
ComplexValue gauss_sum(const PrimeField& field, Residue a);

// (i)^r chi(a) sqrt(p).
ComplexValue gauss_sum_closed_form(const PrimeField& field, Residue a);

// i^k for integer k (exact unit values).
ComplexValue i_power(int k) noexcept;

}  // namespace paley
