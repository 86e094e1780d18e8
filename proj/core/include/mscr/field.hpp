#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscr/errors.hpp"

namespace mscr {

/// A field element, stored canonically in [0, p).
using Symbol = std::uint32_t;

/// Arithmetic in the prime field Z/pZ. Cheap value type; every operation is
/// a pure function, so instances can be shared freely between threads.
class PrimeField {
 public:
  /// Rejects non-primes and p < 3. Moduli are capped at 2^31 - 1 so that
  /// products fit a 64-bit intermediate with room to spare.
  explicit PrimeField(Symbol modulus);

  Symbol modulus() const { return p_; }

  Symbol add(Symbol a, Symbol b) const {
    Symbol s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  Symbol sub(Symbol a, Symbol b) const { return a >= b ? a - b : a + p_ - b; }

  Symbol neg(Symbol a) const { return a == 0 ? 0 : p_ - a; }

  Symbol mul(Symbol a, Symbol b) const {
    return static_cast<Symbol>((static_cast<std::uint64_t>(a) * b) % p_);
  }

  /// Multiplicative inverse via extended Euclid. Throws FieldError on 0.
  Symbol inv(Symbol a) const;

  /// Square-and-multiply; pow(0, 0) = 1.
  Symbol pow(Symbol base, std::uint64_t exp) const;

  Symbol reduce(std::uint64_t v) const { return static_cast<Symbol>(v % p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  Symbol p_;
};

bool is_prime(std::uint64_t n);

/// The arithmetic world of one code instance: a prime modulus plus the
/// evaluation points alpha_1..alpha_n. Points are distinct nonzero residues
/// whose mu-th powers are pairwise distinct; construction enforces this.
class FieldSpec {
 public:
  FieldSpec(PrimeField field, std::vector<Symbol> points, std::uint64_t power_exponent);

  const PrimeField& field() const { return field_; }
  std::span<const Symbol> points() const { return points_; }
  std::uint64_t power_exponent() const { return mu_; }

  /// Evaluation point of a 1-based node index.
  Symbol point(std::uint32_t node) const;

  bool operator==(const FieldSpec&) const = default;

 private:
  PrimeField field_;
  std::vector<Symbol> points_;
  std::uint64_t mu_;
};

/// Smallest odd prime p >= max(min_modulus, n_points + 1) over which
/// n_points evaluation points with distinct mu-th powers exist. Primes with
/// gcd(mu, p-1) = 1 qualify outright (x -> x^mu is then a bijection); other
/// primes qualify when the residues 1..p-1 still contain n_points distinct
/// mu-th powers, which is what makes even exponents solvable at all.
Symbol select_modulus(std::size_t n_points, std::uint64_t mu, Symbol min_modulus);

/// Point selection for a fixed modulus: 1..n_points when gcd(mu, p-1) = 1,
/// otherwise a greedy scan of 1..p-1 keeping each residue whose mu-th power
/// has not been seen. Throws FieldError when fewer than n_points are found.
std::vector<Symbol> select_points(const PrimeField& field, std::size_t n_points, std::uint64_t mu);

/// select_modulus + select_points in one step.
FieldSpec make_field_spec(std::size_t n_points, std::uint64_t mu, Symbol min_modulus = 2);

/// Point selection over a caller-pinned modulus.
FieldSpec make_field_spec_pinned(Symbol modulus, std::size_t n_points, std::uint64_t mu);

}  // namespace mscr
