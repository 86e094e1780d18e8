#include "mscr/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace mscr {

namespace {

constexpr Symbol kMaxModulus = 0x7fffffffu;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(Symbol modulus) : p_(modulus) {
  if (modulus < 3 || modulus > kMaxModulus || !is_prime(modulus)) {
    throw FieldError("modulus " + std::to_string(modulus) + " is not an odd prime below 2^31");
  }
}

Symbol PrimeField::inv(Symbol a) const {
  if (a == 0) throw FieldError("division by zero: 0 has no multiplicative inverse");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  // r == 1 because p is prime and a != 0.
  if (t < 0) t += p_;
  return static_cast<Symbol>(t);
}

Symbol PrimeField::pow(Symbol base, std::uint64_t exp) const {
  Symbol result = 1;
  Symbol b = base % p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return result;
}

FieldSpec::FieldSpec(PrimeField field, std::vector<Symbol> points, std::uint64_t power_exponent)
    : field_(field), points_(std::move(points)), mu_(power_exponent) {
  std::unordered_set<Symbol> seen_points;
  std::unordered_set<Symbol> seen_powers;
  for (Symbol pt : points_) {
    if (pt == 0 || pt >= field_.modulus()) {
      throw FieldError("evaluation point " + std::to_string(pt) + " outside (0, p)");
    }
    if (!seen_points.insert(pt).second) {
      throw FieldError("duplicate evaluation point " + std::to_string(pt));
    }
    if (!seen_powers.insert(field_.pow(pt, mu_)).second) {
      throw FieldError("points do not have distinct powers of exponent " + std::to_string(mu_));
    }
  }
}

Symbol FieldSpec::point(std::uint32_t node) const {
  if (node == 0 || node > points_.size()) {
    throw FieldError("node index " + std::to_string(node) + " out of range 1.." +
                     std::to_string(points_.size()));
  }
  return points_[node - 1];
}

std::vector<Symbol> select_points(const PrimeField& field, std::size_t n_points, std::uint64_t mu) {
  std::vector<Symbol> points;
  points.reserve(n_points);
  std::unordered_set<Symbol> powers;
  for (Symbol x = 1; x < field.modulus() && points.size() < n_points; ++x) {
    if (powers.insert(field.pow(x, mu)).second) points.push_back(x);
  }
  if (points.size() < n_points) {
    throw FieldError("modulus " + std::to_string(field.modulus()) + " admits only " +
                     std::to_string(points.size()) + " points with distinct powers of exponent " +
                     std::to_string(mu) + ", need " + std::to_string(n_points));
  }
  return points;
}

Symbol select_modulus(std::size_t n_points, std::uint64_t mu, Symbol min_modulus) {
  if (n_points < 1) throw FieldError("need at least one evaluation point");
  if (mu < 1) throw FieldError("power exponent must be positive");
  if (min_modulus < 2) throw FieldError("minimum modulus must be at least 2");

  std::uint64_t candidate = std::max<std::uint64_t>({min_modulus, n_points + 1, 3});
  for (;; ++candidate) {
    if (candidate > kMaxModulus) throw FieldError("modulus search exceeded 2^31");
    if (!is_prime(candidate)) continue;
    const Symbol p = static_cast<Symbol>(candidate);
    if (std::gcd(mu, static_cast<std::uint64_t>(p - 1)) == 1) return p;
    // gcd(mu, p-1) > 1: the power map is not injective, but the image may
    // still be large enough for a filtered point set.
    const std::uint64_t image_size = (p - 1) / std::gcd(mu, static_cast<std::uint64_t>(p - 1));
    if (image_size >= n_points) return p;
  }
}

FieldSpec make_field_spec(std::size_t n_points, std::uint64_t mu, Symbol min_modulus) {
  PrimeField field(select_modulus(n_points, mu, min_modulus));
  return FieldSpec(field, select_points(field, n_points, mu), mu);
}

FieldSpec make_field_spec_pinned(Symbol modulus, std::size_t n_points, std::uint64_t mu) {
  PrimeField field(modulus);
  if (static_cast<std::uint64_t>(field.modulus()) - 1 < n_points) {
    throw FieldError("modulus " + std::to_string(modulus) + " has fewer than " +
                     std::to_string(n_points) + " nonzero residues");
  }
  return FieldSpec(field, select_points(field, n_points, mu), mu);
}

}  // namespace mscr
