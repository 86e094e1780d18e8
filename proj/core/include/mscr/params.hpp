#pragma once

#include <cstdint>
#include <optional>

#include "mscr/field.hpp"

namespace mscr {

/// Compact copy of the code parameters carried by every shard so that any
/// shard is self-describing.
struct ParamsDigest {
  std::uint32_t n = 0, k = 0, d = 0, t = 0;
  Symbol modulus = 0;

  bool operator==(const ParamsDigest&) const = default;
};

struct DeriveOptions {
  /// Pin the field modulus instead of selecting one automatically.
  std::optional<Symbol> modulus;
  /// Lower bound for automatic modulus selection (the file CLI uses 257 so
  /// one byte maps to one symbol).
  Symbol min_modulus = 2;
};

/// Validated (n,k,d,t) with all derived quantities, frozen after
/// construction. The outer code is realized by shortening an inner code with
/// d_inner = 2*k_inner - 1 - t; delta is the shortening offset and mu, z, r
/// describe the block decomposition d_inner = z*mu + r used during repair.
struct CodeParams {
  std::uint32_t n = 0, k = 0, d = 0, t = 0;

  std::uint32_t alpha = 0;        // symbols per node per stripe, d - k + t
  std::uint32_t message_len = 0;  // message symbols per stripe, k * alpha

  std::uint32_t delta = 0;
  std::uint32_t n_inner = 0, k_inner = 0, d_inner = 0;
  std::uint32_t mu = 0;  // k_inner - t
  std::uint32_t z = 0, r = 0;

  FieldSpec field;  // n_inner evaluation points

  static constexpr std::uint32_t beta1 = 1;
  static constexpr std::uint32_t beta2 = 1;

  ParamsDigest digest() const { return {n, k, d, t, field.field().modulus()}; }

  /// Outer node index -> inner node index (virtual zero nodes occupy the
  /// first delta inner slots).
  std::uint32_t inner_index(std::uint32_t outer) const { return outer + delta; }

  bool operator==(const CodeParams&) const = default;
};

/// Validates (n,k,d,t), derives the shortening lift and selects the field.
/// Throws ParamError with a distinct diagnostic per violated constraint.
CodeParams derive_params(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                         const DeriveOptions& opts = {});

}  // namespace mscr
