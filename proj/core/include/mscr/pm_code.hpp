#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscr/matrix.hpp"
#include "mscr/params.hpp"

namespace mscr {

/// One node's share of a codeword: alpha symbols per stripe, stripe-major,
/// plus a parameter digest that makes the shard self-describing.
struct Shard {
  std::uint32_t node_index = 0;  // 1-based
  std::uint32_t stripes = 0;
  std::vector<Symbol> symbols;  // stripes * alpha
  ParamsDigest digest;

  std::span<const Symbol> stripe_row(std::size_t stripe, std::uint32_t alpha) const {
    return {symbols.data() + stripe * alpha, alpha};
  }

  bool operator==(const Shard&) const = default;
};

/// The message matrix M of one stripe: two symmetric matrices S and T of
/// dimension alpha overlapped in the middle t-1 rows. M is kept materialized
/// so that encoding is a single product; S and T stay available for tests
/// and decoding.
struct MessageMatrix {
  SymmetricMatrix S;
  SymmetricMatrix T;
  Matrix M;  // d_inner x alpha

  bool operator==(const MessageMatrix&) const = default;
};

/// Inner-code generator: the n_inner x d_inner Vandermonde matrix on the
/// field's evaluation points.
Matrix build_generator(const CodeParams& p);

/// The repair vector phi_i = (1, a_i, ..., a_i^(alpha-1)) of a 1-based inner
/// node. Equals the generator row truncated to its first alpha entries.
std::vector<Symbol> build_repair_vector(const CodeParams& p, std::uint32_t inner_node);

/// One generator row psi_i = (1, a_i, ..., a_i^(d_inner-1)).
std::vector<Symbol> build_encoding_vector(const CodeParams& p, std::uint32_t inner_node);

/// Materializes M = [S; 0] + [0; T]: row l is S_l for l < mu, S_l + T_(l-mu)
/// in the interweave band, and T_(l-mu) past the end of S.
MessageMatrix assemble_message_matrix(const CodeParams& p, SymmetricMatrix s, SymmetricMatrix t);

/// Packs k_inner * alpha raw symbols: S's upper triangle first, then T's.
MessageMatrix pack_message(const CodeParams& p, std::span<const Symbol> symbols);

/// Inverse of pack_message.
std::vector<Symbol> unpack_message(const MessageMatrix& m);

/// Raw (non-systematic) single-stripe encode: shard i holds psi_i * M for
/// the inner node indices 1..n_inner.
std::vector<Shard> encode_raw(const CodeParams& p, const MessageMatrix& m);

}  // namespace mscr
