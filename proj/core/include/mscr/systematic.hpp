#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscr/reconstruct.hpp"

namespace mscr {

/// Systematic codec for the outer code. Encoding solves the message matrix
/// that places each message block verbatim on its systematic node, then
/// multiplies by the generator; shortened codes zero-force the delta virtual
/// blocks and puncture the virtual nodes afterwards. One instance carries
/// the precomputed solvers, so many stripes encode cheaply.
class SystematicCodec {
 public:
  explicit SystematicCodec(const CodeParams& p);

  const CodeParams& params() const { return params_; }

  /// The unique message matrix whose codeword stores block j on inner node
  /// j, for j = 1..k_inner.
  MessageMatrix message_matrix(std::span<const Symbol> inner_blocks) const;

  /// One stripe, pre-puncture: all n_inner inner rows (the first delta are
  /// zero for a shortened code).
  std::vector<std::vector<Symbol>> encode_stripe_inner(std::span<const Symbol> stripe) const;

  /// Multi-stripe outer encode; message length must be a positive multiple
  /// of message_len.
  std::vector<Shard> encode(std::span<const Symbol> message) const;

  /// Decode from any >= k outer shards. With all k systematic shards at
  /// hand the message is read off directly; a supplied parity shard is then
  /// used as a consistency check.
  std::vector<Symbol> decode(std::span<const Shard> shards) const;

 private:
  CodeParams params_;
  Matrix generator_;
  PairDecoder systematic_decoder_;  // over inner nodes 1..k_inner
};

/// One-shot wrappers around SystematicCodec.
MessageMatrix systematic_message_matrix(const CodeParams& p, std::span<const Symbol> inner_blocks);
std::vector<Shard> encode_systematic(const CodeParams& p, std::span<const Symbol> message);
std::vector<Symbol> decode_systematic(const CodeParams& p, std::span<const Shard> shards);

}  // namespace mscr
