#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mscr/pm_code.hpp"

namespace mscr {

/// Parameters of the reference single-failure code with d = 2k-2. It shares
/// the field machinery and the pair decoder with the cooperative code and
/// serves as a regression anchor; it has no CLI surface.
struct MsrParams {
  std::uint32_t n = 0, k = 0, d = 0;
  std::uint32_t alpha = 0;        // k - 1
  std::uint32_t message_len = 0;  // k * (k - 1)
  FieldSpec field;                // n points with distinct (k-1)-th powers

  bool operator==(const MsrParams&) const = default;
};

MsrParams derive_msr_params(std::uint32_t n, std::uint32_t k,
                            std::optional<Symbol> modulus = std::nullopt);

/// Single-stripe encode of message_len symbols packed as two symmetric
/// matrices stacked into M; node i stores psi_i * M.
std::vector<Shard> msr_encode(const MsrParams& p, std::span<const Symbol> symbols);

/// What helper j sends when node `failed` is being rebuilt: c_j * phi^T.
Symbol msr_helper_symbol(const MsrParams& p, std::span<const Symbol> helper_row,
                         std::uint32_t failed);

struct MsrRepairResult {
  std::vector<Symbol> row;
  std::uint64_t downloaded = 0;  // exactly d symbols
};

/// Rebuilds one node from any d helper shards.
MsrRepairResult msr_repair(const MsrParams& p, std::uint32_t failed,
                           std::span<const Shard> helpers);

/// Recovers the message from any k shards via the pair decoder.
std::vector<Symbol> msr_reconstruct(const MsrParams& p, std::span<const Shard> shards);

}  // namespace mscr
