#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "mscr/field.hpp"
#include "mscr/params.hpp"

namespace mscr {

/// Fixed shard-file header, 29 bytes little-endian on disk:
/// magic "MSCR" | version u8=1 | n,k,d,t u16 each | modulus u32 |
/// node_index u16 | stripe_count u32 | 6 reserved zero bytes.
/// The payload is stripe_count * alpha symbols, one u16 each.
struct ShardFileHeader {
  std::uint16_t n = 0, k = 0, d = 0, t = 0;
  std::uint32_t modulus = 0;
  std::uint16_t node_index = 0;
  std::uint32_t stripe_count = 0;

  std::uint16_t alpha() const { return static_cast<std::uint16_t>(d - k + t); }
  ParamsDigest digest() const { return {n, k, d, t, modulus}; }

  bool operator==(const ShardFileHeader&) const = default;
};

inline constexpr std::size_t kShardHeaderSize = 29;
inline constexpr std::uint8_t kShardFormatVersion = 1;

std::vector<std::uint8_t> encode_shard_header(const ShardFileHeader& h);
ShardFileHeader decode_shard_header(std::span<const std::uint8_t> bytes);

void write_shard_file(const std::filesystem::path& path, const ShardFileHeader& h,
                      std::span<const Symbol> payload);
std::pair<ShardFileHeader, std::vector<Symbol>> read_shard_file(const std::filesystem::path& path);

/// Sidecar manifest: UTF-8 `key=value` lines with keys n, k, d, t, modulus,
/// length, stripes, checksum.
struct Manifest {
  std::uint32_t n = 0, k = 0, d = 0, t = 0;
  Symbol modulus = 0;
  std::uint64_t length = 0;  // true byte length before padding
  std::uint32_t stripes = 0;
  std::uint64_t checksum = 0;  // FNV-1a of the original bytes

  ParamsDigest digest() const { return {n, k, d, t, modulus}; }

  bool operator==(const Manifest&) const = default;
};

void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

/// 64-bit FNV-1a: offset basis 14695981039346656037, prime 1099511628211.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

}  // namespace mscr
