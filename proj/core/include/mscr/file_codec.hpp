#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "mscr/repair.hpp"
#include "mscr/shard_io.hpp"
#include "mscr/systematic.hpp"

namespace mscr {

/// File-level operations behind the CLI: byte <-> symbol striping, shard
/// files plus manifest, repair of missing shard files, and decode back to
/// the original bytes. One byte maps to one symbol, so the modulus must be
/// at least 257.
inline constexpr Symbol kMinFileModulus = 257;
inline constexpr char kManifestFileName[] = "manifest.txt";

struct EncodeFileReport {
  Manifest manifest;
  std::vector<std::filesystem::path> shard_paths;
};

EncodeFileReport encode_file(const std::filesystem::path& input, std::uint32_t n, std::uint32_t k,
                             std::uint32_t d, std::uint32_t t, std::optional<Symbol> modulus,
                             const std::filesystem::path& out_dir);

/// Shard files plus optional manifest found in a directory, keyed by node
/// index. Headers must agree with each other.
struct ShardDirScan {
  ShardFileHeader header;  // common header fields (node_index meaningless)
  std::optional<Manifest> manifest;
  std::map<std::uint32_t, std::filesystem::path> shard_paths;
};

ShardDirScan scan_shard_dir(const std::filesystem::path& dir);

struct RepairFilesReport {
  std::vector<std::uint32_t> regenerated;
  std::vector<RepairTally> tallies;
  std::uint32_t stripes = 0;
  std::uint64_t per_newcomer_per_stripe = 0;  // d + t - 1
};

/// Regenerates the missing shard files (inferred from the gaps in 1..n).
/// Exactly t files must be missing; helpers, when given, name the d helper
/// nodes every newcomer downloads from.
RepairFilesReport repair_shards(const std::filesystem::path& dir,
                                std::optional<std::vector<std::uint32_t>> helpers = std::nullopt);

struct DecodeFileReport {
  std::uint64_t bytes_written = 0;
  std::uint64_t checksum = 0;
};

DecodeFileReport decode_file(const std::filesystem::path& shard_dir,
                             const std::filesystem::path& out_path);

}  // namespace mscr
