#include "mscr/file_codec.hpp"

#include <algorithm>
#include <fstream>
#include <string>

namespace mscr {

namespace {

std::vector<std::uint8_t> read_all_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string shard_file_name(std::uint32_t node_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "shard_%04u.mscr", node_index);
  return buf;
}

CodeParams params_from_digest(const ParamsDigest& digest) {
  return derive_params(digest.n, digest.k, digest.d, digest.t,
                       DeriveOptions{.modulus = digest.modulus});
}

}  // namespace

EncodeFileReport encode_file(const std::filesystem::path& input, std::uint32_t n, std::uint32_t k,
                             std::uint32_t d, std::uint32_t t, std::optional<Symbol> modulus,
                             const std::filesystem::path& out_dir) {
  if (modulus && *modulus < kMinFileModulus) {
    throw ParamError("modulus " + std::to_string(*modulus) +
                     " is below 257; one byte must map to one symbol");
  }
  if (n > 0xffff || k > 0xffff || d > 0xffff || t > 0xffff) {
    throw ParamError("n, k, d, t must fit the shard header's 16-bit fields");
  }
  const CodeParams params =
      derive_params(n, k, d, t, DeriveOptions{.modulus = modulus, .min_modulus = kMinFileModulus});
  if (params.field.field().modulus() > 0x10000) {
    throw ParamError("selected modulus does not fit the 16-bit symbol encoding");
  }

  const std::vector<std::uint8_t> bytes = read_all_bytes(input);
  const std::uint64_t stripes64 =
      std::max<std::uint64_t>(1, (bytes.size() + params.message_len - 1) / params.message_len);
  if (stripes64 > 0xffffffffull) throw IoError("input needs more stripes than the format allows");
  const auto stripes = static_cast<std::uint32_t>(stripes64);

  std::vector<Symbol> symbols(static_cast<std::size_t>(stripes) * params.message_len, 0);
  std::copy(bytes.begin(), bytes.end(), symbols.begin());

  const SystematicCodec codec(params);
  const std::vector<Shard> shards = codec.encode(symbols);

  std::filesystem::create_directories(out_dir);
  EncodeFileReport report;
  report.manifest = Manifest{n, k, d, t, params.field.field().modulus(),
                             bytes.size(),  stripes, fnv1a64(bytes)};
  for (const Shard& s : shards) {
    ShardFileHeader header;
    header.n = static_cast<std::uint16_t>(n);
    header.k = static_cast<std::uint16_t>(k);
    header.d = static_cast<std::uint16_t>(d);
    header.t = static_cast<std::uint16_t>(t);
    header.modulus = params.field.field().modulus();
    header.node_index = static_cast<std::uint16_t>(s.node_index);
    header.stripe_count = stripes;
    const std::filesystem::path path = out_dir / shard_file_name(s.node_index);
    write_shard_file(path, header, s.symbols);
    report.shard_paths.push_back(path);
  }
  write_manifest(out_dir / kManifestFileName, report.manifest);
  return report;
}

ShardDirScan scan_shard_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(dir.string() + " is not a directory");
  }
  ShardDirScan scan;
  bool have_header = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::filesystem::path& path = entry.path();
    if (path.filename() == kManifestFileName) {
      scan.manifest = read_manifest(path);
      continue;
    }
    if (path.extension() != ".mscr") continue;
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> head(kShardHeaderSize);
    in.read(reinterpret_cast<char*>(head.data()), kShardHeaderSize);
    if (in.gcount() != static_cast<std::streamsize>(kShardHeaderSize)) {
      throw IoError("shard header truncated in " + path.string());
    }
    const ShardFileHeader header = decode_shard_header(head);
    if (!have_header) {
      scan.header = header;
      have_header = true;
    } else if (header.digest() != scan.header.digest() ||
               header.stripe_count != scan.header.stripe_count) {
      throw CodecError("shard header mismatch: " + path.string() +
                       " belongs to a different encode");
    }
    if (!scan.shard_paths.emplace(header.node_index, path).second) {
      throw CodecError("duplicate shard for node " + std::to_string(header.node_index));
    }
  }
  if (!have_header) throw IoError("no shard files found in " + dir.string());
  if (scan.manifest && scan.manifest->digest() != scan.header.digest()) {
    throw CodecError("manifest does not match the shard headers");
  }
  return scan;
}

RepairFilesReport repair_shards(const std::filesystem::path& dir,
                                std::optional<std::vector<std::uint32_t>> helpers) {
  const ShardDirScan scan = scan_shard_dir(dir);
  const CodeParams params = params_from_digest(scan.header.digest());

  std::vector<std::uint32_t> missing;
  for (std::uint32_t node = 1; node <= params.n; ++node) {
    if (!scan.shard_paths.count(node)) missing.push_back(node);
  }
  if (missing.size() != params.t) {
    throw CodecError("repair runs on exactly t = " + std::to_string(params.t) +
                     " missing shards, found " + std::to_string(missing.size()) +
                     "; batch failures to t");
  }
  if (scan.shard_paths.size() < params.d) {
    throw CodecError("insufficient survivors: need d = " + std::to_string(params.d) +
                     " shard files, have " + std::to_string(scan.shard_paths.size()));
  }

  std::vector<Shard> survivors;
  for (const auto& [node, path] : scan.shard_paths) {
    auto [header, payload] = read_shard_file(path);
    Shard s;
    s.node_index = node;
    s.stripes = header.stripe_count;
    s.symbols = std::move(payload);
    s.digest = header.digest();
    survivors.push_back(std::move(s));
  }

  std::vector<std::uint32_t> helper_set;
  if (helpers) {
    helper_set = *helpers;
  } else {
    for (const auto& [node, path] : scan.shard_paths) {
      if (helper_set.size() == params.d) break;
      helper_set.push_back(node);
    }
  }
  std::vector<std::vector<std::uint32_t>> helper_sets(missing.size(), helper_set);

  const RepairOutcome outcome = run_repair_session(params, missing, helper_sets, survivors);

  for (const Shard& s : outcome.repaired) {
    ShardFileHeader header = scan.header;
    header.node_index = static_cast<std::uint16_t>(s.node_index);
    write_shard_file(dir / shard_file_name(s.node_index), header, s.symbols);
  }

  RepairFilesReport report;
  report.regenerated = missing;
  report.tallies = outcome.tallies;
  report.stripes = scan.header.stripe_count;
  report.per_newcomer_per_stripe = params.d + params.t - 1;
  return report;
}

DecodeFileReport decode_file(const std::filesystem::path& shard_dir,
                             const std::filesystem::path& out_path) {
  const ShardDirScan scan = scan_shard_dir(shard_dir);
  if (!scan.manifest) {
    throw IoError("decode needs the manifest; " + shard_dir.string() + " has none");
  }
  const Manifest& manifest = *scan.manifest;
  const CodeParams params = params_from_digest(manifest.digest());

  if (scan.shard_paths.size() < params.k) {
    throw CodecError("decode needs at least k = " + std::to_string(params.k) +
                     " shard files, have " + std::to_string(scan.shard_paths.size()));
  }

  std::vector<Shard> shards;
  for (const auto& [node, path] : scan.shard_paths) {
    auto [header, payload] = read_shard_file(path);
    Shard s;
    s.node_index = node;
    s.stripes = header.stripe_count;
    s.symbols = std::move(payload);
    s.digest = header.digest();
    shards.push_back(std::move(s));
  }

  const SystematicCodec codec(params);
  const std::vector<Symbol> symbols = codec.decode(shards);
  if (symbols.size() < manifest.length) {
    throw CodecError("decoded stripes are shorter than the manifest length");
  }

  std::vector<std::uint8_t> bytes(manifest.length);
  for (std::uint64_t i = 0; i < manifest.length; ++i) {
    if (symbols[i] > 0xff) {
      throw CodecError("decoded symbol exceeds a byte; shard data is corrupt");
    }
    bytes[i] = static_cast<std::uint8_t>(symbols[i]);
  }
  const std::uint64_t checksum = fnv1a64(bytes);
  if (checksum != manifest.checksum) {
    throw CodecError("checksum mismatch: decoded file does not match the manifest");
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + out_path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + out_path.string());

  return DecodeFileReport{manifest.length, checksum};
}

}  // namespace mscr
