#include "mscr/shard_io.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <string>

namespace mscr {

namespace {

constexpr char kMagic[4] = {'M', 'S', 'C', 'R'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint16_t>(in[at] | (in[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint32_t>(in[at]) | (static_cast<std::uint32_t>(in[at + 1]) << 8) |
         (static_cast<std::uint32_t>(in[at + 2]) << 16) |
         (static_cast<std::uint32_t>(in[at + 3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> encode_shard_header(const ShardFileHeader& h) {
  std::vector<std::uint8_t> out;
  out.reserve(kShardHeaderSize);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kShardFormatVersion);
  put_u16(out, h.n);
  put_u16(out, h.k);
  put_u16(out, h.d);
  put_u16(out, h.t);
  put_u32(out, h.modulus);
  put_u16(out, h.node_index);
  put_u32(out, h.stripe_count);
  out.insert(out.end(), 6, 0);
  return out;
}

ShardFileHeader decode_shard_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShardHeaderSize) throw IoError("shard header truncated");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError("bad shard magic");
  if (bytes[4] != kShardFormatVersion) {
    throw IoError("unsupported shard format version " + std::to_string(bytes[4]));
  }
  ShardFileHeader h;
  h.n = get_u16(bytes, 5);
  h.k = get_u16(bytes, 7);
  h.d = get_u16(bytes, 9);
  h.t = get_u16(bytes, 11);
  h.modulus = get_u32(bytes, 13);
  h.node_index = get_u16(bytes, 17);
  h.stripe_count = get_u32(bytes, 19);
  for (std::size_t i = 23; i < kShardHeaderSize; ++i) {
    if (bytes[i] != 0) throw IoError("nonzero reserved bytes in shard header");
  }
  return h;
}

void write_shard_file(const std::filesystem::path& path, const ShardFileHeader& h,
                      std::span<const Symbol> payload) {
  const std::size_t expected = static_cast<std::size_t>(h.stripe_count) * h.alpha();
  if (payload.size() != expected) {
    throw IoError("payload has " + std::to_string(payload.size()) + " symbols, header implies " +
                  std::to_string(expected));
  }
  if (h.modulus > 0x10000) {
    throw IoError("modulus " + std::to_string(h.modulus) + " does not fit u16 symbols");
  }
  std::vector<std::uint8_t> bytes = encode_shard_header(h);
  bytes.reserve(kShardHeaderSize + payload.size() * 2);
  for (Symbol s : payload) {
    if (s >= h.modulus) throw IoError("symbol out of range for the header's modulus");
    bytes.push_back(static_cast<std::uint8_t>(s & 0xff));
    bytes.push_back(static_cast<std::uint8_t>((s >> 8) & 0xff));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::pair<ShardFileHeader, std::vector<Symbol>> read_shard_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  const ShardFileHeader h = decode_shard_header(bytes);
  const std::size_t symbols = static_cast<std::size_t>(h.stripe_count) * h.alpha();
  if (bytes.size() != kShardHeaderSize + symbols * 2) {
    throw IoError("shard file " + path.string() + " has wrong payload size");
  }
  std::vector<Symbol> payload(symbols);
  for (std::size_t i = 0; i < symbols; ++i) {
    payload[i] = static_cast<Symbol>(bytes[kShardHeaderSize + 2 * i]) |
                 (static_cast<Symbol>(bytes[kShardHeaderSize + 2 * i + 1]) << 8);
  }
  return {h, std::move(payload)};
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "n=" << m.n << '\n'
      << "k=" << m.k << '\n'
      << "d=" << m.d << '\n'
      << "t=" << m.t << '\n'
      << "modulus=" << m.modulus << '\n'
      << "length=" << m.length << '\n'
      << "stripes=" << m.stripes << '\n'
      << "checksum=" << m.checksum << '\n';
  if (!out) throw IoError("short write to " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::uint64_t> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("malformed manifest line: " + line);
    try {
      kv[line.substr(0, eq)] = std::stoull(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw IoError("malformed manifest value in line: " + line);
    }
  }
  for (const char* key : {"n", "k", "d", "t", "modulus", "length", "stripes", "checksum"}) {
    if (!kv.count(key)) throw IoError(std::string("manifest missing key ") + key);
  }
  Manifest m;
  m.n = static_cast<std::uint32_t>(kv["n"]);
  m.k = static_cast<std::uint32_t>(kv["k"]);
  m.d = static_cast<std::uint32_t>(kv["d"]);
  m.t = static_cast<std::uint32_t>(kv["t"]);
  m.modulus = static_cast<Symbol>(kv["modulus"]);
  m.length = kv["length"];
  m.stripes = static_cast<std::uint32_t>(kv["stripes"]);
  m.checksum = kv["checksum"];
  return m;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace mscr
