#include "mscr/systematic.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace mscr {

namespace {

PairDecoder make_systematic_decoder(const CodeParams& p) {
  const PrimeField& f = p.field.field();
  std::vector<Symbol> points(p.field.points().begin(), p.field.points().begin() + p.k_inner);
  std::vector<Symbol> lambda;
  lambda.reserve(p.k_inner);
  for (Symbol pt : points) lambda.push_back(f.pow(pt, p.mu));
  return PairDecoder(f, vandermonde(f, points, p.alpha), std::move(lambda));
}

}  // namespace

SystematicCodec::SystematicCodec(const CodeParams& p)
    : params_(p), generator_(build_generator(p)), systematic_decoder_(make_systematic_decoder(p)) {}

MessageMatrix SystematicCodec::message_matrix(std::span<const Symbol> inner_blocks) const {
  const CodeParams& p = params_;
  if (inner_blocks.size() != static_cast<std::size_t>(p.k_inner) * p.alpha) {
    throw CodecError("systematic solve needs k_inner blocks of alpha symbols");
  }
  Matrix w(p.k_inner, p.alpha);
  for (std::uint32_t i = 0; i < p.k_inner; ++i) {
    for (std::uint32_t c = 0; c < p.alpha; ++c) {
      w(i, c) = inner_blocks[static_cast<std::size_t>(i) * p.alpha + c];
    }
  }
  DecodedPair pair = systematic_decoder_.decode(w);
  return assemble_message_matrix(p, std::move(pair.S), std::move(pair.T));
}

std::vector<std::vector<Symbol>> SystematicCodec::encode_stripe_inner(
    std::span<const Symbol> stripe) const {
  const CodeParams& p = params_;
  if (stripe.size() != p.message_len) {
    throw CodecError("stripe must hold exactly " + std::to_string(p.message_len) + " symbols");
  }

  // Zero blocks for the virtual nodes, then the message blocks.
  std::vector<Symbol> blocks(static_cast<std::size_t>(p.k_inner) * p.alpha, 0);
  std::copy(stripe.begin(), stripe.end(),
            blocks.begin() + static_cast<std::size_t>(p.delta) * p.alpha);
  const MessageMatrix m = message_matrix(blocks);

  const PrimeField& f = p.field.field();
  std::vector<std::vector<Symbol>> rows;
  rows.reserve(p.n_inner);
  for (std::uint32_t i = 0; i < p.n_inner; ++i) {
    rows.push_back(vec_mat(f, generator_.row(i), m.M));
  }
  for (std::uint32_t v = 0; v < p.delta; ++v) {
    if (!std::all_of(rows[v].begin(), rows[v].end(), [](Symbol s) { return s == 0; })) {
      throw CodecError("internal error: virtual node stores nonzero content before puncturing");
    }
  }
  return rows;
}

std::vector<Shard> SystematicCodec::encode(std::span<const Symbol> message) const {
  const CodeParams& p = params_;
  if (message.empty() || message.size() % p.message_len != 0) {
    throw CodecError("message length must be a positive multiple of " +
                     std::to_string(p.message_len));
  }
  const std::uint32_t stripes = static_cast<std::uint32_t>(message.size() / p.message_len);

  std::vector<Shard> shards(p.n);
  for (std::uint32_t j = 0; j < p.n; ++j) {
    shards[j].node_index = j + 1;
    shards[j].stripes = stripes;
    shards[j].symbols.reserve(static_cast<std::size_t>(stripes) * p.alpha);
    shards[j].digest = p.digest();
  }
  for (std::uint32_t s = 0; s < stripes; ++s) {
    const auto rows = encode_stripe_inner(message.subspan(
        static_cast<std::size_t>(s) * p.message_len, p.message_len));
    for (std::uint32_t j = 0; j < p.n; ++j) {
      const auto& row = rows[p.delta + j];  // puncture the virtual nodes
      shards[j].symbols.insert(shards[j].symbols.end(), row.begin(), row.end());
    }
  }
  return shards;
}

std::vector<Symbol> SystematicCodec::decode(std::span<const Shard> shards) const {
  const CodeParams& p = params_;
  std::map<std::uint32_t, const Shard*> by_index;
  std::uint32_t stripes = 0;
  for (const Shard& s : shards) {
    if (s.digest != p.digest()) {
      throw CodecError("shard header mismatch: shard " + std::to_string(s.node_index) +
                       " belongs to a different code");
    }
    if (s.node_index == 0 || s.node_index > p.n) {
      throw CodecError("shard index " + std::to_string(s.node_index) + " out of range");
    }
    if (!by_index.emplace(s.node_index, &s).second) {
      throw CodecError("duplicate shard " + std::to_string(s.node_index));
    }
    if (stripes == 0) stripes = s.stripes;
    if (s.stripes != stripes || s.symbols.size() != static_cast<std::size_t>(stripes) * p.alpha) {
      throw CodecError("shards disagree on stripe count");
    }
  }
  if (by_index.size() < p.k) {
    throw CodecError("decode needs at least k = " + std::to_string(p.k) + " shards, got " +
                     std::to_string(by_index.size()));
  }
  if (stripes == 0) throw CodecError("shards hold no stripes");

  std::vector<Symbol> message(static_cast<std::size_t>(stripes) * p.message_len);

  bool systematic_fast_path = true;
  for (std::uint32_t j = 1; j <= p.k; ++j) systematic_fast_path &= by_index.count(j) > 0;

  if (systematic_fast_path) {
    for (std::uint32_t s = 0; s < stripes; ++s) {
      for (std::uint32_t j = 1; j <= p.k; ++j) {
        const auto row = by_index.at(j)->stripe_row(s, p.alpha);
        std::copy(row.begin(), row.end(),
                  message.begin() + static_cast<std::size_t>(s) * p.message_len +
                      static_cast<std::size_t>(j - 1) * p.alpha);
      }
    }
    // Cross-check against the lowest supplied parity shard, if any.
    const Shard* parity = nullptr;
    for (const auto& [idx, sh] : by_index) {
      if (idx > p.k) {
        parity = sh;
        break;
      }
    }
    if (parity != nullptr) {
      const PrimeField& f = p.field.field();
      const std::uint32_t parity_inner = p.inner_index(parity->node_index);
      std::vector<Symbol> blocks(static_cast<std::size_t>(p.k_inner) * p.alpha, 0);
      for (std::uint32_t s = 0; s < stripes; ++s) {
        std::copy(message.begin() + static_cast<std::size_t>(s) * p.message_len,
                  message.begin() + static_cast<std::size_t>(s + 1) * p.message_len,
                  blocks.begin() + static_cast<std::size_t>(p.delta) * p.alpha);
        const MessageMatrix m = message_matrix(blocks);
        const std::vector<Symbol> expect = vec_mat(f, generator_.row(parity_inner - 1), m.M);
        const auto got = parity->stripe_row(s, p.alpha);
        if (!std::equal(expect.begin(), expect.end(), got.begin(), got.end())) {
          throw CodecError("parity shard " + std::to_string(parity->node_index) +
                           " is inconsistent with the systematic shards");
        }
      }
    }
    return message;
  }

  // General path: decode from the k lowest-indexed shards.
  std::vector<const Shard*> chosen;
  std::vector<Symbol> points;
  std::vector<Symbol> lambda;
  const PrimeField& f = p.field.field();
  for (std::uint32_t v = 1; v <= p.delta; ++v) {
    points.push_back(p.field.point(v));
    lambda.push_back(f.pow(points.back(), p.mu));
  }
  for (const auto& [idx, sh] : by_index) {
    if (chosen.size() == p.k) break;
    chosen.push_back(sh);
    points.push_back(p.field.point(p.inner_index(idx)));
    lambda.push_back(f.pow(points.back(), p.mu));
  }
  const PairDecoder decoder(f, vandermonde(f, points, p.alpha), lambda);

  Matrix x(p.k_inner, p.alpha);
  for (std::uint32_t s = 0; s < stripes; ++s) {
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      const auto row = chosen[j]->stripe_row(s, p.alpha);
      for (std::uint32_t c = 0; c < p.alpha; ++c) x(p.delta + j, c) = row[c];
    }
    DecodedPair pair = decoder.decode(x);
    const MessageMatrix m = assemble_message_matrix(p, std::move(pair.S), std::move(pair.T));
    for (std::uint32_t j = 0; j < p.k; ++j) {
      const std::vector<Symbol> row = vec_mat(f, generator_.row(p.delta + j), m.M);
      std::copy(row.begin(), row.end(),
                message.begin() + static_cast<std::size_t>(s) * p.message_len +
                    static_cast<std::size_t>(j) * p.alpha);
    }
  }
  return message;
}

MessageMatrix systematic_message_matrix(const CodeParams& p, std::span<const Symbol> inner_blocks) {
  return SystematicCodec(p).message_matrix(inner_blocks);
}

std::vector<Shard> encode_systematic(const CodeParams& p, std::span<const Symbol> message) {
  return SystematicCodec(p).encode(message);
}

std::vector<Symbol> decode_systematic(const CodeParams& p, std::span<const Shard> shards) {
  return SystematicCodec(p).decode(shards);
}

}  // namespace mscr
