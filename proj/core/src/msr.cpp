#include "mscr/msr.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "mscr/reconstruct.hpp"

namespace mscr {

namespace {

std::vector<Symbol> msr_phi(const MsrParams& p, std::uint32_t node) {
  const PrimeField& f = p.field.field();
  const Symbol point = p.field.point(node);
  std::vector<Symbol> phi(p.alpha);
  Symbol v = 1;
  for (std::uint32_t j = 0; j < p.alpha; ++j) {
    phi[j] = v;
    v = f.mul(v, point);
  }
  return phi;
}

ParamsDigest msr_digest(const MsrParams& p) {
  return ParamsDigest{p.n, p.k, p.d, 1, p.field.field().modulus()};
}

}  // namespace

MsrParams derive_msr_params(std::uint32_t n, std::uint32_t k, std::optional<Symbol> modulus) {
  if (k < 2) throw ParamError("k = " + std::to_string(k) + " is below the minimum of 2");
  const std::uint32_t d = 2 * k - 2;
  if (n < d + 1) {
    throw ParamError("n = " + std::to_string(n) + " leaves fewer than d = " + std::to_string(d) +
                     " helpers for a single failure");
  }
  const std::uint64_t exponent = k - 1;
  FieldSpec field = modulus ? make_field_spec_pinned(*modulus, n, exponent)
                            : make_field_spec(n, exponent);
  return MsrParams{n, k, d, k - 1, k * (k - 1), std::move(field)};
}

std::vector<Shard> msr_encode(const MsrParams& p, std::span<const Symbol> symbols) {
  if (symbols.size() != p.message_len) {
    throw CodecError("message needs " + std::to_string(p.message_len) + " symbols, got " +
                     std::to_string(symbols.size()));
  }
  const PrimeField& f = p.field.field();
  const std::size_t half = static_cast<std::size_t>(p.alpha) * (p.alpha + 1) / 2;
  const SymmetricMatrix s1 = SymmetricMatrix::pack(p.alpha, symbols.first(half));
  const SymmetricMatrix s2 = SymmetricMatrix::pack(p.alpha, symbols.subspan(half));

  // M = [S1; S2], d x alpha.
  Matrix m(p.d, p.alpha);
  for (std::uint32_t i = 0; i < p.alpha; ++i) {
    for (std::uint32_t j = 0; j < p.alpha; ++j) {
      m(i, j) = s1.at(i, j);
      m(p.alpha + i, j) = s2.at(i, j);
    }
  }

  const Matrix g = vandermonde(f, p.field.points(), p.d);
  std::vector<Shard> shards;
  shards.reserve(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    Shard sh;
    sh.node_index = i + 1;
    sh.stripes = 1;
    sh.symbols = vec_mat(f, g.row(i), m);
    sh.digest = msr_digest(p);
    shards.push_back(std::move(sh));
  }
  return shards;
}

Symbol msr_helper_symbol(const MsrParams& p, std::span<const Symbol> helper_row,
                         std::uint32_t failed) {
  if (helper_row.size() != p.alpha) throw CodecError("helper row must hold alpha symbols");
  return dot(p.field.field(), helper_row, msr_phi(p, failed));
}

MsrRepairResult msr_repair(const MsrParams& p, std::uint32_t failed,
                           std::span<const Shard> helpers) {
  if (failed == 0 || failed > p.n) {
    throw CodecError("failed index " + std::to_string(failed) + " out of range");
  }
  if (helpers.size() != p.d) {
    throw CodecError("repair needs exactly d = " + std::to_string(p.d) + " helpers, got " +
                     std::to_string(helpers.size()));
  }
  const PrimeField& f = p.field.field();

  std::unordered_set<std::uint32_t> seen;
  std::vector<Symbol> points;
  points.reserve(p.d);
  Matrix rhs(p.d, 1);
  for (std::size_t j = 0; j < helpers.size(); ++j) {
    const Shard& h = helpers[j];
    if (h.node_index == failed) throw CodecError("failed node cannot help itself");
    if (h.node_index == 0 || h.node_index > p.n || !seen.insert(h.node_index).second) {
      throw CodecError("invalid or duplicate helper " + std::to_string(h.node_index));
    }
    points.push_back(p.field.point(h.node_index));
    rhs(j, 0) = msr_helper_symbol(p, h.symbols, failed);
  }

  const Matrix omega = solve_system(f, vandermonde(f, points, p.d), rhs);

  // omega = (S1 phi^T; S2 phi^T); by symmetry those columns transpose into
  // phi*S1 and phi*S2, and c = phi*S1 + a^(k-1) * phi*S2.
  const Symbol a_pow = f.pow(p.field.point(failed), p.alpha);
  MsrRepairResult result;
  result.row.resize(p.alpha);
  for (std::uint32_t j = 0; j < p.alpha; ++j) {
    result.row[j] = f.add(omega(j, 0), f.mul(a_pow, omega(p.alpha + j, 0)));
  }
  result.downloaded = p.d;
  return result;
}

std::vector<Symbol> msr_reconstruct(const MsrParams& p, std::span<const Shard> shards) {
  if (shards.size() != p.k) {
    throw CodecError("reconstruction needs exactly k = " + std::to_string(p.k) + " shards");
  }
  const PrimeField& f = p.field.field();
  std::unordered_set<std::uint32_t> seen;
  std::vector<Symbol> points;
  std::vector<Symbol> lambda;
  Matrix x(p.k, p.alpha);
  for (std::size_t j = 0; j < shards.size(); ++j) {
    const Shard& sh = shards[j];
    if (sh.node_index == 0 || sh.node_index > p.n || !seen.insert(sh.node_index).second) {
      throw CodecError("invalid or duplicate shard " + std::to_string(sh.node_index));
    }
    points.push_back(p.field.point(sh.node_index));
    lambda.push_back(f.pow(points.back(), p.alpha));
    for (std::uint32_t c = 0; c < p.alpha; ++c) x(j, c) = sh.symbols[c];
  }
  DecodedPair pair = decode_pair(f, x, vandermonde(f, points, p.alpha), lambda);
  std::vector<Symbol> out = pair.S.unpack();
  const std::vector<Symbol> tail = pair.T.unpack();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace mscr
