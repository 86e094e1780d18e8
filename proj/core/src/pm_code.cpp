#include "mscr/pm_code.hpp"

#include <string>

namespace mscr {

Matrix build_generator(const CodeParams& p) {
  return vandermonde(p.field.field(), p.field.points(), p.d_inner);
}

std::vector<Symbol> build_repair_vector(const CodeParams& p, std::uint32_t inner_node) {
  const Symbol point = p.field.point(inner_node);  // validates the index
  const PrimeField& f = p.field.field();
  std::vector<Symbol> phi(p.alpha);
  Symbol v = 1;
  for (std::uint32_t j = 0; j < p.alpha; ++j) {
    phi[j] = v;
    v = f.mul(v, point);
  }
  return phi;
}

std::vector<Symbol> build_encoding_vector(const CodeParams& p, std::uint32_t inner_node) {
  const Symbol point = p.field.point(inner_node);
  const PrimeField& f = p.field.field();
  std::vector<Symbol> psi(p.d_inner);
  Symbol v = 1;
  for (std::uint32_t j = 0; j < p.d_inner; ++j) {
    psi[j] = v;
    v = f.mul(v, point);
  }
  return psi;
}

MessageMatrix assemble_message_matrix(const CodeParams& p, SymmetricMatrix s, SymmetricMatrix t) {
  if (s.dim() != p.alpha || t.dim() != p.alpha) {
    throw LinalgError("message matrix blocks must have dimension alpha");
  }
  const PrimeField& f = p.field.field();
  Matrix m(p.d_inner, p.alpha);
  for (std::uint32_t row = 0; row < p.d_inner; ++row) {
    for (std::uint32_t col = 0; col < p.alpha; ++col) {
      Symbol v = 0;
      if (row < p.alpha) v = s.at(row, col);
      if (row >= p.mu) v = f.add(v, t.at(row - p.mu, col));
      m(row, col) = v;
    }
  }
  return MessageMatrix{std::move(s), std::move(t), std::move(m)};
}

MessageMatrix pack_message(const CodeParams& p, std::span<const Symbol> symbols) {
  const std::size_t half = static_cast<std::size_t>(p.alpha) * (p.alpha + 1) / 2;
  if (symbols.size() != 2 * half) {
    throw CodecError("raw message needs " + std::to_string(2 * half) + " symbols, got " +
                     std::to_string(symbols.size()));
  }
  SymmetricMatrix s = SymmetricMatrix::pack(p.alpha, symbols.first(half));
  SymmetricMatrix t = SymmetricMatrix::pack(p.alpha, symbols.subspan(half));
  return assemble_message_matrix(p, std::move(s), std::move(t));
}

std::vector<Symbol> unpack_message(const MessageMatrix& m) {
  std::vector<Symbol> out = m.S.unpack();
  std::vector<Symbol> tail = m.T.unpack();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<Shard> encode_raw(const CodeParams& p, const MessageMatrix& m) {
  if (m.M.rows() != p.d_inner || m.M.cols() != p.alpha) {
    throw CodecError("message matrix has wrong shape for these parameters");
  }
  const PrimeField& f = p.field.field();
  const Matrix g = build_generator(p);
  std::vector<Shard> shards;
  shards.reserve(p.n_inner);
  for (std::uint32_t i = 0; i < p.n_inner; ++i) {
    Shard sh;
    sh.node_index = i + 1;
    sh.stripes = 1;
    sh.symbols = vec_mat(f, g.row(i), m.M);
    sh.digest = p.digest();
    shards.push_back(std::move(sh));
  }
  return shards;
}

}  // namespace mscr
