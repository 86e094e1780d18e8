#include "mscr/reconstruct.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace mscr {

PairDecoder::PairDecoder(const PrimeField& f, Matrix phi, std::vector<Symbol> lambda)
    : f_(f), phi_(std::move(phi)), lambda_(std::move(lambda)) {
  const std::size_t kp = phi_.rows();
  const std::size_t alpha = phi_.cols();
  if (kp != alpha + 1) throw LinalgError("PairDecoder needs a kp x (kp-1) Vandermonde");
  if (lambda_.size() != kp) throw LinalgError("lambda length must match Phi rows");
  std::unordered_set<Symbol> seen;
  for (Symbol l : lambda_) {
    if (l == 0) throw CodecError("lambda values must be nonzero");
    if (!seen.insert(l).second) {
      throw CodecError("repeated lambda value " + std::to_string(l));
    }
  }

  // Row i of Phi*S is read off its off-diagonal entries through the square
  // system formed by every other row's Vandermonde vector. Only the first
  // kp-1 rows are ever recovered (the smallest admissible index set).
  row_solver_inv_.reserve(alpha);
  for (std::size_t i = 0; i < alpha; ++i) {
    Matrix v(alpha, alpha);
    std::size_t out = 0;
    for (std::size_t j = 0; j < kp; ++j) {
      if (j == i) continue;
      for (std::size_t c = 0; c < alpha; ++c) v(out, c) = phi_(j, c);
      ++out;
    }
    row_solver_inv_.push_back(invert(f_, v));
  }

  Matrix phi_sub(alpha, alpha);
  for (std::size_t i = 0; i < alpha; ++i) {
    for (std::size_t c = 0; c < alpha; ++c) phi_sub(i, c) = phi_(i, c);
  }
  phi_sub_inv_ = invert(f_, phi_sub);
}

DecodedPair PairDecoder::decode(const Matrix& x) const {
  const std::size_t kp = phi_.rows();
  const std::size_t alpha = phi_.cols();
  if (x.rows() != kp || x.cols() != alpha) throw LinalgError("X has the wrong shape");

  // Y = X * Phi^T = A + diag(lambda) * B with A = Phi*S*Phi^T symmetric and
  // B = Phi*T*Phi^T symmetric.
  Matrix y(kp, kp);
  for (std::size_t i = 0; i < kp; ++i) {
    for (std::size_t j = 0; j < kp; ++j) y(i, j) = dot(f_, x.row(i), phi_.row(j));
  }

  // Each off-diagonal pair (i,j), (j,i) pins a_ij and b_ij because
  // lambda_i != lambda_j. Diagonal entries are never needed.
  Matrix a(kp, kp);
  Matrix b(kp, kp);
  for (std::size_t i = 0; i < kp; ++i) {
    for (std::size_t j = i + 1; j < kp; ++j) {
      const Symbol denom = f_.sub(lambda_[j], lambda_[i]);
      const Symbol bij = f_.mul(f_.sub(y(j, i), y(i, j)), f_.inv(denom));
      const Symbol aij = f_.sub(y(i, j), f_.mul(lambda_[i], bij));
      a(i, j) = a(j, i) = aij;
      b(i, j) = b(j, i) = bij;
    }
  }

  Matrix phi_s(alpha, alpha);
  Matrix phi_t(alpha, alpha);
  std::vector<Symbol> rhs_a(alpha), rhs_b(alpha);
  for (std::size_t i = 0; i < alpha; ++i) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < kp; ++j) {
      if (j == i) continue;
      rhs_a[out] = a(i, j);
      rhs_b[out] = b(i, j);
      ++out;
    }
    const std::vector<Symbol> row_s = mat_vec(f_, row_solver_inv_[i], rhs_a);
    const std::vector<Symbol> row_t = mat_vec(f_, row_solver_inv_[i], rhs_b);
    for (std::size_t c = 0; c < alpha; ++c) {
      phi_s(i, c) = row_s[c];
      phi_t(i, c) = row_t[c];
    }
  }

  const Matrix s_dense = mat_mul(f_, phi_sub_inv_, phi_s);
  const Matrix t_dense = mat_mul(f_, phi_sub_inv_, phi_t);

  DecodedPair out;
  std::vector<Symbol> upper;
  upper.reserve(alpha * (alpha + 1) / 2);
  for (std::size_t i = 0; i < alpha; ++i) {
    for (std::size_t j = i; j < alpha; ++j) upper.push_back(s_dense(i, j));
  }
  out.S = SymmetricMatrix::pack(alpha, upper);
  upper.clear();
  for (std::size_t i = 0; i < alpha; ++i) {
    for (std::size_t j = i; j < alpha; ++j) upper.push_back(t_dense(i, j));
  }
  out.T = SymmetricMatrix::pack(alpha, upper);
  return out;
}

DecodedPair decode_pair(const PrimeField& f, const Matrix& x, const Matrix& phi,
                        std::span<const Symbol> lambda) {
  return PairDecoder(f, phi, std::vector<Symbol>(lambda.begin(), lambda.end())).decode(x);
}

namespace {

void validate_outer_rows(const CodeParams& p, const ReconstructionInput& input) {
  if (input.node_indices.size() != p.k) {
    throw CodecError("reconstruction needs exactly k = " + std::to_string(p.k) +
                     " node rows, got " + std::to_string(input.node_indices.size()));
  }
  if (input.rows.rows() != p.k || input.rows.cols() != p.alpha) {
    throw CodecError("reconstruction rows must form a k x alpha matrix");
  }
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t idx : input.node_indices) {
    if (idx == 0 || idx > p.n) {
      throw CodecError("node index " + std::to_string(idx) + " out of range 1.." +
                       std::to_string(p.n));
    }
    if (!seen.insert(idx).second) {
      throw CodecError("duplicate node index " + std::to_string(idx));
    }
  }
}

}  // namespace

MessageMatrix recover_message_matrix(const CodeParams& p, const ReconstructionInput& input) {
  validate_outer_rows(p, input);
  const PrimeField& f = p.field.field();

  // Virtual zero nodes first, then the supplied outer rows.
  std::vector<Symbol> points;
  std::vector<Symbol> lambda;
  points.reserve(p.k_inner);
  lambda.reserve(p.k_inner);
  Matrix x(p.k_inner, p.alpha);
  for (std::uint32_t v = 1; v <= p.delta; ++v) {
    points.push_back(p.field.point(v));
    lambda.push_back(f.pow(points.back(), p.mu));
  }
  for (std::size_t j = 0; j < input.node_indices.size(); ++j) {
    const std::uint32_t inner = p.inner_index(input.node_indices[j]);
    points.push_back(p.field.point(inner));
    lambda.push_back(f.pow(points.back(), p.mu));
    for (std::uint32_t c = 0; c < p.alpha; ++c) x(p.delta + j, c) = input.rows(j, c);
  }

  const Matrix phi = vandermonde(f, points, p.alpha);
  DecodedPair pair = decode_pair(f, x, phi, lambda);
  return assemble_message_matrix(p, std::move(pair.S), std::move(pair.T));
}

std::vector<Symbol> reconstruct_message(const CodeParams& p, const ReconstructionInput& input) {
  MessageMatrix m = recover_message_matrix(p, input);
  if (p.delta == 0) return unpack_message(m);

  // Shortened code: the data file is what the inner systematic nodes store.
  // The virtual nodes hold zeros by construction (the pair map is bijective,
  // so the recovered codeword reproduces the zero rows fed in); their blocks
  // are the forced prefix that shortening removes.
  const PrimeField& f = p.field.field();
  const Matrix g = build_generator(p);
  for (std::uint32_t v = 0; v < p.delta; ++v) {
    const std::vector<Symbol> row = vec_mat(f, g.row(v), m.M);
    if (!std::all_of(row.begin(), row.end(), [](Symbol s) { return s == 0; })) {
      throw CodecError("internal error: virtual node " + std::to_string(v + 1) +
                       " stores nonzero content");
    }
  }
  std::vector<Symbol> message;
  message.reserve(static_cast<std::size_t>(p.k) * p.alpha);
  for (std::uint32_t j = p.delta; j < p.k_inner; ++j) {
    const std::vector<Symbol> row = vec_mat(f, g.row(j), m.M);
    message.insert(message.end(), row.begin(), row.end());
  }
  return message;
}

}  // namespace mscr
