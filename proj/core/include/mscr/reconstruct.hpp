#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscr/pm_code.hpp"

namespace mscr {

struct DecodedPair {
  SymmetricMatrix S;
  SymmetricMatrix T;
};

/// Inverts the map X = Phi*S + diag(lambda)*Phi*T for symmetric S, T, where
/// Phi is a kp x (kp-1) Vandermonde matrix and the lambda are distinct and
/// nonzero. The decoder keeps the sub-Vandermonde inverses, so one instance
/// can decode many stripes read from the same node set.
class PairDecoder {
 public:
  PairDecoder(const PrimeField& f, Matrix phi, std::vector<Symbol> lambda);

  DecodedPair decode(const Matrix& x) const;

 private:
  PrimeField f_;
  Matrix phi_;
  std::vector<Symbol> lambda_;
  std::vector<Matrix> row_solver_inv_;  // one per recovered row of Phi*S
  Matrix phi_sub_inv_;                  // inverse of the first kp-1 rows of Phi
};

/// One-shot form of PairDecoder.
DecodedPair decode_pair(const PrimeField& f, const Matrix& x, const Matrix& phi,
                        std::span<const Symbol> lambda);

/// The contents of k distinct outer nodes, one row per node.
struct ReconstructionInput {
  std::vector<std::uint32_t> node_indices;  // 1-based outer indices
  Matrix rows;                              // k x alpha, row j from node_indices[j]
};

/// Recovers the full message matrix of one stripe from any k outer rows.
/// For shortened codes the delta virtual zero rows are prepended here, so
/// callers always see a uniform k-row interface.
MessageMatrix recover_message_matrix(const CodeParams& p, const ReconstructionInput& input);

/// Full data reconstruction. For delta = 0 this returns the raw packed
/// symbols of S and T. For shortened codes the codeword must be zero on the
/// virtual nodes (the library's systematic encoder guarantees it); the
/// result is then the stored data file with its forced zero prefix removed.
std::vector<Symbol> reconstruct_message(const CodeParams& p, const ReconstructionInput& input);

}  // namespace mscr
