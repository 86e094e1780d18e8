#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscr/pm_code.hpp"

namespace mscr {

/// Phase-1 combinations of one newcomer: mu linear equations on its lost row
/// c_i, derived from omega = M * phi_i^T alone.
struct Phase1Equations {
  Matrix rows;                 // mu x alpha block of the newcomer's system
  std::vector<Symbol> values;  // matching right-hand sides
};

/// The symbol a helper sends a newcomer in Phase 1: c_j * phi_i^T.
Symbol helper_symbol(const CodeParams& p, std::span<const Symbol> helper_row,
                     std::uint32_t newcomer_inner);

/// Solves Psi_repair * omega = collected symbols for omega = M * phi_i^T.
/// helper_inner holds the d real helper indices; the delta virtual zero
/// nodes are conscripted internally and contribute zero symbols for free.
std::vector<Symbol> recover_m_phi(const CodeParams& p, std::uint32_t newcomer_inner,
                                  std::span<const std::uint32_t> helper_inner,
                                  std::span<const Symbol> symbols);

/// Collapses omega into mu equations using the block decomposition
/// d_inner = z * mu + r: value l sums a_i^(j*mu) * omega_(j*mu+l), one block
/// step at a time, and the matching row places those powers on the stored
/// coordinates.
Phase1Equations phase1_equations(const CodeParams& p, std::uint32_t newcomer_inner,
                                 std::span<const Symbol> omega);

/// Phase-2 symbol from newcomer `sender` to newcomer `receiver`:
/// psi_receiver * omega_sender, which equals c_receiver * phi_sender^T.
Symbol phase2_exchange(const CodeParams& p, std::uint32_t sender_inner,
                       std::uint32_t receiver_inner, std::span<const Symbol> omega_sender);

/// The newcomer's full coefficient matrix: mu Phase-1 rows stacked over the
/// t-1 repair vectors of the other newcomers (ascending inner index).
Matrix assemble_newcomer_system(const CodeParams& p, std::uint32_t newcomer_inner,
                                std::span<const std::uint32_t> failed_inner);

/// Solves H * c_i^T = rhs. A singular H means the distinct-power condition
/// of the evaluation points is broken.
std::vector<Symbol> solve_newcomer(const CodeParams& p, std::uint32_t newcomer_inner,
                                   const Matrix& h, std::span<const Symbol> rhs);

struct RepairTally {
  std::uint32_t newcomer = 0;  // outer index
  std::uint64_t phase1_symbols = 0;
  std::uint64_t phase2_symbols = 0;
};

struct RepairOutcome {
  std::vector<Shard> repaired;  // one per failed node, ascending outer index
  std::vector<RepairTally> tallies;
};

/// Runs the full two-phase session over every stripe of the survivors.
/// failed_outer must have exactly t distinct entries; helpers_outer supplies
/// one d-element helper set per newcomer (same order as failed_outer),
/// disjoint from the failed set. All Phase-1 work completes before any
/// Phase-2 exchange.
RepairOutcome run_repair_session(const CodeParams& p, std::span<const std::uint32_t> failed_outer,
                                 std::span<const std::vector<std::uint32_t>> helpers_outer,
                                 std::span<const Shard> survivors);

}  // namespace mscr
