#include "mscr/repair.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

namespace mscr {

namespace {

void check_inner_index(const CodeParams& p, std::uint32_t inner, const char* what) {
  if (inner == 0 || inner > p.n_inner) {
    throw CodecError(std::string(what) + " index " + std::to_string(inner) +
                     " out of inner range 1.." + std::to_string(p.n_inner));
  }
}

}  // namespace

Symbol helper_symbol(const CodeParams& p, std::span<const Symbol> helper_row,
                     std::uint32_t newcomer_inner) {
  if (helper_row.size() != p.alpha) throw CodecError("helper row must hold alpha symbols");
  return dot(p.field.field(), helper_row, build_repair_vector(p, newcomer_inner));
}

std::vector<Symbol> recover_m_phi(const CodeParams& p, std::uint32_t newcomer_inner,
                                  std::span<const std::uint32_t> helper_inner,
                                  std::span<const Symbol> symbols) {
  check_inner_index(p, newcomer_inner, "newcomer");
  if (helper_inner.size() != p.d) {
    throw CodecError("repair needs exactly d = " + std::to_string(p.d) + " real helpers, got " +
                     std::to_string(helper_inner.size()));
  }
  if (symbols.size() != helper_inner.size()) {
    throw CodecError("one symbol per helper expected");
  }
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t h : helper_inner) {
    check_inner_index(p, h, "helper");
    if (h <= p.delta) throw CodecError("virtual nodes cannot be named as real helpers");
    if (h == newcomer_inner) throw CodecError("newcomer cannot help itself");
    if (!seen.insert(h).second) throw CodecError("duplicate helper " + std::to_string(h));
  }

  // Virtual zero nodes always participate, contributing zero symbols.
  std::vector<Symbol> points;
  points.reserve(p.d_inner);
  std::vector<Symbol> collected(p.d_inner, 0);
  for (std::uint32_t v = 1; v <= p.delta; ++v) points.push_back(p.field.point(v));
  for (std::size_t j = 0; j < helper_inner.size(); ++j) {
    points.push_back(p.field.point(helper_inner[j]));
    collected[p.delta + j] = symbols[j];
  }

  const Matrix psi_repair = vandermonde(p.field.field(), points, p.d_inner);
  Matrix rhs(p.d_inner, 1);
  for (std::uint32_t i = 0; i < p.d_inner; ++i) rhs(i, 0) = collected[i];
  const Matrix solved = solve_system(p.field.field(), psi_repair, rhs);
  std::vector<Symbol> omega(p.d_inner);
  for (std::uint32_t i = 0; i < p.d_inner; ++i) omega[i] = solved(i, 0);
  return omega;
}

Phase1Equations phase1_equations(const CodeParams& p, std::uint32_t newcomer_inner,
                                 std::span<const Symbol> omega) {
  check_inner_index(p, newcomer_inner, "newcomer");
  if (omega.size() != p.d_inner) throw CodecError("omega must hold d_inner symbols");
  const PrimeField& f = p.field.field();
  const Symbol a_mu = f.pow(p.field.point(newcomer_inner), p.mu);

  Phase1Equations eq;
  eq.rows = Matrix(p.mu, p.alpha);
  eq.values.assign(p.mu, 0);
  for (std::uint32_t l = 1; l <= p.mu; ++l) {
    // Coordinates l, mu+l, 2mu+l, ... : one term per block. Rows past the
    // partial block stop one step earlier on both sides.
    const std::uint32_t value_terms = (l <= p.r) ? p.z + 1 : p.z;
    Symbol coeff = 1;
    Symbol value = 0;
    for (std::uint32_t j = 0; j < value_terms; ++j) {
      value = f.add(value, f.mul(coeff, omega[j * p.mu + l - 1]));
      if (j + 1 < value_terms) {
        // All but the last term also name a coordinate of the lost row.
        eq.rows(l - 1, j * p.mu + l - 1) = coeff;
      }
      coeff = f.mul(coeff, a_mu);
    }
    eq.values[l - 1] = value;
  }
  return eq;
}

Symbol phase2_exchange(const CodeParams& p, std::uint32_t sender_inner,
                       std::uint32_t receiver_inner, std::span<const Symbol> omega_sender) {
  check_inner_index(p, sender_inner, "sender");
  check_inner_index(p, receiver_inner, "receiver");
  if (sender_inner == receiver_inner) throw CodecError("newcomer cannot exchange with itself");
  if (omega_sender.size() != p.d_inner) {
    throw CodecError("sender has not completed Phase 1: omega has " +
                     std::to_string(omega_sender.size()) + " symbols, need " +
                     std::to_string(p.d_inner));
  }
  return dot(p.field.field(), build_encoding_vector(p, receiver_inner), omega_sender);
}

Matrix assemble_newcomer_system(const CodeParams& p, std::uint32_t newcomer_inner,
                                std::span<const std::uint32_t> failed_inner) {
  std::vector<std::uint32_t> others;
  for (std::uint32_t idx : failed_inner) {
    if (idx != newcomer_inner) others.push_back(idx);
  }
  if (others.size() != p.t - 1) {
    throw CodecError("newcomer system needs the other t-1 failed nodes");
  }
  std::sort(others.begin(), others.end());

  Matrix h(p.alpha, p.alpha);
  const Phase1Equations structure =
      phase1_equations(p, newcomer_inner, std::vector<Symbol>(p.d_inner, 0));
  for (std::uint32_t row = 0; row < p.mu; ++row) {
    for (std::uint32_t col = 0; col < p.alpha; ++col) h(row, col) = structure.rows(row, col);
  }
  for (std::size_t j = 0; j < others.size(); ++j) {
    const std::vector<Symbol> phi = build_repair_vector(p, others[j]);
    for (std::uint32_t col = 0; col < p.alpha; ++col) h(p.mu + j, col) = phi[col];
  }
  return h;
}

std::vector<Symbol> solve_newcomer(const CodeParams& p, std::uint32_t newcomer_inner,
                                   const Matrix& h, std::span<const Symbol> rhs) {
  check_inner_index(p, newcomer_inner, "newcomer");
  if (h.rows() != p.alpha || h.cols() != p.alpha || rhs.size() != p.alpha) {
    throw CodecError("newcomer system must be alpha x alpha with alpha right-hand values");
  }
  Matrix b(p.alpha, 1);
  for (std::uint32_t i = 0; i < p.alpha; ++i) b(i, 0) = rhs[i];
  Matrix solved;
  try {
    solved = solve_system(p.field.field(), h, b);
  } catch (const RankError&) {
    throw CodecError("newcomer system is singular: the evaluation points violate the "
                     "distinct-power condition");
  }
  std::vector<Symbol> row(p.alpha);
  for (std::uint32_t i = 0; i < p.alpha; ++i) row[i] = solved(i, 0);
  return row;
}

RepairOutcome run_repair_session(const CodeParams& p, std::span<const std::uint32_t> failed_outer,
                                 std::span<const std::vector<std::uint32_t>> helpers_outer,
                                 std::span<const Shard> survivors) {
  if (failed_outer.size() != p.t) {
    throw CodecError("cooperative repair runs on exactly t = " + std::to_string(p.t) +
                     " failed nodes, got " + std::to_string(failed_outer.size()) +
                     "; batch failures to t");
  }
  if (helpers_outer.size() != failed_outer.size()) {
    throw CodecError("one helper set per newcomer required");
  }

  std::unordered_set<std::uint32_t> failed_set;
  for (std::uint32_t idx : failed_outer) {
    if (idx == 0 || idx > p.n) throw CodecError("failed index " + std::to_string(idx) +
                                                " out of range 1.." + std::to_string(p.n));
    if (!failed_set.insert(idx).second) {
      throw CodecError("duplicate failed index " + std::to_string(idx));
    }
  }

  std::map<std::uint32_t, const Shard*> survivor_by_index;
  std::uint32_t stripes = 0;
  for (const Shard& s : survivors) {
    if (s.digest != p.digest()) throw CodecError("survivor shard header mismatch");
    if (failed_set.count(s.node_index)) continue;  // stale copy of a failed node
    if (!survivor_by_index.emplace(s.node_index, &s).second) {
      throw CodecError("duplicate survivor shard " + std::to_string(s.node_index));
    }
    if (stripes == 0) stripes = s.stripes;
    if (s.stripes != stripes || s.symbols.size() != static_cast<std::size_t>(stripes) * p.alpha) {
      throw CodecError("survivor shards disagree on stripe count");
    }
  }
  if (survivor_by_index.size() < p.d) {
    throw CodecError("insufficient survivors: need d = " + std::to_string(p.d) + ", have " +
                     std::to_string(survivor_by_index.size()));
  }
  if (stripes == 0) throw CodecError("survivors hold no stripes");

  // Failed set sorted ascending: repaired shards and tallies follow it.
  std::vector<std::uint32_t> failed(failed_outer.begin(), failed_outer.end());
  std::sort(failed.begin(), failed.end());
  std::vector<std::uint32_t> failed_inner;
  failed_inner.reserve(failed.size());
  for (std::uint32_t idx : failed) failed_inner.push_back(p.inner_index(idx));

  const PrimeField& f = p.field.field();
  const std::uint32_t t = p.t;

  struct NewcomerPlan {
    std::uint32_t outer = 0;
    std::uint32_t inner = 0;
    std::vector<std::uint32_t> helpers_outer;
    std::vector<Symbol> phi;
    Matrix psi_repair_inv;  // (d_inner x d_inner), virtual rows first
    Matrix h_inv;           // (alpha x alpha)
  };

  std::vector<NewcomerPlan> plans(t);
  for (std::uint32_t m = 0; m < t; ++m) {
    NewcomerPlan& plan = plans[m];
    plan.outer = failed[m];
    plan.inner = failed_inner[m];

    // Helper sets arrive in failed_outer order; realign to the sorted order.
    const auto original_pos =
        std::find(failed_outer.begin(), failed_outer.end(), plan.outer) - failed_outer.begin();
    plan.helpers_outer = helpers_outer[original_pos];
    if (plan.helpers_outer.size() != p.d) {
      throw CodecError("newcomer " + std::to_string(plan.outer) + " needs d = " +
                       std::to_string(p.d) + " helpers");
    }
    std::unordered_set<std::uint32_t> seen;
    std::vector<Symbol> points;
    points.reserve(p.d_inner);
    for (std::uint32_t v = 1; v <= p.delta; ++v) points.push_back(p.field.point(v));
    for (std::uint32_t h : plan.helpers_outer) {
      if (failed_set.count(h)) {
        throw CodecError("helper " + std::to_string(h) + " is itself failed");
      }
      if (!survivor_by_index.count(h)) {
        throw CodecError("helper " + std::to_string(h) + " has no surviving shard");
      }
      if (!seen.insert(h).second) throw CodecError("duplicate helper " + std::to_string(h));
      points.push_back(p.field.point(p.inner_index(h)));
    }

    plan.phi = build_repair_vector(p, plan.inner);
    plan.psi_repair_inv = invert(f, vandermonde(f, points, p.d_inner));
    plan.h_inv = invert(f, assemble_newcomer_system(p, plan.inner, failed_inner));
  }

  RepairOutcome outcome;
  outcome.repaired.resize(t);
  outcome.tallies.resize(t);
  for (std::uint32_t m = 0; m < t; ++m) {
    outcome.repaired[m].node_index = plans[m].outer;
    outcome.repaired[m].stripes = stripes;
    outcome.repaired[m].symbols.assign(static_cast<std::size_t>(stripes) * p.alpha, 0);
    outcome.repaired[m].digest = p.digest();
    outcome.tallies[m].newcomer = plans[m].outer;
  }

  std::vector<std::vector<Symbol>> omega(t);
  std::vector<Symbol> collected(p.d_inner);
  for (std::uint32_t stripe = 0; stripe < stripes; ++stripe) {
    // Phase 1: every newcomer downloads one symbol per helper and recovers
    // omega = M * phi^T. All of Phase 1 completes before any exchange.
    for (std::uint32_t m = 0; m < t; ++m) {
      NewcomerPlan& plan = plans[m];
      std::fill(collected.begin(), collected.begin() + p.delta, 0);
      for (std::size_t j = 0; j < plan.helpers_outer.size(); ++j) {
        const Shard& helper = *survivor_by_index.at(plan.helpers_outer[j]);
        collected[p.delta + j] = dot(f, helper.stripe_row(stripe, p.alpha), plan.phi);
      }
      omega[m] = mat_vec(f, plan.psi_repair_inv, collected);
      outcome.tallies[m].phase1_symbols += p.d;
    }

    // Phase 2: each pair of newcomers trades one symbol, then everyone
    // solves its own alpha x alpha system.
    for (std::uint32_t m = 0; m < t; ++m) {
      NewcomerPlan& plan = plans[m];
      std::vector<Symbol> rhs = phase1_equations(p, plan.inner, omega[m]).values;
      rhs.reserve(p.alpha);
      for (std::uint32_t s = 0; s < t; ++s) {
        if (s == m) continue;
        rhs.push_back(phase2_exchange(p, plans[s].inner, plan.inner, omega[s]));
        outcome.tallies[m].phase2_symbols += 1;
      }
      const std::vector<Symbol> row = mat_vec(f, plan.h_inv, rhs);
      std::copy(row.begin(), row.end(),
                outcome.repaired[m].symbols.begin() + static_cast<std::size_t>(stripe) * p.alpha);
    }
  }
  return outcome;
}

}  // namespace mscr
