#include "mscr/cluster.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <unordered_set>

#include "mscr/repair.hpp"

namespace mscr {

Cluster::Cluster(CodeParams params, std::span<const Symbol> message, std::uint64_t seed)
    : params_(std::move(params)), codec_(params_), rng_(seed) {
  if (message.size() != params_.message_len) {
    throw CodecError("cluster holds one stripe: message must have " +
                     std::to_string(params_.message_len) + " symbols");
  }
  std::vector<Shard> shards = codec_.encode(message);
  slots_.resize(params_.n + 1);
  for (Shard& s : shards) slots_[s.node_index] = std::move(s);
}

bool Cluster::alive(std::uint32_t node) const {
  if (node == 0 || node > params_.n) throw CodecError("node index out of range");
  return slots_[node].has_value();
}

const Shard& Cluster::shard(std::uint32_t node) const {
  if (!alive(node)) throw CodecError("node " + std::to_string(node) + " is failed");
  return *slots_[node];
}

std::vector<std::uint32_t> Cluster::failed_nodes() const {
  std::vector<std::uint32_t> failed;
  for (std::uint32_t i = 1; i <= params_.n; ++i) {
    if (!slots_[i].has_value()) failed.push_back(i);
  }
  return failed;
}

void Cluster::fail_nodes(std::span<const std::uint32_t> nodes) {
  std::unordered_set<std::uint32_t> request(nodes.begin(), nodes.end());
  if (request.size() != nodes.size()) throw CodecError("duplicate node in failure set");
  for (std::uint32_t node : nodes) {
    if (!alive(node)) throw CodecError("node " + std::to_string(node) + " is already failed");
  }
  if (failed_nodes().size() + nodes.size() > params_.t) {
    throw CodecError("failing " + std::to_string(nodes.size()) + " more nodes would exceed t = " +
                     std::to_string(params_.t) + ", the code's repair capability");
  }
  for (std::uint32_t node : nodes) slots_[node].reset();
  if (!nodes.empty()) repair_completed_ = false;
}

std::vector<std::uint32_t> Cluster::fail_random(std::uint32_t count) {
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 1; i <= params_.n; ++i) {
    if (slots_[i].has_value()) candidates.push_back(i);
  }
  if (count > candidates.size()) throw CodecError("not enough alive nodes to fail");
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t c = 0; c < count; ++c) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t at = pick(rng_);
    chosen.push_back(candidates[at]);
    candidates.erase(candidates.begin() + at);
  }
  std::sort(chosen.begin(), chosen.end());
  fail_nodes(chosen);
  return chosen;
}

void Cluster::run_cooperative_repair(HelperPolicy policy) {
  const std::vector<std::uint32_t> failed = failed_nodes();
  if (failed.size() != params_.t) {
    throw CodecError("cooperative repair needs exactly t = " + std::to_string(params_.t) +
                     " failed nodes (have " + std::to_string(failed.size()) +
                     "); batch failures to t");
  }
  std::vector<std::uint32_t> survivors;
  for (std::uint32_t i = 1; i <= params_.n; ++i) {
    if (slots_[i].has_value()) survivors.push_back(i);
  }
  if (survivors.size() < params_.d) {
    throw CodecError("insufficient survivors: need d = " + std::to_string(params_.d) +
                     " helpers, have " + std::to_string(survivors.size()));
  }

  const std::uint32_t t = params_.t;
  std::vector<std::vector<std::uint32_t>> helper_sets(t);
  for (std::uint32_t m = 0; m < t; ++m) {
    if (policy == HelperPolicy::lowest_index) {
      helper_sets[m].assign(survivors.begin(), survivors.begin() + params_.d);
    } else {
      // Stagger the starting survivor per newcomer so repeated repairs
      // exercise helper-set independence.
      for (std::uint32_t j = 0; j < params_.d; ++j) {
        helper_sets[m].push_back(survivors[(m + j) % survivors.size()]);
      }
      std::sort(helper_sets[m].begin(), helper_sets[m].end());
    }
  }

  session_begin_ = traffic_.size();
  session_newcomers_ = failed;

  // Phase 1: ascending newcomer, then ascending helper.
  std::vector<std::vector<Symbol>> omega(t);
  for (std::uint32_t m = 0; m < t; ++m) {
    const std::uint32_t newcomer = failed[m];
    const std::uint32_t newcomer_inner = params_.inner_index(newcomer);
    std::vector<std::uint32_t> helpers_inner;
    std::vector<Symbol> symbols;
    for (std::uint32_t helper : helper_sets[m]) {
      const Symbol sym = helper_symbol(params_, slots_[helper]->symbols, newcomer_inner);
      traffic_.push_back({1, helper, newcomer, 1});
      helpers_inner.push_back(params_.inner_index(helper));
      symbols.push_back(sym);
    }
    omega[m] = recover_m_phi(params_, newcomer_inner, helpers_inner, symbols);
  }

  // Phase 2: ascending receiver, then ascending sender.
  std::vector<std::uint32_t> failed_inner;
  for (std::uint32_t idx : failed) failed_inner.push_back(params_.inner_index(idx));
  std::vector<Shard> repaired(t);
  for (std::uint32_t m = 0; m < t; ++m) {
    const std::uint32_t newcomer = failed[m];
    const std::uint32_t newcomer_inner = failed_inner[m];
    Phase1Equations eq = phase1_equations(params_, newcomer_inner, omega[m]);
    std::vector<Symbol> rhs = std::move(eq.values);
    for (std::uint32_t s = 0; s < t; ++s) {
      if (s == m) continue;
      rhs.push_back(phase2_exchange(params_, failed_inner[s], newcomer_inner, omega[s]));
      traffic_.push_back({2, failed[s], newcomer, 1});
    }
    const Matrix h = assemble_newcomer_system(params_, newcomer_inner, failed_inner);
    repaired[m].node_index = newcomer;
    repaired[m].stripes = 1;
    repaired[m].symbols = solve_newcomer(params_, newcomer_inner, h, rhs);
    repaired[m].digest = params_.digest();
  }

  for (Shard& s : repaired) slots_[s.node_index] = std::move(s);
  repair_completed_ = true;
}

BandwidthReport Cluster::audit_bandwidth() const {
  if (!repair_completed_) throw CodecError("no completed repair session to audit");

  BandwidthReport report;
  report.expected_per_newcomer = params_.d + params_.t - 1;
  for (std::uint32_t newcomer : session_newcomers_) {
    BandwidthReport::PerNewcomer entry;
    entry.node = newcomer;
    for (std::size_t i = session_begin_; i < traffic_.size(); ++i) {
      const TrafficRecord& rec = traffic_[i];
      if (rec.receiver != newcomer) continue;
      if (rec.phase == 1) entry.phase1 += rec.symbols;
      if (rec.phase == 2) entry.phase2 += rec.symbols;
    }
    report.newcomers.push_back(entry);
  }

  bool pass = true;
  for (const auto& entry : report.newcomers) {
    report.total_symbols += entry.phase1 + entry.phase2;
    pass &= entry.phase1 == params_.d;
    pass &= entry.phase2 == params_.t - 1;
  }
  // Storage must sit at the minimum: alpha symbols per node per stripe.
  for (std::uint32_t i = 1; i <= params_.n; ++i) {
    if (slots_[i].has_value()) {
      pass &= slots_[i]->symbols.size() ==
              static_cast<std::size_t>(slots_[i]->stripes) * params_.alpha;
    }
  }
  report.pass = pass;
  return report;
}

std::vector<Symbol> Cluster::decode_from(std::span<const std::uint32_t> nodes) const {
  std::vector<Shard> shards;
  for (std::uint32_t node : nodes) shards.push_back(shard(node));
  return codec_.decode(shards);
}

void Cluster::export_traffic_log(std::ostream& os) const {
  for (const TrafficRecord& rec : traffic_) {
    os << rec.phase << ',' << rec.sender << ',' << rec.receiver << ',' << rec.symbols << '\n';
  }
}

void Cluster::inject_traffic_record_for_test(const TrafficRecord& record) {
  traffic_.push_back(record);
}

}  // namespace mscr
