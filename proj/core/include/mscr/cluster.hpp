#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mscr/systematic.hpp"

namespace mscr {

enum class HelperPolicy {
  lowest_index,  // every newcomer takes the d lowest-indexed survivors
  round_robin,   // newcomers start at staggered offsets in the survivor ring
};

struct TrafficRecord {
  std::uint32_t phase = 0;  // 1 or 2
  std::uint32_t sender = 0;
  std::uint32_t receiver = 0;
  std::uint64_t symbols = 0;

  bool operator==(const TrafficRecord&) const = default;
};

struct BandwidthReport {
  struct PerNewcomer {
    std::uint32_t node = 0;
    std::uint64_t phase1 = 0;
    std::uint64_t phase2 = 0;
  };
  std::vector<PerNewcomer> newcomers;
  std::uint64_t total_symbols = 0;
  std::uint64_t expected_per_newcomer = 0;  // d + t - 1
  bool pass = false;
};

/// In-process cluster: n slots holding shards, failure injection, repair
/// orchestration and symbol-level traffic metering. Deterministic for a
/// fixed (params, message, seed, policy).
class Cluster {
 public:
  Cluster(CodeParams params, std::span<const Symbol> message, std::uint64_t seed = 0);

  const CodeParams& params() const { return params_; }

  bool alive(std::uint32_t node) const;
  const Shard& shard(std::uint32_t node) const;
  std::vector<std::uint32_t> failed_nodes() const;

  /// Marks the slots failed and erases their data. Failing more than t
  /// nodes in total is rejected: that exceeds what the code can repair.
  void fail_nodes(std::span<const std::uint32_t> nodes);

  /// Seeded random failure injection; returns the chosen nodes.
  std::vector<std::uint32_t> fail_random(std::uint32_t count);

  /// Two-phase cooperative repair of the currently failed set, which must
  /// have exactly t members (operators batch failures up to t). All Phase-1
  /// transfers are logged before any Phase-2 exchange.
  void run_cooperative_repair(HelperPolicy policy = HelperPolicy::lowest_index);

  /// Audits the traffic of the last completed repair session against the
  /// optimum: every newcomer downloads exactly d + t - 1 symbols, and every
  /// node stores exactly alpha symbols per stripe.
  BandwidthReport audit_bandwidth() const;

  /// Decodes the current cluster contents from the given node set.
  std::vector<Symbol> decode_from(std::span<const std::uint32_t> nodes) const;

  std::span<const TrafficRecord> traffic_log() const { return traffic_; }

  /// One record per line: `phase,sender,receiver,symbols`.
  void export_traffic_log(std::ostream& os) const;

  /// Test hook: appends a bogus record so audits can be exercised on a
  /// tampered log.
  void inject_traffic_record_for_test(const TrafficRecord& record);

 private:
  CodeParams params_;
  SystematicCodec codec_;
  std::vector<std::optional<Shard>> slots_;  // index 0 unused
  std::vector<TrafficRecord> traffic_;
  std::size_t session_begin_ = 0;
  std::vector<std::uint32_t> session_newcomers_;
  bool repair_completed_ = false;
  std::mt19937_64 rng_;
};

}  // namespace mscr
