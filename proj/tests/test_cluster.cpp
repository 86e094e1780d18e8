#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mscr/cluster.hpp"
#include "test_util.hpp"

using namespace mscr;
using mscr::test::combinations;
using mscr::test::random_symbols;

namespace {

const std::vector<Symbol> kMessage{1, 2, 3, 4, 5, 6};

Cluster worked_cluster(std::uint64_t seed = 0) {
  return Cluster(derive_params(5, 3, 3, 2), kMessage, seed);
}

}  // namespace

TEST_SUITE("cluster") {
  TEST_CASE("creation populates systematic shards") {
    Cluster c = worked_cluster();
    CHECK(c.shard(1).symbols == std::vector<Symbol>{1, 2});  // m_1 verbatim
    CHECK(c.shard(2).symbols == std::vector<Symbol>{3, 4});
    CHECK(c.decode_from(std::vector<std::uint32_t>{2, 4, 5}) == kMessage);

    Cluster zero(derive_params(5, 3, 3, 2), std::vector<Symbol>(6, 0));
    for (std::uint32_t i = 1; i <= 5; ++i) {
      CHECK(zero.shard(i).symbols == std::vector<Symbol>(2, 0));
    }
  }

  TEST_CASE("failure injection respects the capability bound") {
    Cluster c = worked_cluster();
    c.fail_nodes(std::vector<std::uint32_t>{});  // no-op
    CHECK(c.failed_nodes().empty());
    c.fail_nodes(std::vector<std::uint32_t>{1, 2});
    CHECK(c.failed_nodes() == std::vector<std::uint32_t>{1, 2});
    CHECK_FALSE(c.alive(1));
    CHECK_THROWS_AS(c.shard(1), CodecError);
    CHECK_THROWS_AS(c.fail_nodes(std::vector<std::uint32_t>{3}), CodecError);

    Cluster fresh = worked_cluster();
    CHECK_THROWS_WITH_AS(fresh.fail_nodes(std::vector<std::uint32_t>{1, 2, 3}),
                         doctest::Contains("exceed t"), CodecError);
    CHECK_THROWS_AS(fresh.fail_nodes(std::vector<std::uint32_t>{4, 4}), CodecError);
  }

  TEST_CASE("worked repair restores the cluster and meters the optimum") {
    Cluster c = worked_cluster();
    Cluster original = worked_cluster();
    c.fail_nodes(std::vector<std::uint32_t>{1, 2});
    c.run_cooperative_repair();
    for (std::uint32_t i = 1; i <= 5; ++i) {
      REQUIRE(c.shard(i).symbols == original.shard(i).symbols);
    }
    const BandwidthReport report = c.audit_bandwidth();
    CHECK(report.pass);
    CHECK(report.expected_per_newcomer == 4);  // d + t - 1
    CHECK(report.total_symbols == 8);
    for (const auto& entry : report.newcomers) {
      CHECK(entry.phase1 == 3);
      CHECK(entry.phase2 == 1);
    }
    // One record per symbol: t * (d + t - 1) of them.
    CHECK(c.traffic_log().size() == 8);
  }

  TEST_CASE("every failure pair restores identically") {
    for (const auto& failed : combinations(5, 2)) {
      Cluster c = worked_cluster();
      Cluster original = worked_cluster();
      c.fail_nodes(failed);
      c.run_cooperative_repair();
      for (std::uint32_t i = 1; i <= 5; ++i) {
        REQUIRE(c.shard(i).symbols == original.shard(i).symbols);
      }
      REQUIRE(c.audit_bandwidth().pass);
    }
  }

  TEST_CASE("round-robin helper policy also restores") {
    const CodeParams p = derive_params(8, 3, 4, 3);
    std::mt19937_64 rng(7);
    const auto message = random_symbols(rng, p.field.field(), p.message_len);
    for (const auto& failed : combinations(8, 3)) {
      Cluster c(p, message);
      Cluster original(p, message);
      c.fail_nodes(failed);
      c.run_cooperative_repair(HelperPolicy::round_robin);
      for (std::uint32_t i = 1; i <= 8; ++i) {
        REQUIRE(c.shard(i).symbols == original.shard(i).symbols);
      }
      REQUIRE(c.audit_bandwidth().pass);
    }
  }

  TEST_CASE("repair preconditions") {
    Cluster c = worked_cluster();
    SUBCASE("needs exactly t failures") {
      c.fail_nodes(std::vector<std::uint32_t>{1});
      CHECK_THROWS_WITH_AS(c.run_cooperative_repair(), doctest::Contains("batch failures"),
                           CodecError);
    }
    SUBCASE("audits need a completed session") {
      CHECK_THROWS_AS(c.audit_bandwidth(), CodecError);
    }
  }

  TEST_CASE("repair rejects clusters with fewer than d survivors") {
    // (6,4,5,2) is a valid code whose repair needs 5 helpers, but two
    // failures leave only 4 survivors.
    const CodeParams p = derive_params(6, 4, 5, 2);
    std::mt19937_64 rng(3);
    Cluster c(p, random_symbols(rng, p.field.field(), p.message_len));
    c.fail_nodes(std::vector<std::uint32_t>{1, 2});
    CHECK_THROWS_WITH_AS(c.run_cooperative_repair(), doctest::Contains("insufficient survivors"),
                         CodecError);
  }

  TEST_CASE("deterministic under a fixed seed") {
    Cluster a = worked_cluster(1234);
    Cluster b = worked_cluster(1234);
    const auto failed_a = a.fail_random(2);
    const auto failed_b = b.fail_random(2);
    REQUIRE(failed_a == failed_b);
    a.run_cooperative_repair();
    b.run_cooperative_repair();
    REQUIRE(std::vector<TrafficRecord>(a.traffic_log().begin(), a.traffic_log().end()) ==
            std::vector<TrafficRecord>(b.traffic_log().begin(), b.traffic_log().end()));
    for (std::uint32_t i = 1; i <= 5; ++i) {
      REQUIRE(a.shard(i).symbols == b.shard(i).symbols);
    }
  }

  TEST_CASE("phase-1 records precede phase-2 records in generation order") {
    Cluster c = worked_cluster();
    c.fail_nodes(std::vector<std::uint32_t>{2, 4});
    c.run_cooperative_repair();
    const auto log = c.traffic_log();
    // Ascending newcomer then ascending helper within phase 1.
    REQUIRE(log.size() == 8);
    for (std::size_t i = 0; i < 6; ++i) CHECK(log[i].phase == 1);
    CHECK(log[0].receiver == 2);
    CHECK(log[0].sender == 1);
    CHECK(log[3].receiver == 4);
    for (std::size_t i = 6; i < 8; ++i) CHECK(log[i].phase == 2);
  }

  TEST_CASE("traffic export format") {
    Cluster c = worked_cluster();
    c.fail_nodes(std::vector<std::uint32_t>{1, 2});
    c.run_cooperative_repair();
    std::ostringstream os;
    c.export_traffic_log(os);
    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) {
      CAPTURE(line);
      REQUIRE(std::count(line.begin(), line.end(), ',') == 3);
      ++lines;
    }
    CHECK(lines == 8);
    CHECK(os.str().substr(0, 6) == "1,3,1,");
  }

  TEST_CASE("a tampered log fails the audit") {
    Cluster c = worked_cluster();
    c.fail_nodes(std::vector<std::uint32_t>{1, 2});
    c.run_cooperative_repair();
    REQUIRE(c.audit_bandwidth().pass);
    c.inject_traffic_record_for_test({1, 3, 1, 1});
    CHECK_FALSE(c.audit_bandwidth().pass);
  }

  TEST_CASE("message length is validated") {
    CHECK_THROWS_AS(Cluster(derive_params(5, 3, 3, 2), std::vector<Symbol>(5, 0)), CodecError);
  }
}
