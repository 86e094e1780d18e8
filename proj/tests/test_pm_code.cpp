#include <random>

#include "doctest.h"
#include "mscr/pm_code.hpp"
#include "test_util.hpp"

using namespace mscr;
using mscr::test::random_symbols;

namespace {

// The worked GF(7) instance used throughout: (n,k,d,t) = (5,3,3,2),
// message (1..6), S = [[1,2],[2,3]], T = [[4,5],[5,6]], M = [[1,2],[6,1],[5,6]].
const std::vector<Symbol> kWorkedMessage{1, 2, 3, 4, 5, 6};

Matrix worked_m() {
  Matrix m(3, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 6;
  m(1, 1) = 1;
  m(2, 0) = 5;
  m(2, 1) = 6;
  return m;
}

}  // namespace

TEST_SUITE("pm_code") {
  TEST_CASE("generator of the worked code") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    const Matrix g = build_generator(p);
    CHECK(g.rows() == 5);
    CHECK(g.cols() == 3);
    CHECK(g(2, 0) == 1);
    CHECK(g(2, 1) == 3);
    CHECK(g(2, 2) == 2);  // 9 mod 7
    // Any d_inner rows form an invertible matrix.
    for (const auto& subset : mscr::test::combinations(p.n_inner, p.d_inner)) {
      Matrix sq(p.d_inner, p.d_inner);
      for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::uint32_t j = 0; j < p.d_inner; ++j) sq(i, j) = g(subset[i] - 1, j);
      }
      REQUIRE(determinant(p.field.field(), sq) != 0);
    }
  }

  TEST_CASE("repair vectors prefix the generator rows") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    CHECK(build_repair_vector(p, 1) == std::vector<Symbol>{1, 1});
    CHECK(build_repair_vector(p, 2) == std::vector<Symbol>{1, 2});
    CHECK(build_repair_vector(p, 3) == std::vector<Symbol>{1, 3});
    CHECK_THROWS_AS(build_repair_vector(p, 0), FieldError);
    CHECK_THROWS_AS(build_repair_vector(p, 6), FieldError);
    const Matrix g = build_generator(p);
    for (std::uint32_t i = 1; i <= p.n_inner; ++i) {
      const auto phi = build_repair_vector(p, i);
      const auto psi = build_encoding_vector(p, i);
      for (std::uint32_t j = 0; j < p.alpha; ++j) REQUIRE(phi[j] == g(i - 1, j));
      for (std::uint32_t j = 0; j < p.d_inner; ++j) REQUIRE(psi[j] == g(i - 1, j));
    }
  }

  TEST_CASE("pack_message interweaves the symmetric halves") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    const MessageMatrix m = pack_message(p, kWorkedMessage);
    CHECK(m.S.at(0, 0) == 1);
    CHECK(m.S.at(0, 1) == 2);
    CHECK(m.S.at(1, 1) == 3);
    CHECK(m.T.at(0, 0) == 4);
    CHECK(m.T.at(1, 1) == 6);
    CHECK(m.M == worked_m());
    CHECK(unpack_message(m) == kWorkedMessage);
    CHECK_THROWS_AS(pack_message(p, std::vector<Symbol>{1, 2, 3}), CodecError);
  }

  TEST_CASE("degenerate packings") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    SUBCASE("all zero") {
      const MessageMatrix m = pack_message(p, std::vector<Symbol>(6, 0));
      CHECK(m.M == Matrix(3, 2));
    }
    SUBCASE("identity S, zero T stacks S over nothing") {
      const MessageMatrix m = pack_message(p, std::vector<Symbol>{1, 0, 1, 0, 0, 0});
      Matrix expect(3, 2);
      expect(0, 0) = 1;
      expect(1, 1) = 1;
      CHECK(m.M == expect);
    }
  }

  TEST_CASE("raw encode of the worked message") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    const std::vector<Shard> shards = encode_raw(p, pack_message(p, kWorkedMessage));
    REQUIRE(shards.size() == 5);
    CHECK(shards[0].symbols == std::vector<Symbol>{5, 2});
    CHECK(shards[1].symbols == std::vector<Symbol>{5, 0});
    CHECK(shards[2].symbols == std::vector<Symbol>{1, 3});
    // Direct product oracle for every node.
    const Matrix m = worked_m();
    const PrimeField& f = p.field.field();
    for (std::uint32_t i = 1; i <= 5; ++i) {
      const auto psi = build_encoding_vector(p, i);
      for (std::uint32_t c = 0; c < p.alpha; ++c) {
        Symbol acc = 0;
        for (std::uint32_t l = 0; l < p.d_inner; ++l) acc = f.add(acc, f.mul(psi[l], m(l, c)));
        REQUIRE(shards[i - 1].symbols[c] == acc);
      }
      CHECK(shards[i - 1].node_index == i);
      CHECK(shards[i - 1].digest == p.digest());
    }
  }

  TEST_CASE("zero message encodes to zero shards") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    for (const Shard& s : encode_raw(p, pack_message(p, std::vector<Symbol>(6, 0)))) {
      CHECK(s.symbols == std::vector<Symbol>(2, 0));
    }
  }

  TEST_CASE("every node satisfies c_i = phi_i*S + a_i^mu * phi_i*T") {
    std::mt19937_64 rng(11);
    for (auto [n, k, d, t] : {std::array<std::uint32_t, 4>{5, 3, 3, 2},
                              std::array<std::uint32_t, 4>{7, 4, 5, 2},
                              std::array<std::uint32_t, 4>{8, 3, 4, 3}}) {
      const CodeParams p = derive_params(n, k, d, t);
      const PrimeField& f = p.field.field();
      for (int trial = 0; trial < 10; ++trial) {
        const auto raw = random_symbols(rng, f, static_cast<std::size_t>(p.k_inner) * p.alpha);
        const MessageMatrix m = pack_message(p, raw);
        const auto shards = encode_raw(p, m);
        for (std::uint32_t i = 1; i <= p.n_inner; ++i) {
          const auto phi = build_repair_vector(p, i);
          const Symbol a_mu = f.pow(p.field.point(i), p.mu);
          for (std::uint32_t c = 0; c < p.alpha; ++c) {
            Symbol s_part = 0, t_part = 0;
            for (std::uint32_t l = 0; l < p.alpha; ++l) {
              s_part = f.add(s_part, f.mul(phi[l], m.S.at(l, c)));
              t_part = f.add(t_part, f.mul(phi[l], m.T.at(l, c)));
            }
            REQUIRE(shards[i - 1].symbols[c] == f.add(s_part, f.mul(a_mu, t_part)));
          }
        }
      }
    }
  }

  TEST_CASE("raw encode is linear in the message") {
    const CodeParams p = derive_params(7, 4, 5, 2);
    const PrimeField& f = p.field.field();
    std::mt19937_64 rng(3);
    const std::size_t raw_len = static_cast<std::size_t>(p.k_inner) * p.alpha;
    for (int trial = 0; trial < 20; ++trial) {
      const auto m1 = random_symbols(rng, f, raw_len);
      const auto m2 = random_symbols(rng, f, raw_len);
      std::vector<Symbol> sum(raw_len);
      for (std::size_t i = 0; i < raw_len; ++i) sum[i] = f.add(m1[i], m2[i]);
      const auto e1 = encode_raw(p, pack_message(p, m1));
      const auto e2 = encode_raw(p, pack_message(p, m2));
      const auto es = encode_raw(p, pack_message(p, sum));
      for (std::uint32_t i = 0; i < p.n_inner; ++i) {
        for (std::uint32_t c = 0; c < p.alpha; ++c) {
          REQUIRE(es[i].symbols[c] == f.add(e1[i].symbols[c], e2[i].symbols[c]));
        }
      }
    }
  }
}
