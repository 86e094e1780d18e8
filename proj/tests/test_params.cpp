#include "doctest.h"
#include "mscr/params.hpp"

using namespace mscr;

TEST_SUITE("params") {
  TEST_CASE("worked derivation without shortening") {
    const CodeParams p = derive_params(5, 3, 3, 2);
    CHECK(p.alpha == 2);
    CHECK(p.message_len == 6);
    CHECK(p.delta == 0);
    CHECK(p.n_inner == 5);
    CHECK(p.k_inner == 3);
    CHECK(p.d_inner == 3);
    CHECK(p.mu == 1);
    CHECK(p.z == 3);
    CHECK(p.r == 0);
    CHECK(p.field.field().modulus() == 7);
    CHECK(p.field.points().size() == 5);
  }

  TEST_CASE("worked derivation with shortening lift") {
    const CodeParams p = derive_params(10, 4, 8, 2);
    CHECK(p.alpha == 6);
    CHECK(p.message_len == 24);
    CHECK(p.delta == 3);
    CHECK(p.n_inner == 13);
    CHECK(p.k_inner == 7);
    CHECK(p.d_inner == 11);
    CHECK(p.mu == 5);
    CHECK(p.z == 2);
    CHECK(p.r == 1);
  }

  TEST_CASE("distinct diagnostics per rejection") {
    CHECK_THROWS_WITH_AS(derive_params(6, 4, 4, 2), doctest::Contains("below max{2k-1-t, k}"),
                         ParamError);
    CHECK_THROWS_WITH_AS(derive_params(6, 4, 5, 1), doctest::Contains("below 2"), ParamError);
    CHECK_THROWS_WITH_AS(derive_params(6, 4, 5, 3), doctest::Contains("exceeds n - k"),
                         ParamError);
    CHECK_THROWS_WITH_AS(derive_params(6, 1, 5, 2), doctest::Contains("below the minimum of 2"),
                         ParamError);
    CHECK_THROWS_AS(derive_params(0, 3, 3, 2), ParamError);
  }

  TEST_CASE("modulus override paths") {
    SUBCASE("valid override") {
      const CodeParams p = derive_params(5, 3, 3, 2, {.modulus = 11});
      CHECK(p.field.field().modulus() == 11);
      CHECK(p.field.point(5) == 5);
    }
    SUBCASE("composite override") {
      CHECK_THROWS_AS(derive_params(5, 3, 3, 2, {.modulus = 6}), FieldError);
    }
    SUBCASE("too few residues for the point count") {
      CHECK_THROWS_WITH_AS(derive_params(5, 3, 3, 2, {.modulus = 5}),
                           doctest::Contains("fewer than"), FieldError);
    }
    SUBCASE("distinct-power shortage") {
      // (7,4,5,2) lifts to mu = 2; GF(11) has only five distinct squares.
      CHECK_THROWS_WITH_AS(derive_params(7, 4, 5, 2, {.modulus = 11}),
                           doctest::Contains("distinct powers"), FieldError);
    }
  }

  TEST_CASE("minimum modulus steers automatic selection") {
    const CodeParams p = derive_params(5, 3, 3, 2, {.min_modulus = 257});
    CHECK(p.field.field().modulus() == 257);
  }

  TEST_CASE("lift identities hold across the whole acceptance grid") {
    for (std::uint32_t n = 2; n <= 10; ++n) {
      for (std::uint32_t k = 2; k <= 6; ++k) {
        for (std::uint32_t d = 1; d <= n + 2; ++d) {
          for (std::uint32_t t = 1; t <= 4; ++t) {
            std::optional<CodeParams> derived;
            try {
              derived = derive_params(n, k, d, t);
            } catch (const Error&) {
              continue;
            }
            const CodeParams& p = *derived;
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(d);
            CAPTURE(t);
            REQUIRE(p.alpha == d - k + t);
            REQUIRE(p.message_len == k * p.alpha);
            REQUIRE(p.d_inner == 2 * p.k_inner - 1 - t);
            REQUIRE(t <= p.k_inner - 1);
            REQUIRE(p.mu == p.k_inner - t);
            REQUIRE(p.alpha == (p.z - 1) * p.mu + p.r);
            REQUIRE(p.r < p.mu);
            REQUIRE(p.field.points().size() == p.n_inner);
            REQUIRE(p.field.field().modulus() >= p.n_inner + 1);
          }
        }
      }
    }
  }
}
