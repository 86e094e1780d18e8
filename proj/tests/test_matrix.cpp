#include <random>

#include "doctest.h"
#include "mscr/matrix.hpp"
#include "test_util.hpp"

using namespace mscr;
using mscr::test::combinations;
using mscr::test::naive_determinant;
using mscr::test::random_symbols;

TEST_SUITE("matrix") {
  TEST_CASE("vandermonde worked cases") {
    PrimeField f(7);
    const Matrix a = vandermonde(f, std::vector<Symbol>{1, 2, 3}, 2);
    CHECK(a.rows() == 3);
    CHECK(a.cols() == 2);
    CHECK(a(0, 0) == 1);
    CHECK(a(0, 1) == 1);
    CHECK(a(1, 1) == 2);
    CHECK(a(2, 1) == 3);

    const Matrix b = vandermonde(f, std::vector<Symbol>{3}, 3);
    CHECK(b(0, 0) == 1);
    CHECK(b(0, 1) == 3);
    CHECK(b(0, 2) == 2);  // 9 mod 7

    CHECK_THROWS_AS(vandermonde(f, std::vector<Symbol>{2, 2}, 2), LinalgError);
    CHECK_THROWS_AS(vandermonde(f, std::vector<Symbol>{0, 1}, 2), LinalgError);
  }

  TEST_CASE("square vandermonde on distinct points is invertible, exhaustive GF(7) and GF(11)") {
    for (Symbol p : {7u, 11u}) {
      PrimeField f(p);
      for (std::uint32_t m = 1; m < p; ++m) {
        for (const auto& subset : combinations(p - 1, m)) {
          std::vector<Symbol> points(subset.begin(), subset.end());
          const Matrix v = vandermonde(f, points, m);
          const Symbol det = determinant(f, v);
          REQUIRE(det != 0);
          if (m <= 4) REQUIRE(det == naive_determinant(f, v));
        }
      }
    }
  }

  TEST_CASE("solve_system worked cases") {
    PrimeField f(7);
    SUBCASE("identity") {
      const Matrix id = Matrix::identity(3);
      Matrix b(3, 2);
      b(0, 0) = 4;
      b(1, 1) = 6;
      b(2, 0) = 2;
      CHECK(solve_system(f, id, b) == b);
    }
    SUBCASE("the worked repair system") {
      Matrix a(2, 2);
      a(0, 0) = 1;
      a(0, 1) = 1;
      a(1, 0) = 1;
      a(1, 1) = 2;
      Matrix b(2, 1);
      b(0, 0) = 0;
      b(1, 0) = 2;
      const Matrix x = solve_system(f, a, b);
      CHECK(x(0, 0) == 5);
      CHECK(x(1, 0) == 2);
    }
    SUBCASE("singular matrix names the first dependent row") {
      Matrix a(2, 2);
      a(0, 0) = 1;
      a(0, 1) = 1;
      a(1, 0) = 2;
      a(1, 1) = 2;
      try {
        solve_system(f, a, Matrix(2, 1));
        FAIL("expected RankError");
      } catch (const RankError& e) {
        CHECK(e.dependent_row() == 1);
      }
    }
  }

  TEST_CASE("solve_system inverts multiplication for random systems over GF(7)") {
    PrimeField f(7);
    std::mt19937_64 rng(42);
    for (std::size_t m = 1; m <= 4; ++m) {
      int solved = 0;
      while (solved < 200) {
        Matrix a(m, m);
        for (std::size_t i = 0; i < m; ++i) {
          const auto row = random_symbols(rng, f, m);
          for (std::size_t j = 0; j < m; ++j) a(i, j) = row[j];
        }
        if (determinant(f, a) == 0) continue;
        Matrix x(m, 2);
        for (std::size_t i = 0; i < m; ++i) {
          const auto row = random_symbols(rng, f, 2);
          x(i, 0) = row[0];
          x(i, 1) = row[1];
        }
        REQUIRE(solve_system(f, a, mat_mul(f, a, x)) == x);
        ++solved;
      }
    }
  }

  TEST_CASE("invert agrees with solve and multiplies back to identity") {
    PrimeField f(11);
    const Matrix v = vandermonde(f, std::vector<Symbol>{1, 2, 3, 4}, 4);
    const Matrix inv = invert(f, v);
    CHECK(mat_mul(f, v, inv) == Matrix::identity(4));
    CHECK(mat_mul(f, inv, v) == Matrix::identity(4));
  }

  TEST_CASE("symmetric pack worked cases") {
    const SymmetricMatrix s = SymmetricMatrix::pack(2, std::vector<Symbol>{1, 2, 3});
    CHECK(s.at(0, 0) == 1);
    CHECK(s.at(0, 1) == 2);
    CHECK(s.at(1, 0) == 2);
    CHECK(s.at(1, 1) == 3);

    const SymmetricMatrix t = SymmetricMatrix::pack(2, std::vector<Symbol>{4, 5, 6});
    CHECK(t.at(1, 0) == 5);
    CHECK(t.at(1, 1) == 6);

    const SymmetricMatrix scalar = SymmetricMatrix::pack(1, std::vector<Symbol>{2});
    CHECK(scalar.at(0, 0) == 2);

    CHECK_THROWS_AS(SymmetricMatrix::pack(2, std::vector<Symbol>{1, 2}), LinalgError);
  }

  TEST_CASE("pack then unpack is the identity for dims up to 8") {
    PrimeField f(101);
    std::mt19937_64 rng(7);
    for (std::size_t dim = 1; dim <= 8; ++dim) {
      const auto symbols = random_symbols(rng, f, dim * (dim + 1) / 2);
      const SymmetricMatrix s = SymmetricMatrix::pack(dim, symbols);
      CHECK(s.unpack() == symbols);
      const Matrix dense = s.dense();
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) REQUIRE(dense(i, j) == dense(j, i));
      }
    }
  }
}
