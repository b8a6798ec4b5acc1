#include <catch2/catch_amalgamated.hpp>

#include "growthdeg/tameness.hpp"
#include "zoo.hpp"

using namespace growthdeg;

TEST_CASE("cyclo_exponent pinned values") {
  // d=1: phi(m) <= 1 for m in {1,2}, lcm 2.
  CHECK(cyclo_exponent(1).bound == 2);
  // d=2 adds m in {3,4,6}: lcm 12.
  CHECK(cyclo_exponent(2).bound == 12);
  CHECK(cyclo_exponent(3).bound == 12);
  // d=4 adds m in {5,8,10,12}: lcm 120.
  CHECK(cyclo_exponent(4).bound == 120);
  CHECK_THROWS_AS(cyclo_exponent(0), std::invalid_argument);
}

TEST_CASE("cyclo_exponent divisibility up the dimensions") {
  for (unsigned d = 1; d <= 8; ++d) {
    const Integer lo = cyclo_exponent(d).bound;
    const Integer hi = cyclo_exponent(d + 1).bound;
    CAPTURE(d);
    REQUIRE(hi % lo == 0);
    REQUIRE(lo % 2 == 0);
  }
}

TEST_CASE("is_tame_matrix pinned examples") {
  CHECK(is_tame_matrix(zoo::unipotent2(), 2).tame);
  CHECK(is_tame_matrix(zoo::nilpotent2(), 2).tame);
  CHECK(is_tame_matrix(zoo::swap2(), 2).tame);

  const TamenessVerdict two = is_tame_matrix(Matrix{{2}}, 1);
  REQUIRE_FALSE(two.tame);
  REQUIRE(two.witness.has_value());
  CHECK(*two.witness == Matrix{{2}});
  CHECK(two.witness_char_poly->to_string() == "x - 2");

  // Golden-ratio eigenvalue.
  CHECK_FALSE(is_tame_matrix(zoo::fib2(), 2).tame);

  CHECK_THROWS_AS(is_tame_matrix(Matrix(2, 3), 3), DimensionError);
  CHECK_THROWS_AS(is_tame_matrix(Matrix::identity(3), 2),
                  std::invalid_argument);
}

TEST_CASE("is_tame_charpoly pinned examples") {
  CHECK(is_tame_charpoly(Polynomial({1, -2, 1}), 2));   // (x-1)^2
  CHECK_FALSE(is_tame_charpoly(Polynomial({-1, -1, 1}), 2));  // x^2 - x - 1
  CHECK(is_tame_charpoly(Polynomial({0, 0, 0, 1}), 3));  // x^3
  CHECK_THROWS_AS(is_tame_charpoly(Polynomial({1, 2}), 2),
                  std::invalid_argument);  // not monic
}

TEST_CASE("matrix and charpoly tameness tests agree on random input") {
  std::mt19937 rng(7301);
  int seen_tame = 0, seen_wild = 0;
  for (int trial = 0; trial < 220; ++trial) {
    const unsigned d = 1 + static_cast<unsigned>(trial) % 4;
    const Matrix x = zoo::random_int_matrix(rng, d, -3, 3);
    const bool via_matrix = is_tame_matrix(x, d).tame;
    const bool via_poly = is_tame_charpoly(char_poly(x), d);
    CAPTURE(trial, d);
    REQUIRE(via_matrix == via_poly);
    (via_matrix ? seen_tame : seen_wild) += 1;
  }
  // The sample must exercise both outcomes to mean anything.
  CHECK(seen_tame > 10);
  CHECK(seen_wild > 10);
}

TEST_CASE("tameness is conjugation invariant") {
  std::mt19937 rng(7302);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned d = 2 + static_cast<unsigned>(trial) % 2;
    const Matrix x = zoo::random_int_matrix(rng, d, -2, 2);
    const Matrix u = zoo::random_unimodular(rng, d);
    REQUIRE(is_tame_matrix(zoo::inverse(u) * x * u, d).tame ==
            is_tame_matrix(x, d).tame);
  }
}

TEST_CASE("tame power gap is nilpotent, uniformly in r") {
  // For tame x and a = B(d): (x^{2ar} - x^{ar})^d = 0 for r = 1..5.
  const std::vector<Matrix> tame_examples{zoo::unipotent2(), zoo::swap2(),
                                          zoo::nilpotent2()};
  for (const auto& x : tame_examples) {
    const unsigned d = static_cast<unsigned>(x.rows());
    const Integer a = cyclo_exponent(d).bound;
    for (int r = 1; r <= 5; ++r) {
      const Matrix xa = mat_pow(x, a * r);
      REQUIRE(mat_pow(xa * xa - xa, Integer(static_cast<long>(d))).is_zero());
    }
  }
}

TEST_CASE("enumerate_products dedups and closes") {
  const ProductEnumeration swap_products =
      enumerate_products({zoo::swap2()}, 10, 100);
  CHECK(swap_products.closed);
  CHECK(swap_products.elements.size() == 2);

  const ProductEnumeration unip = enumerate_products({zoo::unipotent2()}, 5, 100);
  CHECK_FALSE(unip.closed);
  CHECK(unip.elements.size() == 6);  // I, A, .., A^5

  const ProductEnumeration capped = enumerate_products({zoo::unipotent2()}, 50, 10);
  CHECK(capped.capped);
}

TEST_CASE("block_triangularize on a single unipotent generator") {
  const auto result = block_triangularize({zoo::unipotent2()});
  REQUIRE(result.has_value());
  CHECK(result->split == 1);
  CHECK(result->invariant == Subspace::span(2, {{1, 0}}));
  CHECK(result->restricted[0] == Matrix{{1}});
  CHECK(result->quotient[0] == Matrix{{1}});
}

TEST_CASE("block_triangularize returns NotFound for finite semigroups") {
  CHECK_FALSE(block_triangularize({Matrix::identity(2)}).has_value());
  CHECK_FALSE(block_triangularize({zoo::swap2()}).has_value());
}

TEST_CASE("block_triangularize on the Heisenberg pair") {
  // The images of X^{2a} - X^a land in span{e1, e2} and already span it
  // (the mixed product contributes the e2 column), so the invariant
  // subspace found is two-dimensional.
  const auto result = block_triangularize(zoo::heisenberg());
  REQUIRE(result.has_value());
  CHECK(result->split == 2);
  CHECK(result->invariant == Subspace::span(3, {{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("block_triangularize output satisfies the exact block equation") {
  const std::vector<std::vector<Matrix>> families{
      {zoo::unipotent2()},
      zoo::heisenberg(),
      {zoo::unipotent2(), Matrix::identity(2)}};
  for (const auto& gens : families) {
    const auto result = block_triangularize(gens);
    if (!result) continue;
    const std::size_t d = gens.front().rows();
    const std::size_t e = result->split;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Matrix assembled(d, d);
      for (std::size_t i = 0; i < e; ++i) {
        for (std::size_t j = 0; j < e; ++j) {
          assembled(i, j) = result->restricted[g](i, j);
        }
        for (std::size_t j = 0; j < d - e; ++j) {
          assembled(i, e + j) = result->coupling[g](i, j);
        }
      }
      for (std::size_t i = 0; i < d - e; ++i) {
        for (std::size_t j = 0; j < d - e; ++j) {
          assembled(e + i, e + j) = result->quotient[g](i, j);
        }
      }
      REQUIRE(gens[g] * result->basis_change ==
              result->basis_change * assembled);
    }
  }
}

TEST_CASE("block_triangularize rejects non-tame generators with a witness") {
  try {
    block_triangularize({zoo::fib2()});
    FAIL("expected NotTameError");
  } catch (const NotTameError& e) {
    REQUIRE(e.verdict.witness.has_value());
    CHECK(*e.verdict.witness == zoo::fib2());
    CHECK(e.verdict.witness_char_poly->to_string() == "x^2 - x - 1");
  }
}
