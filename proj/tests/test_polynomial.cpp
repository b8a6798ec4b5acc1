#include <catch2/catch_amalgamated.hpp>

#include "growthdeg/polynomial.hpp"
#include "zoo.hpp"

using namespace growthdeg;

TEST_CASE("char_poly on pinned examples") {
  CHECK(char_poly(Matrix::identity(2)) ==
        Polynomial({1, -2, 1}));  // x^2 - 2x + 1
  CHECK(char_poly(zoo::swap2()) == Polynomial({-1, 0, 1}));  // x^2 - 1
  // 2x2 cofactor expansion: det(xI - [[1,1],[1,0]]) = x^2 - x - 1.
  CHECK(char_poly(zoo::fib2()) == Polynomial({-1, -1, 1}));
  CHECK(char_poly(Matrix()) == Polynomial::one());
  CHECK_THROWS_AS(char_poly(Matrix(2, 3)), DimensionError);
}

TEST_CASE("char_poly matches the cofactor oracle on random matrices") {
  std::mt19937 rng(7101);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const Matrix a = zoo::random_int_matrix(rng, d, -4, 4);
    REQUIRE(char_poly(a) == zoo::char_poly_oracle(a));
  }
}

TEST_CASE("char_poly is monic of full degree") {
  std::mt19937 rng(7102);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + trial % 5;
    const Polynomial p = char_poly(zoo::random_int_matrix(rng, d, -3, 3));
    REQUIRE(p.degree() == static_cast<int>(d));
    REQUIRE(p.is_monic());
  }
}

TEST_CASE("char_poly is conjugation invariant") {
  std::mt19937 rng(7103);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const Matrix a = zoo::random_int_matrix(rng, d, -3, 3);
    const Matrix u = zoo::random_unimodular(rng, d);
    REQUIRE(char_poly(zoo::inverse(u) * a * u) == char_poly(a));
  }
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial x = Polynomial::x();
  const Polynomial p = (x - Polynomial::one()) * (x + Polynomial::one());
  CHECK(p == Polynomial({-1, 0, 1}));
  CHECK(p.eval(3) == 8);
  CHECK(p.derivative() == Polynomial({0, 2}));
  CHECK(Polynomial().degree() == -1);
  CHECK(Polynomial({0}).is_zero());
}

TEST_CASE("divmod, gcd, squarefree part") {
  const Polynomial x = Polynomial::x();
  const Polynomial one = Polynomial::one();
  const Polynomial p = (x - one) * (x - one) * (x + one);
  const auto [q, r] = Polynomial::divmod(p, x - one);
  CHECK(r.is_zero());
  CHECK(q == (x - one) * (x + one));
  CHECK((x - one).divides(p));
  CHECK_FALSE((x - Polynomial::constant(2)).divides(p));
  CHECK(gcd(p, p.derivative()) == x - one);
  CHECK(squarefree_part(p) == (x - one) * (x + one));
  CHECK(squarefree_part(Polynomial::constant(5)) == one);
  CHECK_THROWS_AS(Polynomial::divmod(p, Polynomial()), std::invalid_argument);
}

TEST_CASE("powmod") {
  const Polynomial x = Polynomial::x();
  const Polynomial mod = Polynomial({-1, 0, 1});  // x^2 - 1
  CHECK(powmod(x, 5, mod) == x);
  CHECK(powmod(x, 4, mod) == Polynomial::one());
  CHECK(powmod(x, 0, mod) == Polynomial::one());
  // Degree-zero modulus collapses everything.
  CHECK(powmod(x, 3, Polynomial::constant(2)).is_zero());
}

TEST_CASE("to_string formatting") {
  CHECK(char_poly(zoo::fib2()).to_string() == "x^2 - x - 1");
  CHECK(Polynomial({Rational(1), Rational(-3, 2), Rational(1)}).to_string() ==
        "x^2 - 3/2*x + 1");
  CHECK(Polynomial().to_string() == "0");
}
