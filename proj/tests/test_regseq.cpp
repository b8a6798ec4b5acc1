#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "growthdeg/regseq.hpp"
#include "zoo.hpp"

using namespace growthdeg;

namespace {

std::function<Rational(const Word&)> evaluator(const LinRep& rep) {
  return [&rep](const Word& w) { return eval(rep, w); };
}

}  // namespace

TEST_CASE("eval") {
  const LinRep s2 = zoo::s2_rep();
  CHECK(eval(s2, {}) == dot(s2.w, s2.v));
  CHECK(eval(s2, {1, 1}) == 2);
  CHECK(eval(s2, {1, 2, 1}) == 2);
  for (const auto& w : zoo::words_up_to(2, 7)) {
    REQUIRE(eval(s2, w) == zoo::digit_sum_oracle(w));
  }

  const LinRep tm = zoo::thue_morse_rep();
  CHECK(eval(tm, {1, 1, 2}) == 1);
  for (const auto& w : zoo::words_up_to(2, 8)) {
    REQUIRE(eval(tm, w) == zoo::parity_oracle(w));
  }

  CHECK_THROWS_AS(eval(s2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(eval(s2, {0}), std::invalid_argument);
}

TEST_CASE("add") {
  const LinRep s2 = zoo::s2_rep();
  SECTION("f - f vanishes") {
    const LinRep diff = add(s2, s2, -1);
    for (const auto& w : zoo::words_up_to(2, 6)) {
      REQUIRE(eval(diff, w) == 0);
    }
  }
  SECTION("f + f doubles") {
    const LinRep twice = add(s2, s2, 1);
    CHECK(eval(twice, {1, 1}) == 4);
  }
  SECTION("lambda 0 keeps f") {
    const LinRep same = add(s2, zoo::thue_morse_rep(), 0);
    for (const auto& w : zoo::words_up_to(2, 6)) {
      REQUIRE(eval(same, w) == eval(s2, w));
    }
  }
  SECTION("general linearity") {
    const Rational lambda(3, 2);
    const LinRep mix = add(s2, zoo::thue_morse_rep(), lambda);
    for (const auto& w : zoo::words_up_to(2, 5)) {
      REQUIRE(eval(mix, w) ==
              eval(s2, w) + lambda * eval(zoo::thue_morse_rep(), w));
    }
  }
  SECTION("alphabet mismatch") {
    CHECK_THROWS_AS(add(s2, zoo::fib_rep(), 1), std::invalid_argument);
  }
}

TEST_CASE("convolve pinned values") {
  const LinRep one = zoo::one_rep();
  const LinRep s2 = zoo::s2_rep();
  SECTION("1 * 1 counts the splits") {
    const LinRep c = convolve(one, one);
    for (const auto& w : zoo::words_up_to(2, 6)) {
      REQUIRE(eval(c, w) == Rational(static_cast<long>(w.size() + 1)));
    }
  }
  SECTION("s2 * 1 on \"11\"") {
    const LinRep c = convolve(s2, one);
    CHECK(eval(c, {1, 1}) == 3);  // 0 + 1 + 2
  }
  SECTION("empty word multiplies the constants") {
    const LinRep c = convolve(s2, zoo::thue_morse_rep());
    CHECK(eval(c, {}) == eval(s2, Word{}) * eval(zoo::thue_morse_rep(), Word{}));
  }
}

TEST_CASE("conv_oracle pinned values") {
  const LinRep one = zoo::one_rep();
  const LinRep s2 = zoo::s2_rep();
  CHECK(conv_oracle(evaluator(one), evaluator(one), {1, 2, 1, 2}) == 5);
  CHECK(conv_oracle(evaluator(s2), evaluator(one), {1, 1}) == 3);
  CHECK(conv_oracle(evaluator(s2), evaluator(s2), {}) ==
        eval(s2, Word{}) * eval(s2, Word{}));
}

TEST_CASE("convolve equals the oracle across the zoo") {
  const std::vector<LinRep> reps{zoo::one_rep(), zoo::thue_morse_rep(),
                                 zoo::s2_rep()};
  for (const auto& f : reps) {
    for (const auto& g : reps) {
      const LinRep c = convolve(f, g);
      for (const auto& w : zoo::words_up_to(2, 6)) {
        REQUIRE(eval(c, w) == conv_oracle(evaluator(f), evaluator(g), w));
      }
    }
  }
}

TEST_CASE("convolution ring laws at the evaluation level") {
  const LinRep one = zoo::one_rep();
  const LinRep s2 = zoo::s2_rep();
  const LinRep tm = zoo::thue_morse_rep();
  const LinRep eps = zoo::eps_rep();
  const auto words = zoo::words_up_to(2, 5);
  SECTION("eps is the unit") {
    const LinRep left = convolve(eps, s2);
    const LinRep right = convolve(s2, eps);
    for (const auto& w : words) {
      REQUIRE(eval(left, w) == eval(s2, w));
      REQUIRE(eval(right, w) == eval(s2, w));
    }
  }
  SECTION("associativity") {
    const LinRep a = convolve(convolve(s2, tm), one);
    const LinRep b = convolve(s2, convolve(tm, one));
    for (const auto& w : words) {
      REQUIRE(eval(a, w) == eval(b, w));
    }
  }
  SECTION("bilinearity over add") {
    const LinRep lhs = convolve(add(s2, tm, 2), one);
    const LinRep rhs = add(convolve(s2, one), convolve(tm, one), 2);
    for (const auto& w : words) {
      REQUIRE(eval(lhs, w) == eval(rhs, w));
    }
  }
}

TEST_CASE("convolution of tame representations stays tame") {
  const LinRep c = convolve(zoo::s2_rep(), zoo::thue_morse_rep());
  const unsigned d = static_cast<unsigned>(c.dim);
  const ProductEnumeration products =
      enumerate_products(c.matrices, 2 * c.dim, 100000);
  for (const auto& p : products.elements) {
    REQUIRE(is_tame_matrix(p, d).tame);
  }
}

TEST_CASE("minimize preserves evaluation exactly") {
  std::vector<LinRep> reps{zoo::one_rep(), zoo::thue_morse_rep(),
                           zoo::s2_rep()};
  reps.push_back(add(zoo::s2_rep(), zoo::thue_morse_rep(), Rational(2)));
  reps.push_back(convolve(zoo::s2_rep(), zoo::one_rep()));
  reps.push_back(convolve(zoo::thue_morse_rep(), zoo::s2_rep()));
  for (const auto& rep : reps) {
    const LinRep m = minimize(rep);
    REQUIRE(m.dim <= rep.dim);
    for (const auto& w : zoo::words_up_to(2, 8)) {
      REQUIRE(eval(m, w) == eval(rep, w));
    }
  }
}

TEST_CASE("minimize pinned dimensions") {
  SECTION("2 s2 still needs two dimensions") {
    const LinRep m = minimize(add(zoo::s2_rep(), zoo::s2_rep(), 1));
    CHECK(m.dim == 2);
  }
  SECTION("s2 is already minimal") {
    CHECK(minimize(zoo::s2_rep()).dim == 2);
  }
  SECTION("dead coordinate is dropped") {
    // Third coordinate is never reached from v nor seen by w.
    std::vector<Matrix> mats{Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 5}},
                             Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 7}}};
    const LinRep padded(2, {1, 0, 0}, mats, {0, 1, 0});
    const LinRep m = minimize(padded);
    CHECK(m.dim == 2);
    for (const auto& w : zoo::words_up_to(2, 6)) {
      REQUIRE(eval(m, w) == zoo::digit_sum_oracle(w));
    }
  }
  SECTION("zero sequence minimizes to the trivial rep") {
    const LinRep z(2, {1, 0},
                   {Matrix{{1, 0}, {0, 1}}, Matrix{{1, 0}, {0, 1}}}, {0, 0});
    const LinRep m = minimize(z);
    for (const auto& w : zoo::words_up_to(2, 4)) {
      REQUIRE(eval(m, w) == 0);
    }
  }
}

TEST_CASE("minimize is idempotent on the zoo") {
  for (const auto& rep :
       {zoo::s2_rep(), convolve(zoo::s2_rep(), zoo::s2_rep())}) {
    const LinRep once = minimize(rep);
    const LinRep twice = minimize(once);
    CHECK(once.dim == twice.dim);
  }
}

TEST_CASE("from_dfao") {
  SECTION("one-state automaton gives the constant sequence") {
    Dfao d;
    d.states = 1;
    d.initial = 0;
    d.transitions = {{0}, {0}};
    d.output = {1};
    const LinRep rep = from_dfao(d);
    for (const auto& w : zoo::words_up_to(2, 5)) {
      REQUIRE(eval(rep, w) == 1);
    }
  }
  SECTION("Thue-Morse automaton matches the parity oracle") {
    const LinRep rep = zoo::thue_morse_rep();
    for (const auto& w : zoo::words_up_to(2, 8)) {
      REQUIRE(eval(rep, w) == zoo::parity_oracle(w));
    }
  }
  SECTION("unreachable state is dropped by minimize") {
    Dfao d;
    d.states = 3;
    d.initial = 0;
    d.transitions = {{0, 1, 2}, {1, 0, 2}};
    d.output = {0, 1, 5};  // state 2 unreachable from 0
    const LinRep rep = from_dfao(d);
    CHECK(rep.dim == 3);
    CHECK(minimize(rep).dim == 2);
  }
  SECTION("validation") {
    Dfao bad;
    bad.states = 2;
    bad.initial = 5;
    bad.transitions = {{0, 1}};
    bad.output = {0, 1};
    CHECK_THROWS_AS(from_dfao(bad), std::invalid_argument);
  }
}

TEST_CASE("automatic sequences take finitely many values") {
  const LinRep tm = zoo::thue_morse_rep();
  std::set<Rational> values;
  for (const auto& w : zoo::words_up_to(2, 10)) {
    values.insert(eval(tm, w));
  }
  CHECK(values.size() <= 2);
}

TEST_CASE("growth_degree_seq pinned verdicts") {
  SECTION("Thue-Morse: finite degree 0") {
    const SeqGrowthReport r = growth_degree_seq(zoo::thue_morse_rep());
    CHECK(r.verdict == SeqVerdict::finite_degree);
    CHECK(r.grdeg == 0);
    CHECK(r.in_r0 == ThreeValued::yes);
    CHECK(r.minimized_dim == 2);
  }
  SECTION("digit sum: finite degree 1") {
    const SeqGrowthReport r = growth_degree_seq(zoo::s2_rep());
    CHECK(r.verdict == SeqVerdict::finite_degree);
    CHECK(r.grdeg == 1);
    // max |f| over length n is exactly n.
    for (std::size_t n = 0; n < r.max_abs.size(); ++n) {
      REQUIRE(r.max_abs[n] == Rational(static_cast<long>(n)));
    }
  }
  SECTION("Fibonacci-driven: infinite") {
    const SeqGrowthReport r = growth_degree_seq(zoo::fib_rep());
    CHECK(r.verdict == SeqVerdict::infinite_degree);
    CHECK(r.in_r0 == ThreeValued::no);
  }
  SECTION("eventually-zero sequence: degenerate") {
    const LinRep dead(2, {1, 0}, {Matrix{{0, 1}, {0, 0}}, Matrix::zero(2, 2)},
                      {1, 0});
    const SeqGrowthReport r = growth_degree_seq(dead);
    CHECK(r.verdict == SeqVerdict::degenerate);
    CHECK(r.in_r0 == ThreeValued::yes);
  }
}

TEST_CASE("finite degree iff tame pipeline iff bounded scan") {
  const std::vector<LinRep> reps{zoo::one_rep(), zoo::thue_morse_rep(),
                                 zoo::s2_rep(),
                                 convolve(zoo::s2_rep(), zoo::one_rep()),
                                 zoo::fib_rep()};
  for (const auto& rep : reps) {
    const SeqGrowthReport r = growth_degree_seq(rep);
    const LinRep m = minimize(rep);
    // Route 2: tameness of enumerated products of the minimized family.
    bool tame = true;
    for (const auto& p :
         enumerate_products(m.matrices, 2 * m.dim, 10000).elements) {
      if (!is_tame_matrix(p, static_cast<unsigned>(m.dim)).tame) {
        tame = false;
        break;
      }
    }
    REQUIRE((r.verdict == SeqVerdict::finite_degree) == tame);
    if (r.verdict == SeqVerdict::finite_degree) {
      // Route 3: the scan is bounded by the extracted c * n^degree.
      Rational c = 1;
      for (std::size_t n = 1; n < r.max_abs.size(); ++n) {
        Integer nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), n, static_cast<unsigned long>(r.grdeg));
        const Rational ratio = r.max_abs[n] / Rational(nk);
        if (ratio > c) c = ratio;
      }
      for (std::size_t n = 1; n < r.max_abs.size(); ++n) {
        Integer nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), n, static_cast<unsigned long>(r.grdeg));
        REQUIRE(r.max_abs[n] <= c * Rational(nk));
      }
    } else if (r.verdict == SeqVerdict::infinite_degree) {
      // The scan outpaces any fixed small degree on the sampled range.
      REQUIRE(r.empirical_slope.has_value());
      CHECK(*r.empirical_slope > 2.0);
    }
  }
}

TEST_CASE("convolution square of the digit sum grows with degree 3") {
  const SeqGrowthReport r =
      growth_degree_seq(convolve(zoo::s2_rep(), zoo::s2_rep()));
  CHECK(r.verdict == SeqVerdict::finite_degree);
  CHECK(r.grdeg == 3);
  REQUIRE(r.empirical_slope.has_value());
  CHECK(std::fabs(*r.empirical_slope - 3.0) < 0.3);
  // max over |w| = n of the convolution square is (n^3 - n) / 6.
  for (std::size_t n = 0; n < r.max_abs.size(); ++n) {
    const long ln = static_cast<long>(n);
    REQUIRE(r.max_abs[n] == Rational(ln * ln * ln - ln) / 6);
  }
}
