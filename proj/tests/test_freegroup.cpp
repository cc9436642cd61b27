#include <doctest.h>

#include <stdexcept>
#include <random>

#include "bft/freegroup.hpp"

using namespace bft;

TEST_CASE("free reduction") {
  CHECK(reduce_word(2, std::vector<Letter>{1, -1}).empty());
  CHECK(reduce_word(2, std::vector<Letter>{1, 2, -2, 1}).letters() == std::vector<Letter>{1, 1});
  CHECK_THROWS_AS(FreeWord(2, std::vector<Letter>{3}), std::out_of_range);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    std::vector<Letter> w;
    for (int l = 0; l < 12; ++l) w.push_back(std::uniform_int_distribution<int>(1, 3)(rng) * (rng() % 2 ? 1 : -1));
    const FreeWord f(3, w);
    CHECK((f * f.inverse()).empty());
  }
}

TEST_CASE("parse and print") {
  const FreeWord w = parse_free_word(3, "x3 x1^-1");
  CHECK(w.letters() == std::vector<Letter>{3, -1});
  CHECK(w.str() == "x3 x1^-1");
  CHECK(parse_free_word(2, "1").empty());
  CHECK(FreeWord(2).str() == "1");
  CHECK_THROWS(parse_free_word(2, "y1"));
}

TEST_CASE("noncommutative polynomials") {
  const int D = 2;
  auto one = NCPolynomial::constant(2, D, 1);
  auto X1 = NCPolynomial::variable(2, D, 1), X2 = NCPolynomial::variable(2, D, 2);
  CHECK((one + X1) * (one - X1 + X1 * X1) == one);
  CHECK(X1 * one == X1);
  auto p = (one + X1) * (one + X2);
  CHECK(p.coefficient({1, 2}) == 1);
  CHECK(p.coefficient({2, 1}) == 0);
  CHECK(p.term_count() == 4);
}

TEST_CASE("monomial order") {
  CHECK(monomial_compare({1}, {2}) < 0);
  CHECK(monomial_compare({2}, {1, 1}) < 0);
  CHECK(monomial_compare({1, 2}, {2, 1}) < 0);
  CHECK(monomial_compare({1, 2}, {1, 2}) == 0);
}

TEST_CASE("Magnus expansion") {
  CHECK(magnus_truncated(FreeWord(2), 3) == NCPolynomial::constant(2, 3, 1));
  CHECK(magnus_truncated(parse_free_word(2, "x1"), 1) ==
        NCPolynomial::constant(2, 1, 1) + NCPolynomial::variable(2, 1, 1));
  NCPolynomial expected = NCPolynomial::constant(2, 2, 1);
  expected.add_term({1, 2}, 1);
  expected.add_term({2, 1}, -1);
  CHECK(magnus_truncated(parse_free_word(2, "x1 x2 x1^-1 x2^-1"), 2) == expected);
}

TEST_CASE("Magnus sign") {
  CHECK(magnus_sign(FreeWord(2)) == Sign::zero);
  CHECK(magnus_sign(parse_free_word(2, "x1")) == Sign::positive);
  CHECK(magnus_sign(parse_free_word(2, "x1^-1")) == Sign::negative);
  CHECK(magnus_sign(parse_free_word(2, "x1 x2 x1^-1 x2^-1")) == Sign::positive);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    std::vector<Letter> a, b;
    for (int l = 0; l < 6; ++l) {
      a.push_back(std::uniform_int_distribution<int>(1, 2)(rng) * (rng() % 2 ? 1 : -1));
      b.push_back(std::uniform_int_distribution<int>(1, 2)(rng) * (rng() % 2 ? 1 : -1));
    }
    const FreeWord u(2, a), v(2, b);
    CHECK(magnus_sign(u.inverse()) == -magnus_sign(u));
    if (magnus_sign(u) == Sign::positive && magnus_sign(v) == Sign::positive)
      CHECK(magnus_sign(u * v) == Sign::positive);
    if (magnus_sign(u) != Sign::zero) CHECK(magnus_sign(v * u * v.inverse()) == magnus_sign(u));
  }
}
