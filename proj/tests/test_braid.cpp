#include <doctest.h>

#include <stdexcept>
#include <random>

#include "bft/braid.hpp"

using namespace bft;

namespace {

AWord random_pure(int m, int len, std::mt19937_64& rng) {
  std::vector<ALetter> letters;
  for (int k = 0; k < len; ++k) {
    const int i = std::uniform_int_distribution<int>(1, m - 1)(rng);
    const int j = std::uniform_int_distribution<int>(i + 1, m)(rng);
    letters.push_back({i, j, rng() % 2 ? 1 : -1});
  }
  return AWord(m, std::move(letters));
}

}  // namespace

TEST_CASE("A letters in sigma generators") {
  CHECK(a_to_sigma(AWord(2, {{1, 2, 1}})) == SigmaWord(2, {-1, -1}));
  CHECK(a_to_sigma(AWord(4, {{2, 4, 1}})) == SigmaWord(4, {-2, -3, -3, 2}));
  CHECK(is_trivial(AWord(3, {{1, 3, 1}, {1, 3, -1}})));
  CHECK(parse_a_word(4, "A[1,2] A[2,4]^-1").str() == "A[1,2] A[2,4]^-1");
  CHECK_THROWS(parse_a_word(2, "A[1,3]"));
}

TEST_CASE("permutations") {
  CHECK(is_pure(SigmaWord(3)));
  CHECK(permutation(SigmaWord(2, {1})) == std::vector<int>{2, 1});
  CHECK_FALSE(is_pure(SigmaWord(2, {1})));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) CHECK(is_pure(a_to_sigma(random_pure(5, 6, rng))));
}

TEST_CASE("Artin action") {
  const ArtinImage id = artin_image(SigmaWord(3));
  for (int k = 0; k < 3; ++k) CHECK(id.images[k].letters() == std::vector<Letter>{k + 1});
  const ArtinImage s1 = artin_image(SigmaWord(2, {1}));
  CHECK(s1.images[0].letters() == std::vector<Letter>{1, 2, -1});
  CHECK(s1.images[1].letters() == std::vector<Letter>{1});
  CHECK(artin_image(SigmaWord(3, {1, 2, 1})) == artin_image(SigmaWord(3, {2, 1, 2})));
}

TEST_CASE("braid equality") {
  CHECK(braids_equal(SigmaWord(4, {1, 3}), SigmaWord(4, {3, 1})));
  CHECK_FALSE(braids_equal(SigmaWord(2, {1}), SigmaWord(2)));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    std::vector<int> w;
    for (int l = 0; l < 8; ++l) w.push_back(std::uniform_int_distribution<int>(1, 3)(rng) * (rng() % 2 ? 1 : -1));
    std::vector<int> v = w;
    const auto at = v.begin() + std::uniform_int_distribution<int>(0, 8)(rng);
    v.insert(at, {2, -2});
    CHECK(braids_equal(SigmaWord(4, w), SigmaWord(4, v)));
  }
}

TEST_CASE("Garside engine agrees with the Artin action") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 300; ++k) {
    const int m = 3 + k % 3;
    const AWord u = random_pure(m, 4, rng);
    const AWord v = k % 2 ? u * AWord(m, {{1, 2, 1}, {1, 2, -1}}) : random_pure(m, 4, rng);
    CHECK(braids_equal(u, v) == (artin_image(u) == artin_image(v)));
  }
}

TEST_CASE("strand deletion") {
  CHECK(delete_strand(AWord(2, {{1, 2, 1}}), 1).empty());
  CHECK(delete_strand(AWord(4, {{2, 4, 1}}), 1) == AWord(3, {{1, 3, 1}}));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const AWord u = random_pure(5, 5, rng), v = random_pure(5, 5, rng);
    const int d = std::uniform_int_distribution<int>(1, 5)(rng);
    CHECK(braids_equal(delete_strand(u * v, d), delete_strand(u, d) * delete_strand(v, d)));
    CHECK(braids_equal(delete_strand(u, d), delete_strand_sigma(a_to_sigma(u), d)));
  }
}

TEST_CASE("shift embedding") {
  const AWord w(2, {{1, 2, 1}});
  CHECK(shift_embed(w, 1, 2) == w);
  CHECK(shift_embed(w, 3, 5) == AWord(5, {{3, 4, 1}}));
}

TEST_CASE("cabling") {
  CHECK(split_a(AWord(3), 2, 2, AWord(2)).empty());
  CHECK(split_a(AWord(3), 2, 2, AWord(2, {{1, 2, 1}})) == AWord(4, {{2, 3, 1}}));
  CHECK(braids_equal(a_to_sigma(cable_substitution({1, 2, -1}, 2, 2, 2)), split_sigma(SigmaWord(2, {1, 1}), 2, 2)));
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const AWord u = random_pure(4, 4, rng), v = random_pure(4, 4, rng);
    const int t = std::uniform_int_distribution<int>(1, 4)(rng);
    CHECK(braids_equal(split_sigma(a_to_sigma(u * v), t, 3),
                       split_sigma(a_to_sigma(u), t, 3) * split_sigma(a_to_sigma(v), t, 3)));
    CHECK(braids_equal(split_a(u, t, 2, AWord(2)), split_sigma(a_to_sigma(u), t, 2)));
  }
}

TEST_CASE("conjugation schema") { CHECK_NOTHROW(validate_conjugation_schema(5)); }

TEST_CASE("combing") {
  const CombedForm e = comb(AWord(3));
  for (const auto& c : e.coordinates) CHECK(c.empty());
  const CombedForm a = comb(AWord(2, {{1, 2, 1}}));
  REQUIRE(a.coordinates.size() == 1);
  CHECK(a.coordinates[0].letters() == std::vector<Letter>{1});
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const AWord w = random_pure(4, 12, rng);
    CHECK(braids_equal(uncomb(comb(w)), w));
  }
  CombOptions tight;
  tight.max_word_length = 4;
  CHECK_THROWS_AS(comb(random_pure(6, 40, rng), tight), std::length_error);
}

TEST_CASE("Kim-Rolfsen sign") {
  CHECK(kr_sign(AWord(3)) == Sign::zero);
  CHECK(kr_sign(AWord(2, {{1, 2, 1}})) == Sign::positive);
  CHECK(kr_sign(AWord(3, {{1, 3, 1}, {1, 3, -1}})) == Sign::zero);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 300; ++k) {
    const AWord w = random_pure(2 + k % 4, 8, rng);
    CHECK(kr_sign(w.inverse()) == -kr_sign(w));
    const CombedForm c = comb(w);
    Sign expect = Sign::zero;
    for (auto it = c.coordinates.rbegin(); it != c.coordinates.rend() && expect == Sign::zero; ++it)
      expect = magnus_sign(*it);
    CHECK(kr_sign(w) == expect);
  }
}
