#include <doctest.h>

#include <stdexcept>
#include <random>

#include "bft/trees.hpp"

using namespace bft;

namespace {

Tree R(int n) { return Tree::caret(n); }

TreePair random_pair(int n, std::mt19937_64& rng) {
  auto grow = [&](int carets) {
    Tree t(n);
    for (int c = 0; c < carets; ++c) t = t.attach_caret(std::uniform_int_distribution<int>(1, t.leaf_count())(rng));
    return t;
  };
  const int c = std::uniform_int_distribution<int>(0, 5)(rng);
  return make_pair(grow(c), grow(c));
}

}  // namespace

TEST_CASE("attach_caret") {
  CHECK(Tree(3).attach_caret(1) == R(3));
  const Tree t = R(3).attach_caret(3);
  CHECK(t.leaf_count() == 5);
  CHECK(t.leaves() == std::vector<Address>{"0", "1", "20", "21", "22"});
  CHECK(R(2).attach_caret(1).attach_caret(2).leaves() == std::vector<Address>{"00", "010", "011", "1"});
  CHECK_THROWS(R(2).attach_caret(3));
}

TEST_CASE("leaf addresses") {
  CHECK(leaf_addresses(Tree(2)) == std::vector<Address>{""});
  CHECK(leaf_addresses(R(3)) == std::vector<Address>{"0", "1", "2"});
  CHECK(leaf_addresses(R(2).attach_caret(1)) == std::vector<Address>{"00", "01", "1"});
}

TEST_CASE("from_leaves rejects non-full trees") {
  CHECK_NOTHROW(Tree::from_leaves(2, {"00", "01", "1"}));
  CHECK_THROWS(Tree::from_leaves(2, {"00", "1"}));
  CHECK_THROWS(Tree::from_leaves(3, {"0", "1"}));
}

TEST_CASE("caret collapse inverts attach") {
  const Tree t = R(3).attach_caret(2);
  CHECK(t.has_caret_at(2));
  CHECK_FALSE(t.has_caret_at(1));
  CHECK(t.collapse_caret(2) == R(3));
  CHECK_THROWS(t.collapse_caret(1));
}

TEST_CASE("join") {
  const Tree a = R(2).attach_caret(1), b = R(2).attach_caret(2);
  auto j = join(a, a);
  CHECK(j.tree == a);
  CHECK(j.script_first.empty());
  CHECK(j.script_second.empty());

  j = join(a, b);
  CHECK(j.tree.leaves() == std::vector<Address>{"00", "01", "10", "11"});
  CHECK(j.script_first.size() == 1);
  CHECK(j.script_second.size() == 1);
  CHECK(apply_script(a, j.script_first) == j.tree);

  j = join(R(3), R(3).attach_caret(2));
  CHECK(j.tree == R(3).attach_caret(2));
  CHECK(j.script_first == std::vector<int>{2});
}

TEST_CASE("leaf intervals") {
  CHECK(leaf_interval(Tree(2), 1) == NAdicInterval{0, 0});
  CHECK(leaf_interval(R(2).attach_caret(1), 2) == NAdicInterval{1, 2});
  CHECK(leaf_interval(R(3), 3) == NAdicInterval{2, 1});
}

TEST_CASE("fn_sign slope convention") {
  const Tree r1 = R(2).attach_caret(1), r2 = R(2).attach_caret(2);
  CHECK(fn_sign(make_pair(r1, r1)) == Sign::zero);
  CHECK(fn_sign(make_pair(r1, r2)) == Sign::positive);
  CHECK(fn_sign(make_pair(r2, r1)) == Sign::negative);
}

TEST_CASE("pair group law") {
  const Tree r1 = R(2).attach_caret(1), r2 = R(2).attach_caret(2);
  CHECK(pair_is_identity(pair_multiply(make_pair(r1, r2), make_pair(r2, r1))));
  CHECK_FALSE(pair_is_identity(make_pair(r1, r2)));
  CHECK(pair_is_identity(make_pair(r1, r1)));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 2;
    const auto f = random_pair(n, rng), g = random_pair(n, rng), h = random_pair(n, rng);
    CHECK(pair_is_identity(pair_multiply(f, pair_inverse(f))));
    CHECK(pair_equal(pair_multiply(pair_multiply(f, g), h), pair_multiply(f, pair_multiply(g, h))));
  }
}

TEST_CASE("Brown generators") {
  auto g2 = brown_generator_pairs(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == make_pair(R(2).attach_caret(2), R(2).attach_caret(1)));
  auto g3 = brown_generator_pairs(3);
  REQUIRE(g3.size() == 3);
  CHECK(g3[2] == make_pair(R(3).attach_caret(3).attach_caret(5), R(3).attach_caret(3).attach_caret(3)));
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : brown_generator_pairs(n)) CHECK(fn_sign(g) != Sign::zero);
}

TEST_CASE("fn_factorize round trips") {
  CHECK(fn_factorize(pair_identity(2)).empty());
  CHECK(fn_factorize(brown_generator_pairs(2)[0]).size() == 1);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 2;
    const auto f = random_pair(n, rng);
    CHECK(pair_equal(pair_evaluate(n, fn_factorize(f)), f));
  }
}
