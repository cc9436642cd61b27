#include <doctest.h>

#include <stdexcept>
#include <map>

#include "bft/generators.hpp"

using namespace bft;

TEST_CASE("irreducibility") {
  CHECK(is_n_irreducible({2, 1, 2}, 2));
  CHECK(is_n_irreducible({5, 2, 4}, 2));
  CHECK_FALSE(is_n_irreducible({5, 1, 3}, 2));
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) CHECK_FALSE(is_n_irreducible({7, i, j}, 2));
}

TEST_CASE("enumeration") {
  const auto e2 = enumerate_irreducible(2);
  CHECK(e2.size() == 8);
  std::map<int, int> per_m;
  for (const auto& s : e2) ++per_m[s.m];
  CHECK(per_m == std::map<int, int>{{2, 1}, {3, 3}, {4, 3}, {5, 1}});
  for (int n = 3; n <= 6; ++n) {
    const auto e = enumerate_irreducible(n);
    CHECK(e.size() == static_cast<std::size_t>(n * n + n + 1));
    std::map<int, int> c;
    for (const auto& s : e) ++c[s.m];
    CHECK(c[n] == n * (n - 1) / 2);
    CHECK(c[2 * n - 1] == (n + 1) * (n + 2) / 2 - 3);
    CHECK(c[3 * n - 2] == 3);
  }
}

TEST_CASE("set sizes") {
  CHECK(gen1_set(2).size() == 10);
  for (int n = 3; n <= 6; ++n) CHECK(gen1_set(n).size() == static_cast<std::size_t>(n * n + 2 * n + 1));
  CHECK(gen2_set(make_context(2, {{"h", AWord(2, {{1, 2, 1}})}})).size() == 12);
  CHECK(gen2_set(std::make_shared<const HContext>(HContext::pure_braid_group(3))).size() == 25);
  CHECK(gen3_set(2).size() == 9);
  CHECK(gen3_set(3).size() == 19);
}

TEST_CASE("gen3 braid members per strand count") {
  for (int n = 3; n <= 5; ++n) {
    std::map<int, int> c;
    for (const auto& in : gen3_set(n).info)
      if (in.kind == MemberKind::braid) ++c[in.spec.m];
    CHECK(c[n] == n * (n - 1) / 2);
    CHECK(c[2 * n - 1] == n - 1);
    CHECK(c[3 * n - 2] == 2);
  }
}

TEST_CASE("members are valid and nontrivial") {
  for (const auto& set : {gen1_set(3), gen3_set(3), gen2_set(std::make_shared<const HContext>(HContext::pure_braid_group(2)))}) {
    for (const auto& x : set.members) CHECK_FALSE(is_identity(x));
    for (std::size_t k = 0; k < set.info.size(); ++k) {
      if (set.info[k].kind != MemberKind::label) continue;
      int nontrivial = 0;
      for (const auto& l : set.members[k].labels()) nontrivial += !l.empty();
      CHECK(nontrivial == 1);
      CHECK(set.members[k].t1() == Tree::caret(set.context->arity()));
    }
  }
}

TEST_CASE("trivial decompositions") {
  const auto set = gen3_set(3);
  CHECK(decompose(BFElement::identity(set.context), set).empty());
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto w = decompose(set.members[k], set);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == WordLetter{static_cast<int>(k), 1});
  }
}

TEST_CASE("round trips") {
  for (int n = 2; n <= 3; ++n) {
    const GeneratorSet sets[] = {gen1_set(n), gen2_set(std::make_shared<const HContext>(HContext::pure_braid_group(n))),
                                 gen3_set(n)};
    for (const auto& set : sets) {
      const auto rep = verify_generating(set, 40, 1000, {}, 2);
      CHECK_MESSAGE(rep.passed(), rep.text());
    }
  }
}

TEST_CASE("labelled route for larger arity") {
  const auto set = gen3_set(4);
  RandomBounds small;
  small.max_leaves = 10;
  small.max_braid_length = 6;
  const auto rep = verify_generating(set, 10, 77, small, 2);
  CHECK_MESSAGE(rep.passed(), rep.text());
}

TEST_CASE("gen2 over the trivial group behaves as gen1") {
  const auto a = gen1_set(2), b = gen2_set(make_context(2));
  CHECK(a.names == b.names);
  const auto x = random_element(b.context, 5);
  CHECK(decompose(x, a) == decompose(x, b));
}

TEST_CASE("report formats") {
  const auto rep = verify_generating(gen1_set(2), 5, 1);
  CHECK(rep.passed());
  CHECK(rep.text().find("5/5") != std::string::npos);
  CHECK(rep.json().find("\"successes\": 5") != std::string::npos);
}
