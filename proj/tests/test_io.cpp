#include <doctest.h>

#include <stdexcept>
#include <regex>

#include "bft/render.hpp"
#include "corpus.hpp"

using namespace bft;

TEST_CASE("grammar examples") {
  auto ctx = make_context(2);
  const BFElement one = parse_element(ctx, "{ * ; ; [1] ; * }");
  CHECK(one.strands() == 1);
  CHECK(is_identity(one));
  const BFElement x = parse_element(ctx, "{ (*,*) ; A[1,2] ; [1,1] ; (*,*) }");
  CHECK(x.braid() == AWord(2, {{1, 2, 1}}));
  CHECK_THROWS_AS(parse_element(ctx, "{ (*,*) ; A[1,3] ; [1,1] ; (*,*) }"), ParseError);
}

TEST_CASE("error positions") {
  auto ctx = std::make_shared<const HContext>(HContext::pure_braid_group(2));
  try {
    parse_element(ctx, "{ (*,*) ;\n ; [1, zz] ; (*,*) }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
    CHECK(std::string(e.what()).find("zz") != std::string::npos);
  }
  try {
    parse_element(ctx, "{ (*,*,*) ; ; [1] ; * }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("trees") {
  CHECK(parse_tree(2, "((*,*),*)") == Tree::caret(2).attach_caret(1));
  CHECK(parse_tree(3, " ( * , * , * ) ") == Tree::caret(3));
  CHECK_THROWS_AS(parse_tree(2, "(*,*"), ParseError);
}

TEST_CASE("H-generators") {
  const HGenerator h = parse_hgenerator(3, "h=A[1,2] A[2,3]^-1");
  CHECK(h.name == "h");
  CHECK(h.word == AWord(3, {{1, 2, 1}, {2, 3, -1}}));
  CHECK_THROWS_AS(parse_hgenerator(3, "A[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_hgenerator(3, "h=A[1,4]"), ParseError);
}

TEST_CASE("corpus round trips") {
  int valid = 0;
  for (const auto& c : load_corpus()) {
    CAPTURE(c.text);
    const auto ctx = corpus_context(c);
    if (!c.valid) {
      CHECK_THROWS(parse_element(ctx, c.text));
      continue;
    }
    ++valid;
    const BFElement x = parse_element(ctx, c.text);
    CHECK(parse_element(ctx, format_element(x)) == x);
    const std::string j = element_to_json(x);
    const BFElement y = element_from_json(j);
    CHECK(*y.context() == *ctx);
    CHECK(BFElement(ctx, y.t1(), y.braid(), y.labels(), y.t2()) == x);
    CHECK(element_to_json(y) == j);
  }
  CHECK(valid >= 50);
}

TEST_CASE("malformed JSON") {
  CHECK_THROWS_AS(element_from_json("{"), ParseError);
  CHECK_THROWS(element_from_json(R"({"arity":2})"));
  CHECK_THROWS(element_from_json(R"({"arity":2,"t1":[[],[],[]],"t2":[],"braid":[],"labels":[[]]})"));
}

namespace {

long count(const std::string& s, const std::string& what) {
  long c = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("svg") {
  auto ctx = std::make_shared<const HContext>(HContext::pure_braid_group(2));
  const std::string id = render_svg(BFElement::identity(ctx, Tree::caret(2)));
  CHECK(count(id, "crossing-block") == 0);
  CHECK(count(id, "class=\"caret\"") == 2);
  CHECK(count(id, "class=\"label\"") == 0);

  const BFElement x = parse_element(ctx, "{ ((*,*),*) ; A[1,3] ; [1, a1_2, 1] ; (*,(*,*)) }");
  const std::string svg = render_svg(x);
  CHECK(count(svg, "class=\"crossing-block\"") == 1);
  CHECK(count(svg, "class=\"caret\"") == 4);
  CHECK(count(svg, "class=\"label\"") == 1);
  CHECK(svg.find(">a1_2<") != std::string::npos);
  CHECK(svg.rfind("<svg", 0) == 0);

  const BFElement y = parse_element(ctx, "{ (*,*) ; A[1,2] A[1,2]^-1 A[1,2] ; [1,1] ; (*,*) }");
  CHECK(count(render_svg(y), "class=\"crossing-block\"") == 3);
}
