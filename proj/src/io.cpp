#include "bft/io.hpp"

#include <cctype>
#include <functional>

#include "json.hpp"

namespace bft {

using nlohmann::json;

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'" + found());
    advance();
  }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  // Raw text up to (not including) the first of `stops` at nesting depth zero.
  std::string until(const std::string& stops) {
    skip_space();
    std::string out;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (depth == 0 && stops.find(c) != std::string::npos) break;
      if (c == '[') ++depth;
      if (c == ']') --depth;
      out += c;
      advance();
    }
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }
  [[noreturn]] void fail_at(const std::string& message, int line, int column) const {
    throw ParseError(message, line, column);
  }
  int line() const { return line_; }
  int column() const { return column_; }
  std::string found() {
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::vector<Address> read_tree(Cursor& c, int arity, const Address& at) {
  if (c.accept('*')) return {at};
  if (!c.accept('(')) c.fail("expected '*' or '('" + c.found());
  std::vector<Address> out;
  for (int d = 0; d < arity; ++d) {
    if (d) c.expect(',');
    auto sub = read_tree(c, arity, at + static_cast<char>('0' + d));
    out.insert(out.end(), sub.begin(), sub.end());
  }
  if (c.peek() == ',') c.fail("caret has more than " + std::to_string(arity) + " children");
  c.expect(')');
  return out;
}

Tree tree_from(Cursor& c, int arity) {
  const int line = c.line(), column = c.column();
  auto leaves = read_tree(c, arity, "");
  try {
    return Tree::from_leaves(arity, std::move(leaves));
  } catch (const std::exception& e) {
    c.fail_at(e.what(), line, column);
  }
}

Label parse_label(const HContext& ctx, const std::string& text, Cursor& c, int line, int column) {
  std::vector<Letter> letters;
  std::size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k >= text.size()) break;
    std::size_t e = k;
    while (e < text.size() && !std::isspace(static_cast<unsigned char>(text[e]))) ++e;
    std::string tok = text.substr(k, e - k);
    const int col = column + static_cast<int>(k);
    k = e;
    if (tok == "1") continue;
    int sign = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      const std::string exp = tok.substr(caret + 1);
      tok = tok.substr(0, caret);
      if (exp == "-1")
        sign = -1;
      else if (exp != "1")
        c.fail_at("bad exponent '" + exp + "'", line, col);
    }
    const int g = ctx.find(tok);
    if (!g) c.fail_at("unknown H-generator '" + tok + "'", line, col);
    letters.push_back(sign * g);
  }
  return Label(ctx.rank(), letters);
}

json tree_json(const Tree& t) {
  std::function<json(const Address&)> rec = [&](const Address& a) {
    json out = json::array();
    if (t.is_internal(a))
      for (int d = 0; d < t.arity(); ++d) out.push_back(rec(a + static_cast<char>('0' + d)));
    return out;
  };
  return rec("");
}

void tree_leaves_from_json(const json& j, int arity, const Address& at, std::vector<Address>& out) {
  if (!j.is_array()) throw std::invalid_argument("tree nodes must be arrays");
  if (j.empty()) {
    out.push_back(at);
    return;
  }
  if (static_cast<int>(j.size()) != arity) throw std::invalid_argument("caret with the wrong number of children");
  for (int d = 0; d < arity; ++d) tree_leaves_from_json(j[d], arity, at + static_cast<char>('0' + d), out);
}

Tree tree_from_json(const json& j, int arity) {
  std::vector<Address> leaves;
  tree_leaves_from_json(j, arity, "", leaves);
  return Tree::from_leaves(arity, std::move(leaves));
}

json word_json(const AWord& w) {
  json out = json::array();
  for (const auto& a : w.letters()) out.push_back({a.i, a.j, a.sign});
  return out;
}

AWord word_from_json(const json& j, int strands) {
  std::vector<ALetter> letters;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 3) throw std::invalid_argument("braid letters are [i, j, sign]");
    letters.push_back({l[0].get<int>(), l[1].get<int>(), l[2].get<int>()});
  }
  return AWord(strands, std::move(letters));
}

}  // namespace

Tree parse_tree(int arity, const std::string& text) {
  check_arity(arity);
  Cursor c(text);
  Tree t = tree_from(c, arity);
  if (!c.at_end()) c.fail("trailing input after tree");
  return t;
}

BFElement parse_element(const ContextPtr& ctx, const std::string& text) {
  const int n = ctx->arity();
  Cursor c(text);
  c.expect('{');
  Tree t1 = tree_from(c, n);
  c.expect(';');
  const int bl = c.line(), bc = c.column();
  const std::string braid_text = c.until(";}");
  c.expect(';');
  const int m = t1.leaf_count();
  AWord braid(m);
  try {
    braid = parse_a_word(m, braid_text);
  } catch (const std::exception& e) {
    c.fail_at(e.what(), bl, bc);
  }
  c.expect('[');
  std::vector<Label> labels;
  if (!c.accept(']')) {
    do {
      c.skip_space();
      const int ll = c.line(), lc = c.column();
      const std::string lt = c.until(",];}");
      if (lt.empty()) c.fail("empty label; write 1 for the trivial label");
      labels.push_back(parse_label(*ctx, lt, c, ll, lc));
    } while (c.accept(','));
    c.expect(']');
  }
  c.expect(';');
  const int tl = c.line(), tc = c.column();
  Tree t2 = tree_from(c, n);
  c.expect('}');
  if (!c.at_end()) c.fail("trailing input after element");
  try {
    return BFElement(ctx, std::move(t1), std::move(braid), std::move(labels), std::move(t2));
  } catch (const std::exception& e) {
    c.fail_at(e.what(), tl, tc);
  }
}

std::string format_element(const BFElement& x) {
  const auto& gens = x.context()->generators();
  std::string out = "{" + x.t1().str() + "; " + x.braid().str() + "; [";
  for (std::size_t k = 0; k < x.labels().size(); ++k) {
    if (k) out += ", ";
    const auto& l = x.labels()[k];
    if (l.empty()) {
      out += "1";
      continue;
    }
    for (std::size_t q = 0; q < l.size(); ++q) {
      const Letter a = l.letters()[q];
      if (q) out += ' ';
      out += gens.at(std::abs(a) - 1).name;
      if (a < 0) out += "^-1";
    }
  }
  return out + "]; " + x.t2().str() + "}";
}

HGenerator parse_hgenerator(int arity, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("expected name=word", 1, 1);
  std::string name = text.substr(0, eq);
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(name.begin());
  if (name.empty()) throw ParseError("empty generator name", 1, 1);
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      throw ParseError("generator names use letters, digits and '_'", 1, 1);
  try {
    return {name, parse_a_word(arity, text.substr(eq + 1))};
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 1, static_cast<int>(eq) + 2);
  }
}

std::string element_to_json(const BFElement& x, int indent) {
  json ctx = json::array();
  for (const auto& g : x.context()->generators()) ctx.push_back({{"name", g.name}, {"word", word_json(g.word)}});
  json labels = json::array();
  for (const auto& l : x.labels()) labels.push_back(l.letters());
  json j{{"arity", x.arity()},          {"context", ctx},     {"t1", tree_json(x.t1())},
         {"braid", word_json(x.braid())}, {"labels", labels}, {"t2", tree_json(x.t2())}};
  return j.dump(indent);
}

BFElement element_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
  try {
    const int n = j.at("arity").get<int>();
    std::vector<HGenerator> gens;
    for (const auto& g : j.value("context", json::array()))
      gens.push_back({g.at("name").get<std::string>(), word_from_json(g.at("word"), n)});
    auto ctx = make_context(n, std::move(gens));
    Tree t1 = tree_from_json(j.at("t1"), n);
    Tree t2 = tree_from_json(j.at("t2"), n);
    AWord braid = word_from_json(j.at("braid"), t1.leaf_count());
    std::vector<Label> labels;
    for (const auto& l : j.at("labels")) labels.emplace_back(ctx->rank(), l.get<std::vector<Letter>>());
    return BFElement(ctx, std::move(t1), std::move(braid), std::move(labels), std::move(t2));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed element JSON: ") + e.what());
  }
}

}  // namespace bft
