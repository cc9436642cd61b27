// bfcalc: calculator for the pure braided Thompson groups BF_n(H).
//
// Exit status: 0 success, 1 parse or usage error, 2 failed check.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "bft/generators.hpp"
#include "bft/io.hpp"
#include "bft/render.hpp"
#include "bft/selftest.hpp"
#include "json.hpp"

using namespace bft;
using nlohmann::json;

namespace {

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Session {
  int arity = 2;
  std::vector<std::string> hgens;
  bool pn = false;
  std::vector<std::string> lets;
  bool as_json = false;
  std::string svg;

  ContextPtr ctx;
  std::map<std::string, BFElement> bound;

  void open() {
    check_arity(arity);
    if (pn && !hgens.empty()) throw std::invalid_argument("--pn and --hgen are exclusive");
    if (pn) {
      ctx = std::make_shared<const HContext>(HContext::pure_braid_group(arity));
    } else {
      std::vector<HGenerator> gens;
      for (const auto& h : hgens) gens.push_back(parse_hgenerator(arity, h));
      ctx = make_context(arity, std::move(gens));
    }
    for (const auto& l : lets) {
      const auto eq = l.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--let expects NAME=ELEMENT");
      bound.insert_or_assign(l.substr(0, eq), element(l.substr(eq + 1)));
    }
  }

  // A bound name, `1` for the identity, element JSON, or element text.
  BFElement element(const std::string& arg) const {
    if (auto it = bound.find(arg); it != bound.end()) return it->second;
    if (arg == "1") return BFElement::identity(ctx);
    const auto first = arg.find_first_not_of(" \t\n");
    const auto second = first == std::string::npos ? first : arg.find_first_not_of(" \t\n", first + 1);
    if (second != std::string::npos && arg[first] == '{' && arg[second] == '"') {
      BFElement x = element_from_json(arg);
      if (!(*x.context() == *ctx)) throw std::invalid_argument("JSON element context differs from the session context");
      return BFElement(ctx, x.t1(), x.braid(), x.labels(), x.t2());
    }
    return parse_element(ctx, arg);
  }

  void print(const BFElement& x) const {
    std::cout << (as_json ? element_to_json(x) : format_element(x)) << "\n";
    if (!svg.empty()) write_svg(x);
  }

  void write_svg(const BFElement& x) const {
    std::ofstream out(svg);
    if (!out) throw std::invalid_argument("cannot write " + svg);
    out << render_svg(x);
  }

  GeneratorSet set(const std::string& family) const {
    if (family == "gen1") return gen1_set(arity);
    if (family == "gen2") return gen2_set(ctx);
    if (family == "gen3") return gen3_set(arity);
    throw std::invalid_argument("unknown generating set '" + family + "'");
  }
};

const char* ordering_name(std::strong_ordering o) {
  if (o < 0) return "less";
  if (o > 0) return "greater";
  return "equal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculator for the pure braided Thompson groups BF_n(H)"};
  app.require_subcommand(1);
  app.fallthrough();

  Session s;
  app.add_option("-n,--arity", s.arity, "Arity n of the trees")->capture_default_str();
  app.add_option("--hgen", s.hgens, "H-generator NAME=WORD, for example h=A[1,2] (repeatable)")->allow_extra_args(false);
  app.add_flag("--pn", s.pn, "H = P_n with generators a{i}_{j}");
  app.add_option("--let", s.lets, "Bind NAME=ELEMENT (repeatable)")->allow_extra_args(false);
  app.add_flag("--json", s.as_json, "Machine-readable output");
  app.add_option("--svg", s.svg, "Also write a diagram of the result to PATH");

  std::vector<std::string> args;
  std::string expand_arg;
  int leaf = 0;
  std::string family = "gen1";
  std::uint64_t seed = 0;
  int samples = 300;
  std::vector<std::string> suites;
  std::string expect;
  bool count_gen1 = false, count_gen2 = false, count_gen3 = false, count_irr = false;

  auto* mul = app.add_subcommand("mul", "Product of the elements in order");
  mul->add_option("elements", args)->required()->expected(1, -1);
  auto* inv = app.add_subcommand("inv", "Inverse");
  inv->add_option("element", args)->required()->expected(1);
  auto* cmp = app.add_subcommand("cmp", "Compare two elements in the bi-order");
  cmp->add_option("elements", args)->required()->expected(2);
  cmp->add_option("--expect", expect, "Exit 2 unless the result is less, equal or greater")
      ->check(CLI::IsMember({"less", "equal", "greater"}));
  auto* sign = app.add_subcommand("sign", "Sign with respect to the positive cone");
  sign->add_option("element", args)->required()->expected(1);
  sign->add_option("--expect", expect, "Exit 2 unless the sign is positive, negative or zero")
      ->check(CLI::IsMember({"positive", "negative", "zero"}));
  auto* red = app.add_subcommand("reduce", "Remove verified carets");
  red->add_option("element", args)->required()->expected(1);
  auto* exp = app.add_subcommand("expand", "Expand at a leaf");
  exp->add_option("element", expand_arg)->required();
  exp->add_option("leaf", leaf, "1-based leaf")->required();
  auto* dec = app.add_subcommand("decompose", "Word over a generating set");
  dec->add_option("element", args)->required()->expected(1);
  dec->add_option("--set", family, "gen1, gen2 or gen3")->capture_default_str();
  auto* gens = app.add_subcommand("gens", "List a generating set");
  gens->add_option("--set", family, "gen1, gen2 or gen3")->capture_default_str();
  auto* count = app.add_subcommand("count", "Size of a generating set");
  count->add_flag("--gen1", count_gen1);
  count->add_flag("--gen2", count_gen2, "gen2 over the session H");
  count->add_flag("--gen3", count_gen3);
  count->add_flag("--irreducible", count_irr, "Number of n-irreducible pure generators");
  auto* render = app.add_subcommand("render", "SVG diagram to --svg PATH or stdout");
  render->add_option("element", args)->required()->expected(1);
  auto* parse = app.add_subcommand("parse", "Parse and print an element");
  parse->add_option("element", args)->required()->expected(1);
  auto* selftest = app.add_subcommand("selftest", "Run the property suites");
  selftest->add_option("--suite", suites, "orders, axioms, generators, braid, welldef (default: all)")
      ->allow_extra_args(false);
  selftest->add_option("--samples", samples)->capture_default_str();
  selftest->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    s.open();
    if (*mul) {
      BFElement acc = s.element(args.front());
      for (std::size_t k = 1; k < args.size(); ++k) acc = multiply(acc, s.element(args[k]));
      s.print(acc);
    } else if (*inv) {
      s.print(inverse(s.element(args.front())));
    } else if (*cmp) {
      const char* r = ordering_name(compare(s.element(args[0]), s.element(args[1])));
      std::cout << (s.as_json ? json{{"compare", r}}.dump() : r) << "\n";
      if (!expect.empty() && expect != r) throw CheckFailed(std::string("expected ") + expect);
    } else if (*sign) {
      const std::string r = to_string(bf_sign(s.element(args.front())));
      std::cout << (s.as_json ? json{{"sign", r}}.dump() : r) << "\n";
      if (!expect.empty() && expect != r) throw CheckFailed("expected " + expect);
    } else if (*red) {
      s.print(reduce(s.element(args.front())));
    } else if (*exp) {
      s.print(expand(s.element(expand_arg), leaf));
    } else if (*dec) {
      const BFElement x = s.element(args.front());
      const GeneratorSet set = s.set(family);
      const GeneratorWord w = decompose(x, set);
      const bool ok = equal(evaluate(w, set), x);
      if (s.as_json) {
        json letters = json::array();
        for (const auto& l : w) letters.push_back({{"member", set.names[l.member]}, {"sign", l.sign}});
        std::cout << json{{"set", set.family}, {"length", w.size()}, {"verified", ok}, {"word", letters}}.dump(2) << "\n";
      } else {
        std::cout << word_to_string(w, set) << "\n";
      }
      if (!ok) throw CheckFailed("decomposition does not evaluate to the input");
    } else if (*gens) {
      const GeneratorSet set = s.set(family);
      if (s.as_json) {
        json members = json::array();
        for (std::size_t k = 0; k < set.size(); ++k)
          members.push_back({{"name", set.names[k]}, {"element", json::parse(element_to_json(set.members[k]))}});
        std::cout << json{{"set", set.family}, {"arity", s.arity}, {"members", members}}.dump(2) << "\n";
      } else {
        for (std::size_t k = 0; k < set.size(); ++k)
          std::cout << set.names[k] << " = " << format_element(set.members[k]) << "\n";
      }
    } else if (*count) {
      if (count_gen1 + count_gen2 + count_gen3 + count_irr != 1)
        throw std::invalid_argument("count takes exactly one of --gen1, --gen2, --gen3, --irreducible");
      const std::size_t c = count_irr ? enumerate_irreducible(s.arity).size() : s.set(count_gen1   ? "gen1"
                                                                                      : count_gen2 ? "gen2"
                                                                                                   : "gen3")
                                                                                    .size();
      std::cout << c << "\n";
    } else if (*render) {
      const BFElement x = s.element(args.front());
      if (s.svg.empty())
        std::cout << render_svg(x);
      else
        s.write_svg(x);
    } else if (*parse) {
      s.print(s.element(args.front()));
    } else if (*selftest) {
      if (suites.empty()) suites = suite_names();
      std::vector<SuiteResult> results;
      for (const auto& name : suites) {
        SuiteOptions o;
        o.arity = s.arity;
        o.samples = samples;
        o.seed = seed;
        results.push_back(run_suite(name, o));
        if (!s.as_json) std::cout << results.back().text() << std::flush;
      }
      if (s.as_json) std::cout << suites_json(results) << "\n";
      for (const auto& r : results)
        if (!r.passed()) return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
