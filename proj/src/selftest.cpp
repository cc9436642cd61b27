#include "bft/selftest.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bft/bfgroup.hpp"
#include "bft/generators.hpp"
#include "bft/io.hpp"
#include "json.hpp"

namespace bft {

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

std::string SuiteResult::text() const {
  std::ostringstream os;
  os << suite << " (n=" << arity << "): " << (passed() ? "PASS" : "FAIL") << " in " << seconds << " s\n";
  for (const auto& c : checks) {
    os << "  " << (c.passed() ? "ok   " : "FAIL ") << c.name << ": " << c.violations << " violations in " << c.trials
       << " trials\n";
    if (!c.detail.empty()) os << "       " << c.detail << "\n";
  }
  return os.str();
}

std::vector<std::string> suite_names() { return {"orders", "axioms", "generators", "braid", "welldef"}; }

namespace {

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& detail) {
    ++result_.trials;
    if (ok) return;
    if (!result_.violations) result_.detail = detail();
    ++result_.violations;
  }
  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

std::vector<ContextPtr> contexts(int n) {
  return {make_context(n), std::make_shared<const HContext>(HContext::pure_braid_group(n))};
}

std::string tag(const ContextPtr& ctx) { return ctx->rank() ? "H=P_n" : "H=1"; }

class Sampler {
 public:
  Sampler(ContextPtr ctx, std::uint64_t seed, RandomBounds bounds = {})
      : ctx_(std::move(ctx)), rng_(seed), bounds_(bounds) {}
  BFElement next() { return random_element(ctx_, rng_(), bounds_); }
  BFElement nontrivial() {
    for (;;) {
      BFElement x = next();
      if (!is_identity(x)) return x;
    }
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  ContextPtr ctx_;
  std::mt19937_64 rng_;
  RandomBounds bounds_;
};

std::string show(const BFElement& x) { return format_element(x); }

BFElement positive_part(const BFElement& x) { return bf_sign(x) == Sign::negative ? inverse(x) : x; }

BFElement conj(const BFElement& a, const BFElement& x) { return multiply(multiply(a, x), inverse(a)); }

void orders(SuiteResult& out, const SuiteOptions& o) {
  for (const auto& ctx : contexts(o.arity)) {
    const std::string t = " (" + tag(ctx) + ")";
    Sampler s(ctx, o.seed);
    Checker tri("trichotomy" + t), anti("antisymmetry" + t), semi("positive cone closed under products" + t),
        conjugation("bf_sign conjugation invariance" + t), trans("transitivity" + t), bi("bi-invariance" + t);
    for (int k = 0; k < o.samples; ++k) {
      BFElement x = s.next();
      if (k % 10 == 0) x = multiply(x, inverse(x));
      const Sign sx = bf_sign(x);
      tri.check(sx == -bf_sign(inverse(x)) && (sx == Sign::zero) == is_identity(x),
                [&] { return "x = " + show(x); });

      const BFElement y = s.next();
      anti.check(compare(x, y) == 0 ? compare(y, x) == 0 : compare(y, x) == (0 <=> compare(x, y)),
                 [&] { return "x = " + show(x) + ", y = " + show(y); });

      const BFElement p = positive_part(s.nontrivial()), q = positive_part(s.nontrivial());
      semi.check(bf_sign(multiply(p, q)) == Sign::positive, [&] { return "p = " + show(p) + ", q = " + show(q); });

      const BFElement a = s.next();
      conjugation.check(bf_sign(conj(a, x)) == sx, [&] { return "a = " + show(a) + ", x = " + show(x); });

      const auto c = compare(x, y);
      for (int r = 0; r < 3; ++r) {
        const BFElement m = s.next();
        bi.check(compare(multiply(m, x), multiply(m, y)) == c && compare(multiply(x, m), multiply(y, m)) == c,
                 [&] { return "x = " + show(x) + ", y = " + show(y) + ", a = " + show(m); });
      }
    }
    const int triples = std::max(1, o.samples * 2 / 3);
    for (int k = 0; k < triples; ++k) {
      const BFElement e[3] = {s.next(), s.next(), s.next()};
      std::strong_ordering c[3][3] = {{std::strong_ordering::equal, compare(e[0], e[1]), compare(e[0], e[2])},
                                      {compare(e[1], e[0]), std::strong_ordering::equal, compare(e[1], e[2])},
                                      {compare(e[2], e[0]), compare(e[2], e[1]), std::strong_ordering::equal}};
      bool ok = true;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int d = 0; d < 3; ++d)
            if (a != b && b != d && a != d && c[a][b] < 0 && c[b][d] < 0 && !(c[a][d] < 0)) ok = false;
      trans.check(ok, [&] { return "x = " + show(e[0]) + ", y = " + show(e[1]) + ", z = " + show(e[2]); });
    }
    for (const auto* c : {&tri, &anti, &semi, &conjugation, &trans, &bi}) out.checks.push_back(c->result());
  }
}

void axioms(SuiteResult& out, const SuiteOptions& o) {
  for (const auto& ctx : contexts(o.arity)) {
    const std::string t = " (" + tag(ctx) + ")";
    Sampler s(ctx, o.seed);
    Checker assoc("associativity" + t), ident("identity law" + t), inv("inverse law" + t);
    const BFElement e = BFElement::identity(ctx);
    for (int k = 0; k < o.samples; ++k) {
      const BFElement x = s.next(), y = s.next(), z = s.next();
      assoc.check(equal(multiply(multiply(x, y), z), multiply(x, multiply(y, z))),
                  [&] { return "x = " + show(x) + ", y = " + show(y) + ", z = " + show(z); });
      const BFElement ex = BFElement::identity(ctx, x.t2());
      ident.check(equal(multiply(x, e), x) && equal(multiply(e, x), x) && equal(multiply(x, ex), x),
                  [&] { return "x = " + show(x); });
      inv.check(is_identity(multiply(x, inverse(x))) && is_identity(multiply(inverse(x), x)),
                [&] { return "x = " + show(x); });
    }
    for (const auto* c : {&assoc, &ident, &inv}) out.checks.push_back(c->result());
  }
}

void generators(SuiteResult& out, const SuiteOptions& o) {
  const int n = o.arity;
  const GeneratorSet sets[] = {gen1_set(n), gen2_set(std::make_shared<const HContext>(HContext::pure_braid_group(n))),
                               gen3_set(n)};
  for (const auto& set : sets) {
    const auto rep = verify_generating(set, o.samples, o.seed);
    CheckResult c;
    c.name = "decompose round trip (" + set.family + ", " + std::to_string(set.size()) + " members)";
    c.trials = rep.samples;
    c.violations = rep.samples - rep.successes;
    if (!rep.passed()) {
      for (const auto& r : rep.results)
        if (!r.ok) {
          c.detail = "seed " + std::to_string(r.seed) + ": " + r.error + "; element " + rep.first_failure;
          break;
        }
    }
    out.checks.push_back(c);
  }
}

AWord random_pure(int m, int len, std::mt19937_64& rng) {
  std::vector<ALetter> letters;
  for (int k = 0; k < len; ++k) {
    const int i = std::uniform_int_distribution<int>(1, m - 1)(rng);
    const int j = std::uniform_int_distribution<int>(i + 1, m)(rng);
    letters.push_back({i, j, std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
  }
  return free_reduce(AWord(m, std::move(letters)));
}

void braid(SuiteResult& out, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  Checker rel("Artin braid relations, m <= 6");
  for (int m = 3; m <= 6; ++m)
    for (int i = 1; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const SigmaWord lhs = j == i + 1 ? SigmaWord(m, {i, j, i}) : SigmaWord(m, {i, j});
        const SigmaWord rhs = j == i + 1 ? SigmaWord(m, {j, i, j}) : SigmaWord(m, {j, i});
        rel.check(artin_image(lhs) == artin_image(rhs), [&] { return lhs.str() + " vs " + rhs.str(); });
        rel.check(!(artin_image(SigmaWord(m, {i})) == artin_image(SigmaWord(m, {-i}))),
                  [&] { return "sigma_" + std::to_string(i) + " equals its inverse"; });
      }
  out.checks.push_back(rel.result());

  Checker cable("cable table, n <= 4, m <= 6");
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 6; ++m)
      for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
          for (int t = 1; t <= m; ++t)
            for (int sign : {1, -1}) {
              const ALetter a{i, j, sign};
              const AWord one(m, {a});
              cable.check(artin_image(cable_substitution(a, m, t, n)) == artin_image(split_sigma(a_to_sigma(one), t, n)),
                          [&] {
                            return one.str() + " in P_" + std::to_string(m) + ", t=" + std::to_string(t) +
                                   ", n=" + std::to_string(n);
                          });
            }
  out.checks.push_back(cable.result());

  Checker combing("combing reconstruction, m <= 5");
  for (int m = 2; m <= 5; ++m)
    for (int k = 0; k < o.samples * 2 / 3; ++k) {
      const AWord w = random_pure(m, std::uniform_int_distribution<int>(0, 10)(rng), rng);
      combing.check(braids_equal(uncomb(comb(w)), w), [&] { return w.str() + " in P_" + std::to_string(m); });
    }
  out.checks.push_back(combing.result());

  Checker split("kr_sign unchanged by cabling");
  for (int k = 0; k < o.samples; ++k) {
    const int m = std::uniform_int_distribution<int>(2, 5)(rng);
    AWord w = random_pure(m, std::uniform_int_distribution<int>(1, 10)(rng), rng);
    const Sign s = kr_sign(w);
    if (s == Sign::zero) {
      --k;
      continue;
    }
    if (s == Sign::negative) w = w.inverse();
    const int n = std::uniform_int_distribution<int>(2, 3)(rng);
    const int t = std::uniform_int_distribution<int>(1, m)(rng);
    const AWord cabled = split_a(w, t, n, AWord(n));
    split.check(kr_sign(cabled) == Sign::positive, [&] {
      return w.str() + " in P_" + std::to_string(m) + " cabled at " + std::to_string(t) + " into " + std::to_string(n);
    });
  }
  out.checks.push_back(split.result());

  Checker magnus("Magnus sign vs free reduction, rank 2, length <= 6");
  const Letter alphabet[] = {1, -1, 2, -2};
  for (int len = 0; len <= 6; ++len) {
    std::vector<int> idx(len, 0);
    for (bool more = true; more;) {
      std::vector<Letter> letters;
      for (int k : idx) letters.push_back(alphabet[k]);
      const FreeWord w(2, letters);
      magnus.check((magnus_sign(w) == Sign::zero) == w.empty() &&
                       magnus_sign(w.inverse()) == -magnus_sign(w),
                   [&] { return w.str(); });
      more = false;
      for (int k = len - 1; k >= 0; --k) {
        if (++idx[k] < 4) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  }
  out.checks.push_back(magnus.result());
}

void welldef(SuiteResult& out, const SuiteOptions& o) {
  for (const auto& ctx : contexts(o.arity)) {
    const std::string t = " (" + tag(ctx) + ")";
    RandomBounds pvb;
    pvb.equal_trees_probability = 1;
    Sampler s(ctx, o.seed), sp(ctx, o.seed + 1, pvb);
    Checker bf("bf_sign under expand" + t), pv("pvb_sign under expand" + t), red("bf_sign under reduce" + t);
    for (int k = 0; k < o.samples; ++k) {
      const BFElement x = s.next();
      const int i = s.uniform(1, x.strands());
      const BFElement ex = expand(x, i);
      bf.check(bf_sign(ex) == bf_sign(x), [&] { return "x = " + show(x) + ", leaf " + std::to_string(i); });
      red.check(bf_sign(reduce(ex)) == bf_sign(x), [&] { return "x = " + show(x) + ", leaf " + std::to_string(i); });
      const BFElement y = sp.next();
      const int l = sp.uniform(1, y.strands());
      pv.check(pvb_sign(expand(y, l)) == pvb_sign(y), [&] { return "y = " + show(y) + ", leaf " + std::to_string(l); });
    }
    for (const auto* c : {&bf, &pv, &red}) out.checks.push_back(c->result());
  }
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteResult out;
  out.suite = name;
  out.arity = opts.arity;
  check_arity(opts.arity);
  const auto t0 = std::chrono::steady_clock::now();
  if (name == "orders")
    orders(out, opts);
  else if (name == "axioms")
    axioms(out, opts);
  else if (name == "generators")
    generators(out, opts);
  else if (name == "braid")
    braid(out, opts);
  else if (name == "welldef")
    welldef(out, opts);
  else
    throw std::invalid_argument("unknown suite '" + name + "'");
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string suites_json(const std::vector<SuiteResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json e{{"name", c.name}, {"trials", c.trials}, {"violations", c.violations}};
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(std::move(e));
    }
    all = all && r.passed();
    j.push_back({{"suite", r.suite}, {"arity", r.arity}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}});
  }
  return nlohmann::json{{"passed", all}, {"suites", j}}.dump(2);
}

}  // namespace bft
