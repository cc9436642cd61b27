// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "bft/generators.hpp"
#include "bft/selftest.hpp"
#include "corpus.hpp"

using namespace bft;

namespace {

constexpr double kCountSeconds = 1.0;         // criterion 1, per count
constexpr double kConfigSeconds = 600.0;      // criteria 2 and 3, per configuration
constexpr int kGeneratorSamples = 100;
constexpr int kOrderSamples = 300;
constexpr int kWelldefSamples = 300;
constexpr int kAxiomSamples = 200;
constexpr int kBraidSamples = 300;
constexpr std::uint64_t kSeed = 20240607;

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

struct Line {
  bool ok = true;
  std::ostringstream notes;
  void fail(const std::string& what) {
    if (!ok) notes << "; ";
    if (ok) notes.str("");
    ok = false;
    notes << what;
  }
};

int failures = 0;

void report(int id, const std::string& title, Line& l, const std::string& summary) {
  std::cout << (l.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " -- "
            << (l.ok ? summary : l.notes.str()) << std::endl;
  if (!l.ok) ++failures;
}

ContextPtr pn(int n) { return std::make_shared<const HContext>(HContext::pure_braid_group(n)); }

ContextPtr pn_like(int n, int k) {
  std::vector<HGenerator> gens;
  const auto full = HContext::pure_braid_group(n).generators();
  for (int q = 0; q < k; ++q) gens.push_back(full.at(q % full.size()));
  for (int q = 0; q < k; ++q) gens[q].name = "h" + std::to_string(q + 1);
  return make_context(n, std::move(gens));
}

template <typename F>
std::size_t timed_count(Line& l, const std::string& what, F f) {
  const auto t0 = clock_type::now();
  const std::size_t v = f();
  if (since(t0) >= kCountSeconds) l.fail(what + " took " + std::to_string(since(t0)) + " s");
  return v;
}

void expect_count(Line& l, const std::string& what, std::size_t got, std::size_t want) {
  if (got != want) l.fail(what + " = " + std::to_string(got) + ", expected " + std::to_string(want));
}

void criterion1() {
  Line l;
  expect_count(l, "|gen1(2)|", timed_count(l, "gen1(2)", [] { return gen1_set(2).size(); }), 10);
  for (int n = 3; n <= 6; ++n)
    expect_count(l, "|gen1(" + std::to_string(n) + ")|",
                 timed_count(l, "gen1", [n] { return gen1_set(n).size(); }), n * n + 2 * n + 1);
  const auto e2 = enumerate_irreducible(2);
  expect_count(l, "|irreducible(2)|", e2.size(), 8);
  std::array<int, 6> per{};
  for (const auto& s : e2) ++per.at(s.m);
  if (per[2] != 1 || per[3] != 3 || per[4] != 3 || per[5] != 1) l.fail("irreducible(2) per-m profile differs from 1/3/3/1");
  const int irr[] = {13, 21, 31, 43};
  for (int n = 3; n <= 6; ++n)
    expect_count(l, "|irreducible(" + std::to_string(n) + ")|",
                 timed_count(l, "irreducible", [n] { return enumerate_irreducible(n).size(); }), irr[n - 3]);
  expect_count(l, "|gen2(3, k=3)|", timed_count(l, "gen2", [] { return gen2_set(pn_like(3, 3)).size(); }), 25);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= 4; ++k)
      expect_count(l, "|gen2(" + std::to_string(n) + ", k=" + std::to_string(k) + ")|",
                   timed_count(l, "gen2", [n, k] { return gen2_set(pn_like(n, k)).size(); }),
                   n == 2 ? 10 + 2 * k : n * n + (k + 2) * n + 1);
  expect_count(l, "|gen3(2)|", timed_count(l, "gen3", [] { return gen3_set(2).size(); }), 9);
  expect_count(l, "|gen3(3)|", timed_count(l, "gen3", [] { return gen3_set(3).size(); }), 19);
  expect_count(l, "|gen3(4)|", timed_count(l, "gen3", [] { return gen3_set(4).size(); }), 37);
  for (int n = 3; n <= 5; ++n) {
    const long g2 = static_cast<long>(gen2_set(pn(n)).size()), g3 = static_cast<long>(gen3_set(n).size());
    const long want = static_cast<long>(n - 1) * n / 2;
    if (g2 - g3 != want)
      l.fail("|gen2(" + std::to_string(n) + ")| - |gen3(" + std::to_string(n) + ")| = " + std::to_string(g2 - g3) +
             ", expected " + std::to_string(want));
  }
  report(1, "generator counts", l, "all counts exact");
}

void criterion2() {
  Line l;
  std::ostringstream summary;
  for (int n = 2; n <= 3; ++n) {
    const GeneratorSet sets[] = {gen1_set(n), gen2_set(pn(n)), gen3_set(n)};
    for (const auto& set : sets) {
      const auto rep = verify_generating(set, kGeneratorSamples, kSeed);
      const std::string tag = set.family + "(n=" + std::to_string(n) + ")";
      if (!rep.passed())
        l.fail(tag + " " + std::to_string(rep.successes) + "/" + std::to_string(rep.samples) + ", first failure " +
               rep.first_failure);
      if (rep.total_seconds > kConfigSeconds) l.fail(tag + " took " + std::to_string(rep.total_seconds) + " s");
      summary << tag << " " << rep.successes << "/" << rep.samples << " in " << rep.total_seconds << " s, max word "
              << rep.max_word_length << (n == 3 && &set == &sets[2] ? "" : "; ");
    }
  }
  report(2, "generating sets round trip", l, summary.str());
}

void suite_criterion(int id, const std::string& title, const std::string& suite, int samples, bool per_n,
                     double limit) {
  Line l;
  std::ostringstream summary;
  long trials = 0;
  for (int n : per_n ? std::vector<int>{2, 3} : std::vector<int>{2}) {
    SuiteOptions o;
    o.arity = n;
    o.samples = samples;
    o.seed = kSeed;
    const SuiteResult r = run_suite(suite, o);
    for (const auto& c : r.checks) {
      trials += c.trials;
      if (!c.passed())
        l.fail("n=" + std::to_string(n) + " " + c.name + ": " + std::to_string(c.violations) + " violations (" +
               c.detail + ")");
    }
    if (limit > 0 && r.seconds > limit) l.fail("n=" + std::to_string(n) + " took " + std::to_string(r.seconds) + " s");
    summary << "n=" << n << " " << r.seconds << " s; ";
  }
  summary << trials << " trials, 0 violations";
  report(id, title, l, summary.str());
}

struct Run {
  int status = -1;
  std::string out;
};

Run bfcalc(const std::string& args) {
  Run r;
  FILE* p = popen((std::string(BFCALC_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

void criterion7() {
  Line l;
  auto expect_out = [&](const std::string& args, std::size_t want) {
    const Run r = bfcalc(args);
    if (r.out != std::to_string(want) + "\n") l.fail("`" + args + "` printed '" + r.out + "', expected " + std::to_string(want));
  };
  expect_out("count --gen1 -n 2", 10);
  for (int n = 3; n <= 6; ++n) expect_out("count --gen1 -n " + std::to_string(n), gen1_set(n).size());
  for (int n = 2; n <= 6; ++n) expect_out("count --irreducible -n " + std::to_string(n), enumerate_irreducible(n).size());
  expect_out("count --gen2 -n 3 --pn", gen2_set(pn(3)).size());
  for (int n = 2; n <= 4; ++n) expect_out("count --gen3 -n " + std::to_string(n), gen3_set(n).size());

  int valid = 0, round_trips = 0;
  for (const auto& c : load_corpus()) {
    if (!c.valid) continue;
    ++valid;
    try {
      const auto ctx = corpus_context(c);
      const BFElement x = parse_element(ctx, c.text);
      const std::string j = element_to_json(x);
      const BFElement y = element_from_json(j);
      if (parse_element(ctx, format_element(x)) == x && element_to_json(y) == j) ++round_trips;
      else l.fail("round trip differs for " + c.text);
    } catch (const std::exception& e) {
      l.fail("corpus entry rejected: " + c.text + " (" + e.what() + ")");
    }
  }
  if (valid < 50) l.fail("corpus has only " + std::to_string(valid) + " expressions");

  for (int n = 2; n <= 3; ++n) {
    const Run r = bfcalc("selftest -n " + std::to_string(n) + " --seed " + std::to_string(kSeed));
    for (const auto& s : suite_names())
      if (r.out.find(s + " (n=" + std::to_string(n) + "): PASS") == std::string::npos)
        l.fail("selftest -n " + std::to_string(n) + " did not pass suite " + s);
    if (r.status != 0) l.fail("selftest -n " + std::to_string(n) + " exited " + std::to_string(r.status));
  }
  report(7, "CLI conformance", l,
         "count outputs match, " + std::to_string(round_trips) + "/" + std::to_string(valid) +
             " corpus round trips, selftest exit 0");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  suite_criterion(3, "bi-order properties", "orders", kOrderSamples, true, kConfigSeconds);
  suite_criterion(4, "sign well-defined under expansion", "welldef", kWelldefSamples, true, 0);
  suite_criterion(5, "braid-layer oracles", "braid", kBraidSamples, false, 0);
  suite_criterion(6, "group axioms", "axioms", kAxiomSamples, true, 0);
  criterion7();
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures;
}
