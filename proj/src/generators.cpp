#include "bft/generators.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bft/io.hpp"

namespace bft {

// ------------------------------------------------------------- enumeration

bool is_n_irreducible(const PureGeneratorSpec& s, int n) {
  return s.i <= n && s.j - s.i <= n && s.m - s.j < n;
}

std::vector<PureGeneratorSpec> enumerate_irreducible(int n) {
  check_arity(n);
  const int bound = n == 2 ? 5 : 4 * n - 3;
  std::vector<PureGeneratorSpec> out;
  for (int m = n; m <= bound; m += n - 1)
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        if (is_n_irreducible({m, i, j}, n)) out.push_back({m, i, j});
  return out;
}

// ------------------------------------------------------------ derivations

enum class RuleKind { member, cable_source, cable_part, labelled };

struct Rule {
  RuleKind kind = RuleKind::member;
  int member = -1;
  // cable rules: source letter in P_{m-n+1}, cabled at strand t
  PureGeneratorSpec source;
  int t = 0;
  int part = -1;
  // labelled rule
  int hgen = 0;
};

struct DerivationPlan {
  int n = 2;
  int max_strands = 0;
  std::map<PureGeneratorSpec, Rule> rules;
  std::vector<int> brown_members;
  std::map<std::pair<int, int>, int> label_members;  // (position, hgen)
  std::map<std::pair<int, int>, int> letter_hgens;    // (a, b) -> hgen with word A[a,b]
};

namespace {

std::vector<PureGeneratorSpec> cable_parts(const PureGeneratorSpec& src, int t, int n) {
  std::vector<PureGeneratorSpec> out;
  const AWord w = cable_substitution({src.i, src.j, 1}, src.m, t, n);
  for (const auto& a : w.letters()) out.push_back({w.strands(), a.i, a.j});
  return out;
}

bool middle_position(int q, int p, int n) { return p != 1 && p != q && (p - 1) % (n - 1) == 0; }

// Letters of the braid that the middle-position construction has to cancel.
std::vector<PureGeneratorSpec> middle_letters(const HContext& ctx, int p, int hgen) {
  const int n = ctx.arity();
  std::vector<PureGeneratorSpec> out;
  const AWord s = shift_embed(ctx.generators().at(hgen - 1).word, p, p + n - 1);
  for (const auto& a : s.letters()) out.push_back({s.strands(), a.i, a.j});
  return out;
}

std::shared_ptr<const DerivationPlan> build_plan(const GeneratorSet& set) {
  const HContext& ctx = *set.context;
  const int n = ctx.arity();
  auto plan = std::make_shared<DerivationPlan>();
  plan->n = n;
  plan->max_strands = 6 * n;
  plan->brown_members.assign(n, -1);
  for (std::size_t k = 0; k < set.info.size(); ++k) {
    const auto& in = set.info[k];
    const int idx = static_cast<int>(k);
    if (in.kind == MemberKind::brown) plan->brown_members[in.brown_index] = idx;
    if (in.kind == MemberKind::braid) plan->rules[in.spec].member = idx;
    if (in.kind == MemberKind::label) plan->label_members[{in.position, in.hgen}] = idx;
  }
  for (int h = 1; h <= ctx.rank(); ++h) {
    const auto& w = ctx.generators()[h - 1].word;
    if (w.size() == 1 && w.letters()[0].sign == 1) plan->letter_hgens.emplace(std::pair{w.letters()[0].i, w.letters()[0].j}, h);
  }
  const bool full_labels = [&] {
    for (int h = 1; h <= ctx.rank(); ++h)
      for (int p = 1; p <= n; ++p)
        if (!plan->label_members.count({p, h})) return false;
    return ctx.rank() > 0;
  }();

  struct Relation {
    PureGeneratorSpec source;
    int t;
    std::vector<PureGeneratorSpec> parts;
  };
  std::vector<Relation> relations;
  const int top = plan->max_strands;
  for (int m = n; m + n - 1 <= top; m += n - 1)
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        for (int t = 1; t <= m; ++t) relations.push_back({{m, i, j}, t, cable_parts({m, i, j}, t, n)});

  auto& rules = plan->rules;
  auto known = [&](const PureGeneratorSpec& s) { return rules.count(s) > 0; };
  auto label_ok = [&](int q, int p, int hgen) {
    if (!middle_position(q, p, n)) return true;
    const auto letters = middle_letters(ctx, p, hgen);
    return std::all_of(letters.begin(), letters.end(), known);
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : relations) {
      int missing = -1, unknown = 0;
      for (std::size_t k = 0; k < r.parts.size(); ++k)
        if (!known(r.parts[k])) {
          ++unknown;
          missing = static_cast<int>(k);
        }
      if (known(r.source) && unknown == 1) {
        Rule rule;
        rule.kind = RuleKind::cable_part;
        rule.source = r.source;
        rule.t = r.t;
        rule.part = missing;
        rules.emplace(r.parts[missing], rule);
        changed = true;
      } else if (!known(r.source) && unknown == 0) {
        Rule rule;
        rule.kind = RuleKind::cable_source;
        rule.source = r.source;
        rule.t = r.t;
        rules.emplace(r.source, rule);
        changed = true;
      }
    }
    if (changed || !full_labels) continue;
    for (int m = 2 * n - 1; m <= top; m += n - 1)
      for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= std::min(m, i + n - 1); ++j) {
          const PureGeneratorSpec s{m, i, j};
          if (known(s)) continue;
          const int k = std::min(i, m - n + 1);
          const auto h = plan->letter_hgens.find({i - k + 1, j - k + 1});
          if (h == plan->letter_hgens.end()) continue;
          bool ok = label_ok(m - n + 1, k, h->second);
          for (int c = k; ok && c < k + n; ++c) ok = label_ok(m, c, h->second);
          if (!ok) continue;
          Rule rule;
          rule.kind = RuleKind::labelled;
          rule.hgen = h->second;
          rules.emplace(s, rule);
          changed = true;
        }
  }
  return plan;
}

void append(GeneratorWord& out, const GeneratorWord& w, int sign = 1) {
  auto push = [&](WordLetter l) {
    if (!out.empty() && out.back().member == l.member && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  };
  if (sign > 0)
    for (const auto& l : w) push(l);
  else
    for (auto it = w.rbegin(); it != w.rend(); ++it) push({it->member, -it->sign});
}

GeneratorWord inverted(const GeneratorWord& w) {
  GeneratorWord out;
  append(out, w, -1);
  return out;
}

Tree grow_last(Tree t, int leaves) {
  while (t.leaf_count() < leaves) t = t.attach_caret(t.leaf_count());
  return t;
}

Tree grow_first(Tree t, int times) {
  for (int k = 0; k < times; ++k) t = t.attach_caret(1);
  return t;
}

std::string spec_text(const PureGeneratorSpec& s) {
  return "A[" + std::to_string(s.i) + "," + std::to_string(s.j) + "] in P_" + std::to_string(s.m);
}

class Decomposer {
 public:
  explicit Decomposer(const GeneratorSet& set) : set_(set), plan_(*set.plan), n_(set.context->arity()) {}

  GeneratorWord run(const BFElement& input) {
    BFElement x = input.strands() == 1 ? expand(input, 1) : input;
    GeneratorWord out = tree_word(x.t1(), x.t2());
    const Tree& t = x.t2();
    const Tree vine = Tree::right_vine_with_leaves(n_, t.leaf_count());
    for (const auto& a : x.braid().letters()) append(out, conjugated(t, vine, letter_word({t.leaf_count(), a.i, a.j})), a.sign);
    for (int p = 1; p <= t.leaf_count(); ++p)
      for (Letter l : x.labels()[p - 1].letters()) append(out, label_on(t, p, std::abs(l), l > 0 ? 1 : -1));
    return out;
  }

 private:
  // (a, 1, 1, b) over the Brown members.
  GeneratorWord tree_word(const Tree& a, const Tree& b) {
    if (a == b) return {};
    const std::string ka = a.str(), kb = b.str();
    const bool flip = kb < ka;
    const auto key = flip ? std::pair{kb, ka} : std::pair{ka, kb};
    auto it = tree_words_.find(key);
    if (it == tree_words_.end()) {
      GeneratorWord w;
      for (const auto& g : fn_factorize(flip ? make_pair(b, a) : make_pair(a, b))) {
        const int member = plan_.brown_members.at(g.index);
        if (member < 0) throw std::logic_error("decompose: Brown generator missing from the set");
        append(w, {{member, g.sign}});
      }
      it = tree_words_.emplace(key, std::move(w)).first;
    }
    return flip ? inverted(it->second) : it->second;
  }

  GeneratorWord conjugated(const Tree& t, const Tree& via, const GeneratorWord& w) {
    GeneratorWord out = tree_word(t, via);
    append(out, w);
    append(out, tree_word(via, t));
    return out;
  }

  Tree vine(int m) const { return Tree::right_vine_with_leaves(n_, m); }

  // (R_m, A, 1, R_m) with R_m the right vine.
  const GeneratorWord& letter_word(const PureGeneratorSpec& s) {
    if (auto it = letters_.find(s); it != letters_.end()) return it->second;
    GeneratorWord w = derive(s);
    return letters_.emplace(s, std::move(w)).first->second;
  }

  GeneratorWord derive(const PureGeneratorSpec& s) {
    auto it = plan_.rules.find(s);
    Rule rule;
    if (it != plan_.rules.end()) {
      rule = it->second;
    } else {
      // n untouched consecutive strands form a cable of a letter on fewer strands
      int c = 0;
      for (int start = 1; start + n_ - 1 <= s.m && !c; ++start)
        if ((s.i < start || s.i > start + n_ - 1) && (s.j < start || s.j > start + n_ - 1)) c = start;
      if (!c) throw std::logic_error("decompose: no derivation for " + spec_text(s));
      auto shrink = [&](int k) { return k > c ? k - n_ + 1 : k; };
      rule.kind = RuleKind::cable_part;
      rule.source = {s.m - n_ + 1, shrink(s.i), shrink(s.j)};
      rule.t = c;
      rule.part = 0;
    }
    switch (rule.kind) {
      case RuleKind::member:
        return {{rule.member, 1}};
      case RuleKind::cable_source: {
        const Tree t = vine(rule.source.m).attach_caret(rule.t);
        const Tree v = vine(t.leaf_count());
        GeneratorWord out;
        for (const auto& p : cable_parts(rule.source, rule.t, n_)) append(out, conjugated(t, v, letter_word(p)));
        return out;
      }
      case RuleKind::cable_part: {
        const Tree t = vine(rule.source.m).attach_caret(rule.t);
        const Tree v = vine(t.leaf_count());
        const auto parts = cable_parts(rule.source, rule.t, n_);
        GeneratorWord out = tree_word(v, t);
        for (int k = rule.part - 1; k >= 0; --k) append(out, conjugated(t, v, letter_word(parts[k])), -1);
        append(out, letter_word(rule.source));
        for (int k = static_cast<int>(parts.size()) - 1; k > rule.part; --k)
          append(out, conjugated(t, v, letter_word(parts[k])), -1);
        append(out, tree_word(t, v));
        return out;
      }
      case RuleKind::labelled: {
        const int k = std::min(s.i, s.m - n_ + 1);
        const Tree small = vine(s.m - n_ + 1);
        const Tree tk = small.attach_caret(k);
        GeneratorWord out = tree_word(vine(s.m), tk);
        append(out, label_on(small, k, rule.hgen, 1));
        for (int c = k; c < k + n_; ++c) append(out, label_on(tk, c, rule.hgen, -1));
        append(out, tree_word(tk, vine(s.m)));
        return out;
      }
    }
    throw std::logic_error("decompose: unknown rule");
  }

  int label_member(int position, int hgen) const {
    auto it = plan_.label_members.find({position, hgen});
    if (it == plan_.label_members.end())
      throw std::logic_error("decompose: no member labels position " + std::to_string(position) + " with generator " +
                             std::to_string(hgen));
    return it->second;
  }

  struct Canonical {
    Tree tree;
    GeneratorWord word;
  };

  // (Q, 1, lambda_{p,h}, Q) for some tree Q with q leaves.
  const Canonical& label_canonical(int q, int p, int hgen) {
    const auto key = std::tuple{q, p, hgen};
    if (auto it = labels_.find(key); it != labels_.end()) return it->second;
    if (q < n_) throw std::logic_error("decompose: label on a single leaf");
    const Tree r = Tree::caret(n_);
    Canonical c{r, {}};
    if (p == 1) {
      c = {grow_last(r, q), {{label_member(1, hgen), 1}}};
    } else if ((p - 1) % (n_ - 1) != 0) {
      const int start = (p - 2) % (n_ - 1) + 2;
      c = {grow_last(grow_first(r, (p - start) / (n_ - 1)), q), {{label_member(start, hgen), 1}}};
    } else if (p == q) {
      c = {grow_first(r, (q - n_) / (n_ - 1)), {{label_member(n_, hgen), 1}}};
    } else {
      // expand the last-leaf label at p, then strip its cable braid and the copies
      const Tree p0 = grow_first(r, (p - n_) / (n_ - 1));
      std::vector<Label> ls(p, Label(set_.context->rank()));
      ls[p - 1] = Label(set_.context->rank(), std::vector<Letter>{hgen});
      const BFElement e = expand(BFElement(set_.context, p0, AWord(p), std::move(ls), p0), p);
      const Tree& p1 = e.t1();
      const Tree v = vine(p1.leaf_count());
      GeneratorWord w;
      const auto& bl = e.braid().letters();
      for (auto it = bl.rbegin(); it != bl.rend(); ++it)
        append(w, conjugated(p1, v, letter_word({e.strands(), it->i, it->j})), -it->sign);
      append(w, {{label_member(n_, hgen), 1}});
      for (int k = p + 1; k < p + n_; ++k) append(w, label_on(p1, k, hgen, -1));
      c = {grow_last(p1, q), std::move(w)};
    }
    return labels_.emplace(key, std::move(c)).first->second;
  }

  GeneratorWord label_on(const Tree& t, int p, int hgen, int sign) {
    const Canonical& c = label_canonical(t.leaf_count(), p, hgen);
    const Tree q = c.tree;
    GeneratorWord inner = sign > 0 ? c.word : inverted(c.word);
    return conjugated(t, q, inner);
  }

  const GeneratorSet& set_;
  const DerivationPlan& plan_;
  int n_;
  std::map<std::pair<std::string, std::string>, GeneratorWord> tree_words_;
  std::map<PureGeneratorSpec, GeneratorWord> letters_;
  std::map<std::tuple<int, int, int>, Canonical> labels_;
};

// --------------------------------------------------------------- the sets

std::string spec_name(const PureGeneratorSpec& s) {
  return "A" + std::to_string(s.m) + "_" + std::to_string(s.i) + "_" + std::to_string(s.j);
}

void add_brown(GeneratorSet& set) {
  const auto pairs = brown_generator_pairs(set.context->arity());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int m = pairs[k].domain.leaf_count();
    set.names.push_back("x" + std::to_string(k));
    set.members.emplace_back(set.context, pairs[k].domain, AWord(m),
                             std::vector<Label>(m, Label(set.context->rank())), pairs[k].range);
    MemberInfo in;
    in.brown_index = static_cast<int>(k);
    set.info.push_back(in);
  }
}

void add_braid(GeneratorSet& set, const PureGeneratorSpec& s) {
  const Tree t = Tree::right_vine_with_leaves(set.context->arity(), s.m);
  set.names.push_back(spec_name(s));
  set.members.emplace_back(set.context, t, AWord(s.m, {{s.i, s.j, 1}}), std::vector<Label>(s.m, Label(set.context->rank())), t);
  MemberInfo in;
  in.kind = MemberKind::braid;
  in.spec = s;
  set.info.push_back(in);
}

void add_labels(GeneratorSet& set) {
  const HContext& ctx = *set.context;
  const int n = ctx.arity();
  const Tree r = Tree::caret(n);
  for (int p = 1; p <= n; ++p)
    for (int h = 1; h <= ctx.rank(); ++h) {
      std::vector<Label> ls(n, Label(ctx.rank()));
      ls[p - 1] = Label(ctx.rank(), std::vector<Letter>{h});
      set.names.push_back("L" + std::to_string(p) + "_" + ctx.generators()[h - 1].name);
      set.members.emplace_back(set.context, r, AWord(n), std::move(ls), r);
      MemberInfo in;
      in.kind = MemberKind::label;
      in.position = p;
      in.hgen = h;
      set.info.push_back(in);
    }
}

}  // namespace

int GeneratorSet::find(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  return -1;
}

GeneratorSet gen2_set(const ContextPtr& ctx) {
  GeneratorSet set;
  set.context = ctx;
  set.family = ctx->rank() == 0 ? "gen1" : "gen2";
  add_brown(set);
  for (const auto& s : enumerate_irreducible(ctx->arity())) add_braid(set, s);
  add_labels(set);
  set.plan = build_plan(set);
  return set;
}

GeneratorSet gen1_set(int n) { return gen2_set(make_context(n)); }

GeneratorSet gen3_set(int n) {
  GeneratorSet set;
  set.context = std::make_shared<const HContext>(HContext::pure_braid_group(n));
  set.family = "gen3";
  add_brown(set);
  for (const auto& s : enumerate_irreducible(n))
    if (s.j - s.i == n || s.m == n) add_braid(set, s);
  add_labels(set);
  set.plan = build_plan(set);
  return set;
}

GeneratorWord decompose(const BFElement& x, const GeneratorSet& set) {
  if (!set.plan) throw std::logic_error("decompose: generator set has no derivation plan");
  if (x.context() != set.context && !(*x.context() == *set.context))
    throw std::invalid_argument("decompose: element and set use different contexts");
  return Decomposer(set).run(x);
}

BFElement evaluate(const GeneratorWord& w, const GeneratorSet& set) {
  BFElement acc = BFElement::identity(set.context);
  for (const auto& l : w) {
    const BFElement& g = set.members.at(l.member);
    acc = multiply(acc, l.sign > 0 ? g : inverse(g));
  }
  return acc;
}

std::string word_to_string(const GeneratorWord& w, const GeneratorSet& set) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += set.names.at(l.member);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

// ----------------------------------------------------------- verification

VerificationReport verify_generating(const GeneratorSet& set, int samples, std::uint64_t seed,
                                     const RandomBounds& bounds, int threads) {
  using clock = std::chrono::steady_clock;
  VerificationReport rep;
  rep.family = set.family;
  rep.arity = set.context->arity();
  rep.set_size = set.size();
  rep.samples = samples;
  rep.results.resize(std::max(0, samples));
  std::vector<std::string> failures(rep.results.size());

  const auto start = clock::now();
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < samples; k = next++) {
      auto& r = rep.results[k];
      r.seed = seed + static_cast<std::uint64_t>(k);
      const auto t0 = clock::now();
      const BFElement x = random_element(set.context, r.seed, bounds);
      try {
        const GeneratorWord w = decompose(x, set);
        r.word_length = w.size();
        r.ok = equal(evaluate(w, set), x);
        if (!r.ok) r.error = "evaluation differs from the input";
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      if (!r.ok) failures[k] = format_element(x);
      r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    }
  };
  int count = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  count = std::max(1, std::min(count, samples));
  std::vector<std::thread> pool;
  for (int k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  rep.total_seconds = std::chrono::duration<double>(clock::now() - start).count();

  for (std::size_t k = 0; k < rep.results.size(); ++k) {
    const auto& r = rep.results[k];
    if (r.ok) ++rep.successes;
    rep.max_word_length = std::max(rep.max_word_length, r.word_length);
    if (!r.ok && rep.first_failure.empty()) rep.first_failure = failures[k];
  }
  return rep;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  os << family << " n=" << arity << " size=" << set_size << ": " << successes << "/" << samples
     << " round trips, max word length " << max_word_length << ", " << total_seconds << " s\n";
  for (const auto& r : results)
    if (!r.ok) os << "  seed " << r.seed << " failed: " << r.error << "\n";
  if (!first_failure.empty()) os << "  first failing element: " << first_failure << "\n";
  return os.str();
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["family"] = family;
  j["arity"] = arity;
  j["set_size"] = set_size;
  j["samples"] = samples;
  j["successes"] = successes;
  j["success_rate"] = samples ? static_cast<double>(successes) / samples : 1.0;
  j["max_word_length"] = max_word_length;
  j["total_seconds"] = total_seconds;
  auto& rs = j["results"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json e{{"seed", r.seed}, {"ok", r.ok}, {"word_length", r.word_length}, {"seconds", r.seconds}};
    if (!r.error.empty()) e["error"] = r.error;
    rs.push_back(std::move(e));
  }
  if (!first_failure.empty()) j["first_failure"] = first_failure;
  return j.dump(2);
}

}  // namespace bft
