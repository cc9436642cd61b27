#include "bft/bfgroup.hpp"

#include <random>
#include <stdexcept>

namespace bft {

HContext::HContext(int arity, std::vector<HGenerator> generators)
    : arity_(arity), generators_(std::move(generators)) {
  check_arity(arity);
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& g = generators_[k];
    if (g.word.strands() != arity)
      throw std::invalid_argument("H-generator '" + g.name + "' must have " + std::to_string(arity) + " strands");
    if (g.name.empty()) throw std::invalid_argument("H-generator names must be nonempty");
    for (std::size_t l = 0; l < k; ++l)
      if (generators_[l].name == g.name) throw std::invalid_argument("duplicate H-generator '" + g.name + "'");
  }
}

HContext HContext::pure_braid_group(int arity) {
  std::vector<HGenerator> gens;
  for (int i = 1; i <= arity; ++i)
    for (int j = i + 1; j <= arity; ++j)
      gens.push_back({"a" + std::to_string(i) + "_" + std::to_string(j), AWord(arity, {{i, j, 1}})});
  return HContext(arity, std::move(gens));
}

int HContext::find(const std::string& name) const {
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k].name == name) return static_cast<int>(k) + 1;
  return 0;
}

ContextPtr make_context(int arity, std::vector<HGenerator> generators) {
  return std::make_shared<const HContext>(arity, std::move(generators));
}

BFElement::BFElement(ContextPtr ctx, Tree t1, AWord braid, std::vector<Label> labels, Tree t2)
    : ctx_(std::move(ctx)), t1_(std::move(t1)), braid_(std::move(braid)), labels_(std::move(labels)),
      t2_(std::move(t2)) {
  if (!ctx_) throw std::invalid_argument("BFElement: missing context");
  const int n = ctx_->arity();
  if (t1_.arity() != n || t2_.arity() != n)
    throw std::invalid_argument("BFElement: tree arity differs from the context arity " + std::to_string(n));
  const int m = t1_.leaf_count();
  if (t2_.leaf_count() != m)
    throw std::invalid_argument("BFElement: trees have " + std::to_string(m) + " and " +
                                std::to_string(t2_.leaf_count()) + " leaves");
  if (braid_.strands() != m)
    throw std::invalid_argument("BFElement: braid has " + std::to_string(braid_.strands()) + " strands, trees have " +
                                std::to_string(m) + " leaves");
  if (static_cast<int>(labels_.size()) != m)
    throw std::invalid_argument("BFElement: " + std::to_string(labels_.size()) + " labels for " + std::to_string(m) +
                                " leaves");
  for (const auto& l : labels_)
    if (l.rank() != ctx_->rank()) throw std::invalid_argument("BFElement: label rank differs from the number of H-generators");
}

BFElement BFElement::identity(ContextPtr ctx, const Tree& t) {
  const int rank = ctx->rank();
  return BFElement(std::move(ctx), t, AWord(t.leaf_count()), std::vector<Label>(t.leaf_count(), Label(rank)), t);
}

BFElement BFElement::identity(ContextPtr ctx) {
  const int n = ctx->arity();
  return identity(std::move(ctx), Tree(n));
}

bool BFElement::operator==(const BFElement& o) const {
  return (ctx_ == o.ctx_ || *ctx_ == *o.ctx_) && t1_ == o.t1_ && braid_ == o.braid_ && labels_ == o.labels_ &&
         t2_ == o.t2_;
}

namespace {

void check_same_context(const BFElement& x, const BFElement& y) {
  if (x.context() != y.context() && !(*x.context() == *y.context()))
    throw std::invalid_argument("elements belong to different contexts");
}

}  // namespace

AWord label_to_braid(const Label& l, const HContext& ctx) {
  AWord out(ctx.arity());
  for (Letter a : l.letters()) {
    const AWord& g = ctx.generators().at(std::abs(a) - 1).word;
    out = out * (a > 0 ? g : g.inverse());
  }
  return out;
}

bool label_trivial(const Label& l, const HContext& ctx) { return l.empty() || is_trivial(label_to_braid(l, ctx)); }

BFElement expand(const BFElement& x, int leaf) {
  check_leaf_index(x.t1(), leaf);
  const int n = x.arity();
  const Label& l = x.labels()[leaf - 1];
  AWord braid = split_a(x.braid(), leaf, n, label_to_braid(l, *x.context()));
  std::vector<Label> labels = x.labels();
  labels.insert(labels.begin() + leaf, n - 1, l);
  return BFElement(x.context(), x.t1().attach_caret(leaf), std::move(braid), std::move(labels),
                   x.t2().attach_caret(leaf));
}

BFElement expand_to(const BFElement& x, Side side, const Tree& target) {
  const Tree& from = side == Side::left ? x.t1() : x.t2();
  BFElement out = x;
  for (int leaf : expansion_script(from, target)) out = expand(out, leaf);
  return out;
}

BFElement multiply(const BFElement& x, const BFElement& y) {
  check_same_context(x, y);
  const Tree j = join(x.t2(), y.t1()).tree;
  const BFElement xe = expand_to(x, Side::right, j);
  const BFElement ye = expand_to(y, Side::left, j);
  std::vector<Label> labels;
  labels.reserve(xe.labels().size());
  for (std::size_t k = 0; k < xe.labels().size(); ++k) labels.push_back(xe.labels()[k] * ye.labels()[k]);
  return BFElement(x.context(), xe.t1(), xe.braid() * ye.braid(), std::move(labels), ye.t2());
}

BFElement inverse(const BFElement& x) {
  std::vector<Label> labels;
  labels.reserve(x.labels().size());
  for (const auto& l : x.labels()) labels.push_back(l.inverse());
  return BFElement(x.context(), x.t2(), x.braid().inverse(), std::move(labels), x.t1());
}

bool is_identity(const BFElement& x) {
  if (!(x.t1() == x.t2())) return false;
  for (const auto& l : x.labels())
    if (!label_trivial(l, *x.context())) return false;
  return is_trivial(x.braid());
}

bool equal(const BFElement& x, const BFElement& y) {
  check_same_context(x, y);
  return is_identity(multiply(x, inverse(y)));
}

namespace {

bool try_reduce_at(const BFElement& x, int i, BFElement& out) {
  const int n = x.arity();
  if (!x.t1().has_caret_at(i) || !x.t2().has_caret_at(i)) return false;
  const HContext& ctx = *x.context();
  const Label& l = x.labels()[i - 1];
  const AWord inner = label_to_braid(l, ctx);
  for (int k = i + 1; k < i + n; ++k)
    if (!braids_equal(label_to_braid(x.labels()[k - 1], ctx), inner)) return false;
  AWord candidate = x.braid();
  for (int k = i + n - 1; k > i; --k) candidate = delete_strand(candidate, k);
  if (!braids_equal(split_a(candidate, i, n, inner), x.braid())) return false;
  std::vector<Label> labels = x.labels();
  labels.erase(labels.begin() + i, labels.begin() + i + n - 1);
  out = BFElement(x.context(), x.t1().collapse_caret(i), std::move(candidate), std::move(labels),
                  x.t2().collapse_caret(i));
  return true;
}

}  // namespace

BFElement reduce(const BFElement& x) {
  BFElement cur = x;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i + cur.arity() - 1 <= cur.strands(); ++i) {
      if (try_reduce_at(cur, i, cur)) {
        changed = true;
        break;
      }
    }
  }
  return cur;
}

Sign pvb_sign(const BFElement& x) {
  if (!(x.t1() == x.t2())) throw std::invalid_argument("pvb_sign: trees differ, element is not in PVB(H)");
  for (const auto& l : x.labels()) {
    if (l.empty()) continue;
    AWord b = label_to_braid(l, *x.context());
    if (Sign s = kr_sign(b); s != Sign::zero) return s;
  }
  return kr_sign(x.braid());
}

Sign bf_sign(const BFElement& x) {
  if (!(x.t1() == x.t2())) return fn_sign(make_pair(x.t1(), x.t2()));
  return pvb_sign(x);
}

std::strong_ordering compare(const BFElement& x, const BFElement& y) {
  check_same_context(x, y);
  switch (bf_sign(multiply(inverse(x), y))) {
    case Sign::positive:
      return std::strong_ordering::less;
    case Sign::negative:
      return std::strong_ordering::greater;
    default:
      return std::strong_ordering::equal;
  }
}

namespace {

Tree random_tree(int n, int carets, std::mt19937_64& rng) {
  Tree t(n);
  for (int c = 0; c < carets; ++c) {
    std::uniform_int_distribution<int> leaf(1, t.leaf_count());
    t = t.attach_caret(leaf(rng));
  }
  return t;
}

}  // namespace

BFElement random_element(const ContextPtr& ctx, std::uint64_t seed, const RandomBounds& bounds) {
  std::mt19937_64 rng(seed);
  const int n = ctx->arity();
  const int max_carets = std::max(0, (bounds.max_leaves - 1) / (n - 1));
  const int carets = std::uniform_int_distribution<int>(0, max_carets)(rng);
  Tree t1 = random_tree(n, carets, rng);
  Tree t2 = std::bernoulli_distribution(bounds.equal_trees_probability)(rng) ? t1 : random_tree(n, carets, rng);
  const int m = t1.leaf_count();

  std::vector<ALetter> letters;
  if (m >= 2) {
    const int len = std::uniform_int_distribution<int>(0, bounds.max_braid_length)(rng);
    for (int k = 0; k < len; ++k) {
      const int i = std::uniform_int_distribution<int>(1, m - 1)(rng);
      const int j = std::uniform_int_distribution<int>(i + 1, m)(rng);
      letters.push_back({i, j, std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
    }
  }

  std::vector<Label> labels;
  const int rank = ctx->rank();
  for (int k = 0; k < m; ++k) {
    std::vector<Letter> word;
    if (rank > 0 && std::bernoulli_distribution(0.5)(rng)) {
      const int len = std::uniform_int_distribution<int>(1, std::max(1, bounds.max_label_length))(rng);
      for (int l = 0; l < len; ++l) {
        const int g = std::uniform_int_distribution<int>(1, rank)(rng);
        word.push_back(std::bernoulli_distribution(0.5)(rng) ? g : -g);
      }
    }
    labels.emplace_back(rank, word);
  }
  return BFElement(ctx, std::move(t1), free_reduce(AWord(m, std::move(letters))), std::move(labels), std::move(t2));
}

}  // namespace bft
