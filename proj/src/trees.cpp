#include "bft/trees.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bft {

namespace {

char digit(int d) { return static_cast<char>('0' + d); }

bool is_proper_prefix(const Address& p, const Address& a) {
  return a.size() > p.size() && a.compare(0, p.size(), p) == 0;
}

std::vector<Address> leaves_of_node_set(const std::set<Address>& nodes) {
  std::vector<Address> leaves;
  for (const auto& a : nodes)
    if (!nodes.contains(a + digit(0))) leaves.push_back(a);
  return leaves;
}

}  // namespace

void check_arity(int arity) {
  if (arity < 2 || arity > kMaxArity)
    throw std::invalid_argument("arity must be in 2.." + std::to_string(kMaxArity) + ", got " +
                                std::to_string(arity));
}

void check_leaf_index(const Tree& t, int leaf) {
  if (leaf < 1 || leaf > t.leaf_count())
    throw std::out_of_range("leaf index " + std::to_string(leaf) + " outside 1.." +
                            std::to_string(t.leaf_count()));
}

Tree::Tree(int arity) : arity_(arity), leaves_{Address{}} { check_arity(arity); }

Tree Tree::from_leaves(int arity, std::vector<Address> leaves) {
  check_arity(arity);
  if (leaves.empty()) throw std::invalid_argument("tree must have at least one leaf");
  std::sort(leaves.begin(), leaves.end());
  std::set<Address> nodes;
  for (const auto& a : leaves) {
    for (char c : a)
      if (c < '0' || c >= digit(arity)) throw std::invalid_argument("address digit out of range in '" + a + "'");
    for (std::size_t k = 0; k <= a.size(); ++k) nodes.insert(a.substr(0, k));
  }
  for (std::size_t k = 0; k + 1 < leaves.size(); ++k)
    if (leaves[k] == leaves[k + 1] || is_proper_prefix(leaves[k], leaves[k + 1]))
      throw std::invalid_argument("leaf '" + leaves[k] + "' is not a leaf");
  for (const auto& a : nodes) {
    bool any = nodes.contains(a + digit(0));
    for (int d = 0; d < arity; ++d)
      if (nodes.contains(a + digit(d)) != any)
        throw std::invalid_argument("node '" + a + "' does not have exactly 0 or n children");
  }
  return Tree(arity, std::move(leaves));
}

Tree Tree::caret(int arity) { return Tree(arity).attach_caret(1); }

Tree Tree::right_vine(int arity, int carets) {
  Tree t(arity);
  for (int k = 0; k < carets; ++k) t = t.attach_caret(t.leaf_count());
  return t;
}

Tree Tree::right_vine_with_leaves(int arity, int leaves) {
  check_arity(arity);
  if (!is_admissible_leaf_count(arity, leaves))
    throw std::invalid_argument("no full " + std::to_string(arity) + "-ary tree has " + std::to_string(leaves) +
                                " leaves");
  return right_vine(arity, (leaves - 1) / (arity - 1));
}

std::set<Address> Tree::nodes() const {
  std::set<Address> out;
  for (const auto& a : leaves_)
    for (std::size_t k = 0; k <= a.size(); ++k) out.insert(a.substr(0, k));
  return out;
}

bool Tree::is_internal(const Address& a) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), a);
  return it != leaves_.end() && is_proper_prefix(a, *it);
}

bool Tree::has_node(const Address& a) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), a);
  return it != leaves_.end() && it->compare(0, a.size(), a) == 0;
}

int Tree::leaf_index(const Address& a) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), a);
  if (it == leaves_.end() || *it != a) return 0;
  return static_cast<int>(it - leaves_.begin()) + 1;
}

Tree Tree::attach_caret(int leaf) const {
  check_leaf_index(*this, leaf);
  std::vector<Address> out;
  out.reserve(leaves_.size() + arity_ - 1);
  out.insert(out.end(), leaves_.begin(), leaves_.begin() + (leaf - 1));
  for (int d = 0; d < arity_; ++d) out.push_back(leaves_[leaf - 1] + digit(d));
  out.insert(out.end(), leaves_.begin() + leaf, leaves_.end());
  return Tree(arity_, std::move(out));
}

std::string Tree::str() const {
  std::string out;
  auto rec = [&](auto&& self, const Address& a) -> void {
    if (!is_internal(a)) {
      out += '*';
      return;
    }
    out += '(';
    for (int d = 0; d < arity_; ++d) {
      if (d) out += ',';
      self(self, a + digit(d));
    }
    out += ')';
  };
  rec(rec, Address{});
  return out;
}

std::vector<Address> leaf_addresses(const Tree& t) { return t.leaves(); }

bool is_admissible_leaf_count(int arity, int leaves) { return leaves >= 1 && (leaves - 1) % (arity - 1) == 0; }

NAdicInterval leaf_interval(const Tree& t, int leaf) {
  check_leaf_index(t, leaf);
  const Address& a = t.leaves()[leaf - 1];
  NAdicInterval out;
  out.depth = static_cast<int>(a.size());
  for (char c : a) {
    std::uint64_t next;
    if (__builtin_mul_overflow(out.numerator, static_cast<std::uint64_t>(t.arity()), &next) ||
        __builtin_add_overflow(next, static_cast<std::uint64_t>(c - '0'), &out.numerator))
      throw std::overflow_error("leaf_interval: leaf too deep for 64-bit numerator");
  }
  return out;
}

std::vector<int> expansion_script(const Tree& from, const Tree& to) {
  if (from.arity() != to.arity()) throw std::invalid_argument("expansion_script: arity mismatch");
  for (const auto& a : to.leaves())
    if (from.is_internal(a)) throw std::invalid_argument("expansion_script: target does not expand source");
  std::vector<int> script;
  Tree cur = from;
  for (int k = 1; k <= cur.leaf_count();) {
    const Address& a = cur.leaves()[k - 1];
    if (to.is_internal(a)) {
      cur = cur.attach_caret(k);
      script.push_back(k);
    } else if (!to.has_node(a)) {
      throw std::invalid_argument("expansion_script: target does not expand source");
    } else {
      ++k;
    }
  }
  return script;
}

Tree apply_script(Tree t, const std::vector<int>& script) {
  for (int k : script) t = t.attach_caret(k);
  return t;
}

JoinResult join(const Tree& a, const Tree& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("join: arity mismatch");
  if (a == b) return {a, {}, {}};
  std::set<Address> nodes = a.nodes();
  nodes.merge(b.nodes());
  Tree j = Tree::from_leaves(a.arity(), leaves_of_node_set(nodes));
  return {j, expansion_script(a, j), expansion_script(b, j)};
}

TreePair make_pair(Tree domain, Tree range) {
  if (domain.arity() != range.arity()) throw std::invalid_argument("tree pair: arity mismatch");
  if (domain.leaf_count() != range.leaf_count()) throw std::invalid_argument("tree pair: leaf counts differ");
  return {std::move(domain), std::move(range)};
}

TreePair pair_identity(int arity) { return {Tree(arity), Tree(arity)}; }

TreePair pair_multiply(const TreePair& f, const TreePair& g) {
  if (f.domain.arity() != g.domain.arity()) throw std::invalid_argument("pair_multiply: arity mismatch");
  JoinResult j = join(f.range, g.domain);
  return {apply_script(f.domain, j.script_first), apply_script(g.range, j.script_second)};
}

TreePair pair_inverse(const TreePair& f) { return {f.range, f.domain}; }

bool Tree::has_caret_at(int leaf) const {
  const int k = leaf - 1;
  const auto& ls = leaves_;
  if (k < 0 || k + arity_ > static_cast<int>(ls.size())) return false;
  const Address& first = ls[k];
  if (first.empty() || first.back() != '0') return false;
  const std::size_t plen = first.size() - 1;
  for (int d = 0; d < arity_; ++d) {
    const Address& a = ls[k + d];
    if (a.size() != first.size() || a.compare(0, plen, first, 0, plen) != 0 || a.back() != digit(d)) return false;
  }
  return true;
}

Tree Tree::collapse_caret(int leaf) const {
  if (!has_caret_at(leaf)) throw std::invalid_argument("collapse_caret: no caret at leaf " + std::to_string(leaf));
  const int k = leaf - 1;
  std::vector<Address> out;
  out.insert(out.end(), leaves_.begin(), leaves_.begin() + k);
  out.push_back(leaves_[k].substr(0, leaves_[k].size() - 1));
  out.insert(out.end(), leaves_.begin() + k + arity_, leaves_.end());
  return Tree(arity_, std::move(out));
}

TreePair pair_reduce(const TreePair& f) {
  TreePair cur = f;
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k + cur.domain.arity() <= cur.domain.leaf_count(); ++k) {
      if (cur.domain.has_caret_at(k + 1) && cur.range.has_caret_at(k + 1)) {
        cur = {cur.domain.collapse_caret(k + 1), cur.range.collapse_caret(k + 1)};
        changed = true;
        break;
      }
    }
  }
  return cur;
}

bool pair_is_identity(const TreePair& f) {
  TreePair r = pair_reduce(f);
  return r.domain == r.range;
}

bool pair_equal(const TreePair& f, const TreePair& g) { return pair_is_identity(pair_multiply(f, pair_inverse(g))); }

Sign fn_sign(const TreePair& f) {
  const auto& d = f.domain.leaves();
  const auto& r = f.range.leaves();
  for (std::size_t k = 0; k < d.size() && k < r.size(); ++k) {
    if (d[k].size() == r[k].size()) continue;
    return d[k].size() > r[k].size() ? Sign::positive : Sign::negative;
  }
  return Sign::zero;
}

std::vector<TreePair> brown_generator_pairs(int arity) {
  check_arity(arity);
  const int n = arity;
  const Tree r = Tree::caret(n);
  const Tree rn = r.attach_caret(n);
  std::vector<TreePair> out;
  for (int i = 1; i < n; ++i) out.push_back({rn, r.attach_caret(i)});
  out.push_back({rn.attach_caret(2 * n - 1), rn.attach_caret(n)});
  return out;
}

TreePair pair_evaluate(int arity, const std::vector<GenLetter>& word) {
  const auto gens = brown_generator_pairs(arity);
  TreePair acc = pair_identity(arity);
  for (const auto& l : word) {
    if (l.index < 0 || l.index >= static_cast<int>(gens.size()))
      throw std::out_of_range("pair_evaluate: generator index out of range");
    acc = pair_multiply(acc, l.sign > 0 ? gens[l.index] : pair_inverse(gens[l.index]));
  }
  return acc;
}

namespace {

// The infinite generating family x_N, N >= 0: with N = p(n-1) + i - 1 (i in
// 1..n-1), x_N rotates the caret hanging at position i of the p-th spine node.
TreePair leaf_generator(int n, int index) {
  const int p = index / (n - 1);
  const int i = index % (n - 1) + 1;
  return {Tree::right_vine(n, p + 2), Tree::right_vine(n, p + 1).attach_caret(p * (n - 1) + i)};
}

void append_word(std::vector<GenLetter>& out, const std::vector<GenLetter>& w, int sign) {
  auto push = [&](GenLetter l) {
    if (!out.empty() && out.back().index == l.index && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  };
  if (sign > 0)
    for (const auto& l : w) push(l);
  else
    for (auto it = w.rbegin(); it != w.rend(); ++it) push({it->index, -it->sign});
}

// x_N for N >= n is a conjugate of x_{N-(n-1)} by x_0. Each rewrite is checked
// against the tree-pair arithmetic before it is used.
class LeafGeneratorWords {
 public:
  explicit LeafGeneratorWords(int n) : n_(n) {}

  const std::vector<GenLetter>& word(int index) {
    if (auto it = cache_.find(index); it != cache_.end()) return it->second;
    std::vector<GenLetter> w;
    if (index < n_) {
      w.push_back({index, 1});
    } else {
      const auto& inner = word(index - (n_ - 1));
      const TreePair target = leaf_generator(n_, index);
      bool found = false;
      for (int eps : {1, -1}) {
        std::vector<GenLetter> cand;
        append_word(cand, {{0, eps}}, 1);
        append_word(cand, inner, 1);
        append_word(cand, {{0, -eps}}, 1);
        if (pair_equal(pair_evaluate(n_, cand), target)) {
          w = std::move(cand);
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("fn_factorize: conjugation rewrite failed verification");
    }
    return cache_.emplace(index, std::move(w)).first->second;
  }

 private:
  int n_;
  std::map<int, std::vector<GenLetter>> cache_;
};

Address spine(int n, int q) { return Address(static_cast<std::size_t>(q), digit(n - 1)); }

// Rewrites the caret under child (i-1) of spine node q onto the spine.
Tree rotate_onto_spine(const Tree& t, int q, int i) {
  const int n = t.arity();
  const Address s = spine(n, q);
  std::vector<Address> out;
  out.reserve(t.leaves().size());
  for (const auto& a : t.leaves()) {
    if (a.size() <= s.size() || a.compare(0, s.size(), s) != 0) {
      out.push_back(a);
      continue;
    }
    const int c = a[s.size()] - '0';
    int seq;
    std::size_t rest;
    if (c < i - 1) {
      seq = c;
      rest = s.size() + 1;
    } else if (c == i - 1) {
      seq = (i - 1) + (a[s.size() + 1] - '0');
      rest = s.size() + 2;
    } else {
      seq = c + n - 1;
      rest = s.size() + 1;
    }
    Address na = s;
    if (seq < n - 1) {
      na += digit(seq);
    } else {
      na += digit(n - 1);
      na += digit(seq - (n - 1));
    }
    na += a.substr(rest);
    out.push_back(std::move(na));
  }
  return Tree::from_leaves(n, std::move(out));
}

// Word in leaf generators equal to (vine, t).
std::vector<int> vine_to_tree_word(const Tree& t) {
  const int n = t.arity();
  std::vector<int> found;
  Tree cur = t;
  for (;;) {
    int hit_q = -1, hit_i = -1;
    for (int q = 0; hit_q < 0 && cur.is_internal(spine(n, q)); ++q)
      for (int c = 0; c < n - 1; ++c)
        if (cur.is_internal(spine(n, q) + digit(c))) {
          hit_q = q;
          hit_i = c + 1;
          break;
        }
    if (hit_q < 0) break;
    cur = rotate_onto_spine(cur, hit_q, hit_i);
    found.push_back(hit_q * (n - 1) + hit_i - 1);
  }
  std::reverse(found.begin(), found.end());
  return found;
}

}  // namespace

std::vector<GenLetter> fn_factorize(const TreePair& f) {
  const int n = f.domain.arity();
  if (f.domain.leaf_count() != f.range.leaf_count()) throw std::invalid_argument("fn_factorize: leaf counts differ");
  LeafGeneratorWords words(n);
  std::vector<GenLetter> out;
  // (A, B) = (V, A)^-1 (V, B) with V the right vine of the same size.
  const auto left = vine_to_tree_word(f.domain);
  const auto right = vine_to_tree_word(f.range);
  for (auto it = left.rbegin(); it != left.rend(); ++it) append_word(out, words.word(*it), -1);
  for (int idx : right) append_word(out, words.word(idx), 1);
  if (!pair_equal(pair_evaluate(n, out), f)) throw std::logic_error("fn_factorize: round trip failed");
  return out;
}

}  // namespace bft
