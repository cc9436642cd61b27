#pragma once

// Elements (T1, p, labels, T2) of the pure braided Thompson groups BF_n(H),
// their group law and the bi-order.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bft/braid.hpp"
#include "bft/freegroup.hpp"
#include "bft/sign.hpp"
#include "bft/trees.hpp"

namespace bft {

struct HGenerator {
  std::string name;
  AWord word;
  bool operator==(const HGenerator&) const = default;
};

/// Arity n and the generators of H < P_n. An empty generator list is H = {1}.
class HContext {
 public:
  explicit HContext(int arity, std::vector<HGenerator> generators = {});

  /// H = P_n with generators a{i}_{j} = A[i,j].
  static HContext pure_braid_group(int arity);

  int arity() const { return arity_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  const std::vector<HGenerator>& generators() const { return generators_; }
  /// 1-based index of the named generator, or 0.
  int find(const std::string& name) const;

  bool operator==(const HContext&) const = default;

 private:
  int arity_;
  std::vector<HGenerator> generators_;
};

using ContextPtr = std::shared_ptr<const HContext>;

ContextPtr make_context(int arity, std::vector<HGenerator> generators = {});

/// A label is a word in the generators of H (x_k is generator k).
using Label = FreeWord;

class BFElement {
 public:
  /// Validates leaf, strand and label counts and the arity of both trees.
  BFElement(ContextPtr ctx, Tree t1, AWord braid, std::vector<Label> labels, Tree t2);

  /// (T, 1, trivial labels, T).
  static BFElement identity(ContextPtr ctx, const Tree& t);
  static BFElement identity(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  int arity() const { return ctx_->arity(); }
  int strands() const { return braid_.strands(); }
  const Tree& t1() const { return t1_; }
  const Tree& t2() const { return t2_; }
  const AWord& braid() const { return braid_; }
  const std::vector<Label>& labels() const { return labels_; }

  /// Structural equality (same representative). Group equality is `equal`.
  bool operator==(const BFElement& o) const;

 private:
  ContextPtr ctx_;
  Tree t1_;
  AWord braid_;
  std::vector<Label> labels_;
  Tree t2_;
};

AWord label_to_braid(const Label& l, const HContext& ctx);
bool label_trivial(const Label& l, const HContext& ctx);

BFElement expand(const BFElement& x, int leaf);

enum class Side { left, right };
BFElement expand_to(const BFElement& x, Side side, const Tree& target);

BFElement multiply(const BFElement& x, const BFElement& y);
BFElement inverse(const BFElement& x);
bool is_identity(const BFElement& x);
bool equal(const BFElement& x, const BFElement& y);
/// Removes verified carets until none remains; the result is equal to x.
BFElement reduce(const BFElement& x);

/// Requires t1 = t2.
Sign pvb_sign(const BFElement& x);
Sign bf_sign(const BFElement& x);
/// less iff bf_sign(x^-1 y) is positive.
std::strong_ordering compare(const BFElement& x, const BFElement& y);

struct RandomBounds {
  int max_leaves = 9;
  int max_braid_length = 16;
  int max_label_length = 4;
  /// Chance that t2 is drawn equal to t1, so that PVB(H) is exercised.
  double equal_trees_probability = 0.4;
};

BFElement random_element(const ContextPtr& ctx, std::uint64_t seed, const RandomBounds& bounds = {});

}  // namespace bft
