#pragma once

// Full n-ary trees, caret calculus, and the Thompson group F_n on tree pairs.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bft/sign.hpp"

namespace bft {

constexpr int kMaxArity = 16;

// Addresses are strings of child digits, one char ('0' + d) per level.
using Address = std::string;

/// Leaf interval [numerator / n^depth, (numerator + 1) / n^depth].
struct NAdicInterval {
  std::uint64_t numerator = 0;
  int depth = 0;
  bool operator==(const NAdicInterval&) const = default;
};

/// A finite full n-ary tree, stored as its leaves in left-to-right order.
/// Structural equality is equality of address sets.
class Tree {
 public:
  /// The single-leaf tree.
  explicit Tree(int arity);

  /// Validates that `leaves` are the leaves of a full n-ary tree.
  static Tree from_leaves(int arity, std::vector<Address> leaves);
  /// One caret.
  static Tree caret(int arity);
  /// Carets attached repeatedly to the last leaf.
  static Tree right_vine(int arity, int carets);
  /// The right vine with `leaves` leaves; throws unless leaves = 1 + k(n-1).
  static Tree right_vine_with_leaves(int arity, int leaves);

  int arity() const { return arity_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int caret_count() const { return (leaf_count() - 1) / (arity_ - 1); }
  const std::vector<Address>& leaves() const { return leaves_; }
  /// Every node, internal and leaf, in lexicographic order.
  std::set<Address> nodes() const;
  bool is_internal(const Address& a) const;
  bool has_node(const Address& a) const;

  /// T[i]: attach a caret to leaf i (1-based).
  Tree attach_caret(int leaf) const;
  /// Leaves leaf..leaf+n-1 (1-based) are the children of one caret.
  bool has_caret_at(int leaf) const;
  /// Inverse of attach_caret; throws unless has_caret_at(leaf).
  Tree collapse_caret(int leaf) const;
  /// Index (1-based) of the leaf with the given address, or 0.
  int leaf_index(const Address& a) const;

  bool operator==(const Tree& o) const = default;

  /// `*` for a leaf, `(t1,...,tn)` for a caret.
  std::string str() const;

 private:
  Tree(int arity, std::vector<Address> leaves) : arity_(arity), leaves_(std::move(leaves)) {}
  int arity_;
  std::vector<Address> leaves_;
};

void check_arity(int arity);
void check_leaf_index(const Tree& t, int leaf);

std::vector<Address> leaf_addresses(const Tree& t);
NAdicInterval leaf_interval(const Tree& t, int leaf);
/// Leaf count is always 1 + k(n-1).
bool is_admissible_leaf_count(int arity, int leaves);

/// Common expansion of two trees with the caret scripts reaching it.
struct JoinResult {
  Tree tree;
  std::vector<int> script_first;
  std::vector<int> script_second;
};

/// Minimal common expansion (union of the node sets).
JoinResult join(const Tree& a, const Tree& b);
/// Leaf indices whose successive caret attachments turn `from` into `to`.
/// Throws std::invalid_argument if `to` does not expand `from`.
std::vector<int> expansion_script(const Tree& from, const Tree& to);
Tree apply_script(Tree t, const std::vector<int>& script);

/// An element of F_n: leaf k of the domain tree maps to leaf k of the range tree.
struct TreePair {
  Tree domain;
  Tree range;
  bool operator==(const TreePair&) const = default;
};

TreePair make_pair(Tree domain, Tree range);
TreePair pair_identity(int arity);
TreePair pair_multiply(const TreePair& f, const TreePair& g);
TreePair pair_inverse(const TreePair& f);
/// Cancels carets present at the same leaf positions in both trees.
TreePair pair_reduce(const TreePair& f);
bool pair_is_identity(const TreePair& f);
bool pair_equal(const TreePair& f, const TreePair& g);

/// Slope sign at the leftmost point moved: positive iff the first leaf with
/// differing depths is deeper in the domain tree.
Sign fn_sign(const TreePair& f);

/// Brown's n generators: (R[n], R[i]) for i < n and (R[n][2n-1], R[n][n]).
std::vector<TreePair> brown_generator_pairs(int arity);

/// Letter of a word over the Brown generators (0-based index).
struct GenLetter {
  int index = 0;
  int sign = 1;
  bool operator==(const GenLetter&) const = default;
};

/// Word in the Brown generators evaluating to `f`.
std::vector<GenLetter> fn_factorize(const TreePair& f);
TreePair pair_evaluate(int arity, const std::vector<GenLetter>& word);

}  // namespace bft
