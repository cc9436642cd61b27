#pragma once

// Text and JSON forms of elements and contexts.
//
//   { <tree> ; <braid word> ; [ <label>, ... ] ; <tree> }
//
// Trees are `*` or `(t1,...,tn)`, braid words `A[1,2] A[2,3]^-1` (empty or `1`
// for the identity), labels are words in the H-generator names or `1`.

#include <stdexcept>
#include <string>

#include "bft/bfgroup.hpp"

namespace bft {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Tree parse_tree(int arity, const std::string& text);
BFElement parse_element(const ContextPtr& ctx, const std::string& text);
std::string format_element(const BFElement& x);

/// `name=<pure braid word>`, for example `h=A[1,2] A[2,3]^-1`.
HGenerator parse_hgenerator(int arity, const std::string& text);

/// {"arity", "context", "t1", "braid", "labels", "t2"}; trees are nested
/// arrays with [] for a leaf, letters are [i, j, sign], labels are lists of
/// signed 1-based generator indices.
std::string element_to_json(const BFElement& x, int indent = -1);
/// Builds its own context from the "context" field.
BFElement element_from_json(const std::string& text);

}  // namespace bft
