#pragma once

// Free groups, truncated Magnus expansions and the Magnus bi-order.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bft/sign.hpp"

namespace bft {

// A letter is a nonzero integer: +k is x_k, -k is x_k^-1 (k is 1-based).
using Letter = int;

/// Append `w` to `out`, cancelling at the junction. `out` stays freely reduced
/// provided both inputs were.
void append_reduced(std::vector<Letter>& out, std::span<const Letter> w);
void append_inverse_reduced(std::vector<Letter>& out, std::span<const Letter> w);

/// A freely reduced word in the free group of the given rank.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(int rank) : rank_(rank) {}
  /// Reduces `letters`; throws std::out_of_range on an index outside 1..rank.
  FreeWord(int rank, std::span<const Letter> letters);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& other) const;

  bool operator==(const FreeWord&) const = default;

  /// `x1 x2^-1` style text; empty word prints as `1`.
  std::string str() const;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

FreeWord reduce_word(int rank, std::span<const Letter> letters);

/// Parses `x3 x1^-1`; `1` or an empty string is the identity.
FreeWord parse_free_word(int rank, const std::string& text);

// Monomials in noncommuting variables X_1..X_r.
using Monomial = std::vector<int>;

/// Degree first, then lexicographic with X_1 < X_2 < ...
int monomial_compare(const Monomial& a, const Monomial& b);

/// Integer polynomial in noncommuting variables, truncated above a fixed degree.
class NCPolynomial {
 public:
  NCPolynomial(int rank, int degree);

  static NCPolynomial constant(int rank, int degree, std::int64_t c);
  static NCPolynomial variable(int rank, int degree, int index);

  int rank() const { return rank_; }
  int degree() const { return degree_; }

  std::int64_t coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, std::int64_t c);

  /// Terms in increasing monomial order; no zero coefficients.
  std::vector<std::pair<Monomial, std::int64_t>> terms() const;
  std::size_t term_count() const { return terms_.size(); }

  NCPolynomial operator+(const NCPolynomial& q) const;
  NCPolynomial operator-(const NCPolynomial& q) const;
  NCPolynomial operator-() const;
  NCPolynomial operator*(const NCPolynomial& q) const;
  bool operator==(const NCPolynomial& q) const;

  std::string str() const;

 private:
  // Key: one char per variable index. std::string compares as unsigned char,
  // so KeyOrder matches monomial_compare.
  struct KeyOrder {
    bool operator()(const std::string& a, const std::string& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  friend NCPolynomial magnus_truncated(const FreeWord& w, int degree);
  friend Sign magnus_sign(const FreeWord& w);

  void check_compatible(const NCPolynomial& q) const;

  int rank_;
  int degree_;
  std::map<std::string, std::int64_t, KeyOrder> terms_;
};

NCPolynomial nc_add(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial nc_negate(const NCPolynomial& p);
NCPolynomial nc_multiply(const NCPolynomial& p, const NCPolynomial& q);

/// Image of `w` under x_i -> 1 + X_i, truncated above `degree`.
NCPolynomial magnus_truncated(const FreeWord& w, int degree);

/// Sign of the coefficient of the least nonconstant monomial of the Magnus
/// expansion. Deepens the truncation 1, 2, 4, ... up to 2|w|.
Sign magnus_sign(const FreeWord& w);

}  // namespace bft
