#pragma once

// Braid words over the sigma and pure (A_{i,j}) alphabets, the Artin action
// as an equality oracle, strand deletion and cabling, Artin combing and the
// Kim-Rolfsen order on pure braids.

#include <cstddef>
#include <string>
#include <vector>

#include "bft/freegroup.hpp"
#include "bft/sign.hpp"

namespace bft {

/// Word in sigma_1..sigma_{m-1}; letter +k is sigma_k, -k its inverse.
class SigmaWord {
 public:
  explicit SigmaWord(int strands) : strands_(strands) { check(); }
  SigmaWord(int strands, std::vector<int> letters);

  int strands() const { return strands_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  SigmaWord inverse() const;
  SigmaWord operator*(const SigmaWord& o) const;
  bool operator==(const SigmaWord&) const = default;
  std::string str() const;

 private:
  void check() const;
  int strands_;
  std::vector<int> letters_;
};

/// A_{i,j}^{sign}, 1 <= i < j.
struct ALetter {
  int i = 1;
  int j = 2;
  int sign = 1;
  ALetter inverse() const { return {i, j, -sign}; }
  bool operator==(const ALetter&) const = default;
  auto operator<=>(const ALetter&) const = default;
};

/// Word over the pure braid generators A_{i,j} = s_i^-1 .. s_{j-2}^-1 s_{j-1}^-2 s_{j-2} .. s_i.
class AWord {
 public:
  explicit AWord(int strands) : strands_(strands) { check(); }
  AWord(int strands, std::vector<ALetter> letters);

  int strands() const { return strands_; }
  const std::vector<ALetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  AWord inverse() const;
  /// Concatenation with free cancellation at the junction.
  AWord operator*(const AWord& o) const;
  bool operator==(const AWord&) const = default;
  /// `A[1,2] A[2,4]^-1`; the empty word prints as an empty string.
  std::string str() const;

 private:
  void check() const;
  int strands_;
  std::vector<ALetter> letters_;
};

AWord free_reduce(const AWord& w);
/// Cancels inverse pairs separated only by letters that commute with them.
AWord commutation_reduce(const AWord& w);
/// A_{i,j} and A_{r,s} commute when their strand pairs are disjoint and not
/// interleaved (r < s < i < j or i < r < s < j, and symmetrically).
bool letters_commute(const ALetter& a, const ALetter& b);

/// Parses sigma letters `s3`, `s3^-1`.
SigmaWord parse_sigma_word(int strands, const std::string& text);
/// Parses `A[2,4]`, `A[2,4]^-1`; `1` or empty is the identity.
AWord parse_a_word(int strands, const std::string& text);

SigmaWord a_to_sigma(const AWord& w);

/// perm[k-1] is the bottom position of the strand starting at position k.
std::vector<int> permutation(const SigmaWord& w);
bool is_pure(const SigmaWord& w);

/// Images of x_1..x_m under the Artin action; the leftmost letter acts outermost.
struct ArtinImage {
  int rank = 0;
  std::vector<FreeWord> images;
  bool operator==(const ArtinImage&) const = default;
};

ArtinImage artin_image(const SigmaWord& w);
ArtinImage artin_image(const AWord& w);

bool braids_equal(const SigmaWord& u, const SigmaWord& v);
bool braids_equal(const AWord& u, const AWord& v);
bool braids_equal(const AWord& u, const SigmaWord& v);
bool is_trivial(const AWord& w);

/// Forget strand d (any strand of a pure braid word).
AWord delete_strand(const AWord& w, int d);
/// Diagram strand deletion on a pure sigma word.
SigmaWord delete_strand_sigma(const SigmaWord& w, int d);

/// Letter (i,j) -> (i+offset-1, j+offset-1) inside `total` strands.
AWord shift_embed(const AWord& w, int offset, int total);

/// Replace the strand at position t of a pure braid by n parallel strands.
SigmaWord split_sigma(const SigmaWord& w, int t, int n);
/// Image of one letter under cabling strand t into n strands (no inner braid).
AWord cable_substitution(const ALetter& a, int strands, int t, int n);
/// b[t, inner]: cable strand t into n strands and braid them as `inner`.
AWord split_a(const AWord& w, int t, int n, const AWord& inner);

/// Coordinates of the Artin combing. coordinates[0] is the level-m word
/// (strand 1 around strands 2..m), the last is level 2. Level k has rank k-1,
/// with x_{j-1} standing for A_{1,j} of that level's strands.
struct CombedForm {
  int strands = 1;
  std::vector<FreeWord> coordinates;
  bool operator==(const CombedForm&) const = default;
};

struct CombOptions {
  /// Ceiling on the total length of intermediate kernel images.
  std::size_t max_word_length = std::size_t{1} << 24;
  /// Ceiling on the number of monomials in a truncated Magnus series (kr_sign).
  std::size_t max_series_terms = std::size_t{1} << 20;
};

/// A_{r,s}^{sign} A_{1,j} A_{r,s}^{-sign} for 2 <= r < s, as a word in the
/// kernel basis x_{l-1} = A_{1,l}.
std::vector<Letter> kernel_conjugate(int r, int s, int sign, int j);
/// Checks every conjugation rule against the Artin action up to `strands`.
/// Throws std::logic_error on the first mismatch.
void validate_conjugation_schema(int strands);

CombedForm comb(const AWord& w, const CombOptions& opts = {});
AWord uncomb(const CombedForm& c);

/// Lexicographic Magnus sign over coordinates, deepest quotient (level 2) first.
/// Coordinates are never expanded: each level is combed directly into its
/// truncated Magnus series.
Sign kr_sign(const AWord& w, const CombOptions& opts = {});

}  // namespace bft
