#pragma once

// n-irreducible pure generators, the three finite generating sets of BF_n(H),
// and decomposition of arbitrary elements over them.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bft/bfgroup.hpp"

namespace bft {

/// A_{i,j} in P_m.
struct PureGeneratorSpec {
  int m = 2;
  int i = 1;
  int j = 2;
  bool operator==(const PureGeneratorSpec&) const = default;
  auto operator<=>(const PureGeneratorSpec&) const = default;
};

/// i <= n, j - i <= n and m - j < n.
bool is_n_irreducible(const PureGeneratorSpec& spec, int n);
/// All irreducible specs, ordered by m, then i, then j.
std::vector<PureGeneratorSpec> enumerate_irreducible(int n);

enum class MemberKind { brown, braid, label };

struct MemberInfo {
  MemberKind kind = MemberKind::brown;
  int brown_index = 0;       // brown: 0-based Brown generator
  PureGeneratorSpec spec;    // braid
  int position = 0;          // label: leaf position in the one-caret tree
  int hgen = 0;              // label: 1-based H-generator
};

struct DerivationPlan;

struct GeneratorSet {
  ContextPtr context;
  std::string family;  // "gen1", "gen2", "gen3"
  std::vector<std::string> names;
  std::vector<BFElement> members;
  std::vector<MemberInfo> info;
  std::shared_ptr<const DerivationPlan> plan;

  std::size_t size() const { return members.size(); }
  /// Index of the named member, or -1.
  int find(const std::string& name) const;
};

/// Brown pairs plus (R_m, A_{i,j}, 1, R_m) per irreducible spec, R_m the right vine.
GeneratorSet gen1_set(int n);
/// gen1 over ctx plus (R, 1, lambda_{i,h}, R) for each position i <= n and generator h.
GeneratorSet gen2_set(const ContextPtr& ctx);
/// H = P_n: Brown pairs, irreducible specs with j - i = n or m = n, and the
/// labelled one-caret elements for every position and standard generator.
GeneratorSet gen3_set(int n);

struct WordLetter {
  int member = 0;
  int sign = 1;
  bool operator==(const WordLetter&) const = default;
};
using GeneratorWord = std::vector<WordLetter>;

/// A word whose evaluation is equal to x. Throws std::logic_error if the set
/// cannot produce a required piece.
GeneratorWord decompose(const BFElement& x, const GeneratorSet& set);
BFElement evaluate(const GeneratorWord& w, const GeneratorSet& set);
std::string word_to_string(const GeneratorWord& w, const GeneratorSet& set);

struct SampleResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::size_t word_length = 0;
  double seconds = 0;
  std::string error;
};

struct VerificationReport {
  std::string family;
  int arity = 0;
  std::size_t set_size = 0;
  int samples = 0;
  int successes = 0;
  std::size_t max_word_length = 0;
  double total_seconds = 0;
  std::vector<SampleResult> results;
  /// Text form of the first failing element, empty if none failed.
  std::string first_failure;

  bool passed() const { return successes == samples; }
  std::string text() const;
  std::string json() const;
};

/// Decomposes `samples` seeded random elements and re-multiplies them.
VerificationReport verify_generating(const GeneratorSet& set, int samples, std::uint64_t seed,
                                     const RandomBounds& bounds = {}, int threads = 0);

}  // namespace bft
