#include "bft/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace bft {

// ---------------------------------------------------------------- words

SigmaWord::SigmaWord(int strands, std::vector<int> letters) : strands_(strands), letters_(std::move(letters)) {
  check();
}

void SigmaWord::check() const {
  if (strands_ < 1) throw std::invalid_argument("braid needs at least one strand");
  for (int a : letters_)
    if (a == 0 || std::abs(a) >= strands_)
      throw std::out_of_range("sigma index " + std::to_string(std::abs(a)) + " outside 1.." +
                              std::to_string(strands_ - 1));
}

SigmaWord SigmaWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& a : out) a = -a;
  return SigmaWord(strands_, std::move(out));
}

SigmaWord SigmaWord::operator*(const SigmaWord& o) const {
  if (strands_ != o.strands_) throw std::invalid_argument("sigma words: strand count mismatch");
  std::vector<int> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return SigmaWord(strands_, std::move(out));
}

std::string SigmaWord::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << ' ';
    os << 's' << std::abs(letters_[k]);
    if (letters_[k] < 0) os << "^-1";
  }
  return os.str();
}

AWord::AWord(int strands, std::vector<ALetter> letters) : strands_(strands), letters_(std::move(letters)) { check(); }

void AWord::check() const {
  if (strands_ < 1) throw std::invalid_argument("braid needs at least one strand");
  for (const auto& a : letters_) {
    if (a.i < 1 || a.j <= a.i || a.j > strands_)
      throw std::out_of_range("A[" + std::to_string(a.i) + "," + std::to_string(a.j) + "] outside " +
                              std::to_string(strands_) + " strands");
    if (a.sign != 1 && a.sign != -1) throw std::invalid_argument("A-letter sign must be +1 or -1");
  }
}

AWord AWord::inverse() const {
  std::vector<ALetter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return AWord(strands_, std::move(out));
}

AWord AWord::operator*(const AWord& o) const {
  if (strands_ != o.strands_) throw std::invalid_argument("A-words: strand count mismatch");
  std::vector<ALetter> out = letters_;
  for (const auto& a : o.letters_) {
    if (!out.empty() && out.back() == a.inverse())
      out.pop_back();
    else
      out.push_back(a);
  }
  return AWord(strands_, std::move(out));
}

std::string AWord::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    const auto& a = letters_[k];
    if (k) os << ' ';
    os << "A[" << a.i << ',' << a.j << ']';
    if (a.sign < 0) os << "^-1";
  }
  return os.str();
}

AWord free_reduce(const AWord& w) { return AWord(w.strands()) * w; }

bool letters_commute(const ALetter& a, const ALetter& b) {
  if (a.i == b.i && a.j == b.j) return true;
  auto separated = [](const ALetter& x, const ALetter& y) {
    return x.j < y.i || (x.i < y.i && y.j < x.j);
  };
  return separated(a, b) || separated(b, a);
}

AWord commutation_reduce(const AWord& w) {
  std::vector<ALetter> out;
  out.reserve(w.size());
  for (const auto& a : w.letters()) {
    bool cancelled = false;
    for (std::size_t k = out.size(); k-- > 0;) {
      if (out[k] == a.inverse()) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
        cancelled = true;
        break;
      }
      if (!letters_commute(out[k], a)) break;
    }
    if (!cancelled) out.push_back(a);
  }
  return AWord(w.strands(), std::move(out));
}

namespace {

int parse_exponent(const std::string& tok, const std::string& exp) {
  if (exp.empty() || exp == "1") return 1;
  if (exp == "-1") return -1;
  throw std::invalid_argument("bad exponent in '" + tok + "'");
}

}  // namespace

SigmaWord parse_sigma_word(int strands, const std::string& text) {
  static const std::regex letter(R"(s(\d+)(?:\^(-?1))?)");
  std::istringstream is(text);
  std::vector<int> out;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    std::smatch m;
    if (!std::regex_match(tok, m, letter)) throw std::invalid_argument("bad sigma letter '" + tok + "'");
    out.push_back(parse_exponent(tok, m[2]) * std::stoi(m[1]));
  }
  return SigmaWord(strands, std::move(out));
}

AWord parse_a_word(int strands, const std::string& text) {
  static const std::regex letter(R"(A\[(\d+),(\d+)\](?:\^(-?1))?)");
  std::istringstream is(text);
  std::vector<ALetter> out;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    std::smatch m;
    if (!std::regex_match(tok, m, letter)) throw std::invalid_argument("bad pure-braid letter '" + tok + "'");
    out.push_back({std::stoi(m[1]), std::stoi(m[2]), parse_exponent(tok, m[3])});
  }
  return AWord(strands, std::move(out));
}

// ---------------------------------------------------------- sigma level

namespace {

void append_a_letter_sigma(std::vector<int>& out, const ALetter& a) {
  // A_{i,j} = s_i^-1 .. s_{j-2}^-1 s_{j-1}^-2 s_{j-2} .. s_i
  std::vector<int> body;
  for (int k = a.i; k <= a.j - 2; ++k) body.push_back(-k);
  body.push_back(-(a.j - 1));
  body.push_back(-(a.j - 1));
  for (int k = a.j - 2; k >= a.i; --k) body.push_back(k);
  if (a.sign > 0) {
    out.insert(out.end(), body.begin(), body.end());
  } else {
    for (auto it = body.rbegin(); it != body.rend(); ++it) out.push_back(-*it);
  }
}

}  // namespace

SigmaWord a_to_sigma(const AWord& w) {
  std::vector<int> out;
  for (const auto& a : w.letters()) append_a_letter_sigma(out, a);
  return SigmaWord(w.strands(), std::move(out));
}

std::vector<int> permutation(const SigmaWord& w) {
  // strand_at[p] = strand (by starting position) currently at position p
  std::vector<int> strand_at(w.strands());
  for (int p = 0; p < w.strands(); ++p) strand_at[p] = p + 1;
  for (int a : w.letters()) {
    int k = std::abs(a);
    std::swap(strand_at[k - 1], strand_at[k]);
  }
  std::vector<int> perm(w.strands());
  for (int p = 0; p < w.strands(); ++p) perm[strand_at[p] - 1] = p + 1;
  return perm;
}

bool is_pure(const SigmaWord& w) {
  auto perm = permutation(w);
  for (int k = 0; k < w.strands(); ++k)
    if (perm[k] != k + 1) return false;
  return true;
}

// ------------------------------------------------------------ Artin action

namespace {

using Word = std::vector<Letter>;

Word substitute(const std::vector<Word>& img, const Word& pattern) {
  Word out;
  for (Letter a : pattern) {
    if (a > 0)
      append_reduced(out, img[a]);
    else
      append_inverse_reduced(out, img[-a]);
  }
  return out;
}

// Right-multiply the automorphism held in `img` (1-based) by sigma_k^{+-1}.
void act_sigma(std::vector<Word>& img, int letter) {
  const int k = std::abs(letter);
  Word& a = img[k];
  Word& b = img[k + 1];
  if (letter > 0) {
    // x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k
    Word na = a;
    append_reduced(na, b);
    append_inverse_reduced(na, a);
    b = std::move(a);
    a = std::move(na);
  } else {
    // x_k -> x_{k+1}, x_{k+1} -> x_{k+1}^-1 x_k x_{k+1}
    Word nb;
    append_inverse_reduced(nb, b);
    append_reduced(nb, a);
    append_reduced(nb, b);
    a = std::move(b);
    b = std::move(nb);
  }
}

std::vector<Word> identity_images(int m) {
  std::vector<Word> img(m + 1);
  for (int k = 1; k <= m; ++k) img[k] = {k};
  return img;
}

// Action of one A-letter: the images of x_i..x_j (others are fixed).
struct LetterAction {
  std::vector<Word> images;  // index k - i
};

const LetterAction& letter_action(const ALetter& a) {
  static std::mutex mu;
  static std::map<ALetter, LetterAction> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(a); it != cache.end()) return it->second;
  std::vector<int> sig;
  append_a_letter_sigma(sig, a);
  auto img = identity_images(a.j);
  for (int s : sig) act_sigma(img, s);
  LetterAction act;
  for (int k = a.i; k <= a.j; ++k) act.images.push_back(img[k]);
  return cache.emplace(a, std::move(act)).first->second;
}

void act_a_letter(std::vector<Word>& img, const ALetter& a) {
  const LetterAction& act = letter_action(a);
  std::vector<Word> fresh;
  fresh.reserve(act.images.size());
  for (const auto& pattern : act.images) fresh.push_back(substitute(img, pattern));
  for (int k = a.i; k <= a.j; ++k) img[k] = std::move(fresh[k - a.i]);
}

ArtinImage to_image(int m, std::vector<Word> img) {
  ArtinImage out;
  out.rank = m;
  for (int k = 1; k <= m; ++k) out.images.emplace_back(m, img[k]);
  return out;
}

std::vector<Word> raw_image(const AWord& w) {
  auto img = identity_images(w.strands());
  for (const auto& a : w.letters()) act_a_letter(img, a);
  return img;
}

}  // namespace

ArtinImage artin_image(const SigmaWord& w) {
  auto img = identity_images(w.strands());
  for (int s : w.letters()) act_sigma(img, s);
  return to_image(w.strands(), std::move(img));
}

ArtinImage artin_image(const AWord& w) { return to_image(w.strands(), raw_image(w)); }

namespace {

// Left normal form Delta^power A_1 ... A_r. A simple element is stored as the
// permutation perm[k] = bottom position of the strand starting at position k.
using Simple = std::vector<int>;

struct NormalForm {
  int strands = 1;
  long power = 0;
  std::vector<Simple> factors;
  bool operator==(const NormalForm&) const = default;
};

Simple identity_simple(int n) {
  Simple p(n);
  for (int k = 0; k < n; ++k) p[k] = k;
  return p;
}

Simple delta_simple(int n) {
  Simple p(n);
  for (int k = 0; k < n; ++k) p[k] = n - 1 - k;
  return p;
}

bool is_identity_simple(const Simple& p) {
  for (int k = 0; k < static_cast<int>(p.size()); ++k)
    if (p[k] != k) return false;
  return true;
}

// Conjugation by Delta.
Simple flip(const Simple& p) {
  const int n = static_cast<int>(p.size());
  Simple q(n);
  for (int k = 0; k < n; ++k) q[k] = n - 1 - p[n - 1 - k];
  return q;
}

Simple inverse_perm(const Simple& p) {
  Simple q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) q[p[k]] = static_cast<int>(k);
  return q;
}

// (a, b) becomes left-weighted: every sigma_i starting b also finishes a.
// Returns true if anything moved.
bool left_weight(Simple& a, Simple& b) {
  const int n = static_cast<int>(a.size());
  bool moved = false;
  Simple ainv = inverse_perm(a);
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i + 1 < n; ++i) {
      // i starts b, and does not finish a
      if (b[i] > b[i + 1] && ainv[i] < ainv[i + 1]) {
        std::swap(ainv[i], ainv[i + 1]);
        a[ainv[i]] = i;
        a[ainv[i + 1]] = i + 1;
        std::swap(b[i], b[i + 1]);
        moved = again = true;
      }
    }
  }
  return moved;
}

void append_simple(NormalForm& nf, Simple s) {
  if (is_identity_simple(s)) return;
  auto& f = nf.factors;
  f.push_back(std::move(s));
  for (std::size_t k = f.size() - 1; k > 0; --k)
    if (!left_weight(f[k - 1], f[k])) break;
  const Simple delta = delta_simple(nf.strands);
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == delta) ++lead;
  if (lead) {
    nf.power += static_cast<long>(lead);
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(lead));
  }
  while (!f.empty() && is_identity_simple(f.back())) f.pop_back();
}

// Right-multiply by Delta^-1: Delta^p A_1..A_r Delta^-1 = Delta^(p-1) flip(A_1)..flip(A_r).
void append_delta_inverse(NormalForm& nf) {
  --nf.power;
  for (auto& a : nf.factors) a = flip(a);
}

NormalForm normal_form(const SigmaWord& w) {
  const int n = w.strands();
  NormalForm nf;
  nf.strands = n;
  for (int a : w.letters()) {
    const int i = std::abs(a) - 1;
    if (a > 0) {
      Simple s = identity_simple(n);
      std::swap(s[i], s[i + 1]);
      append_simple(nf, std::move(s));
    } else {
      // sigma_i^-1 = Delta^-1 (Delta sigma_i^-1)
      append_delta_inverse(nf);
      Simple d = delta_simple(n);
      // Delta sigma_i^-1: drop the crossing of the strands ending at i, i+1
      Simple dinv = inverse_perm(d);
      std::swap(dinv[i], dinv[i + 1]);
      append_simple(nf, inverse_perm(dinv));
    }
  }
  return nf;
}

bool trivial_normal_form(const NormalForm& nf) { return nf.power == 0 && nf.factors.empty(); }

}  // namespace

bool braids_equal(const SigmaWord& u, const SigmaWord& v) {
  if (u.strands() != v.strands()) throw std::invalid_argument("braids_equal: strand count mismatch");
  return normal_form(u) == normal_form(v);
}

bool is_trivial(const AWord& w) {
  AWord r = commutation_reduce(w);
  if (r.empty()) return true;
  return trivial_normal_form(normal_form(a_to_sigma(r)));
}

bool braids_equal(const AWord& u, const AWord& v) {
  if (u.strands() != v.strands()) throw std::invalid_argument("braids_equal: strand count mismatch");
  return is_trivial(u * v.inverse());
}

bool braids_equal(const AWord& u, const SigmaWord& v) {
  if (u.strands() != v.strands()) throw std::invalid_argument("braids_equal: strand count mismatch");
  return braids_equal(a_to_sigma(u), v);
}

// ------------------------------------------------------ deletion, cabling

AWord delete_strand(const AWord& w, int d) {
  if (d < 1 || d > w.strands()) throw std::out_of_range("delete_strand: strand index out of range");
  if (w.strands() < 2) throw std::invalid_argument("delete_strand: cannot delete the only strand");
  std::vector<ALetter> out;
  auto shift = [d](int k) { return k > d ? k - 1 : k; };
  for (const auto& a : w.letters()) {
    if (a.i == d || a.j == d) continue;
    out.push_back({shift(a.i), shift(a.j), a.sign});
  }
  return free_reduce(AWord(w.strands() - 1, std::move(out)));
}

SigmaWord delete_strand_sigma(const SigmaWord& w, int d) {
  if (d < 1 || d > w.strands()) throw std::out_of_range("delete_strand_sigma: strand index out of range");
  if (!is_pure(w)) throw std::invalid_argument("delete_strand_sigma: braid is not pure");
  std::vector<int> strand_at(w.strands());
  for (int p = 0; p < w.strands(); ++p) strand_at[p] = p + 1;
  std::vector<int> out;
  for (int a : w.letters()) {
    const int k = std::abs(a);
    const int left = strand_at[k - 1], right = strand_at[k];
    std::swap(strand_at[k - 1], strand_at[k]);
    if (left == d || right == d) continue;
    // position of strand d before this crossing
    int pd = 0;
    while (strand_at[pd] != d) ++pd;
    const int nk = (pd + 1 < k) ? k - 1 : k;
    out.push_back(a > 0 ? nk : -nk);
  }
  return SigmaWord(w.strands() - 1, std::move(out));
}

AWord shift_embed(const AWord& w, int offset, int total) {
  if (offset < 1 || offset + w.strands() - 1 > total)
    throw std::out_of_range("shift_embed: block does not fit in " + std::to_string(total) + " strands");
  std::vector<ALetter> out;
  out.reserve(w.size());
  for (const auto& a : w.letters()) out.push_back({a.i + offset - 1, a.j + offset - 1, a.sign});
  return AWord(total, std::move(out));
}

SigmaWord split_sigma(const SigmaWord& w, int t, int n) {
  if (t < 1 || t > w.strands()) throw std::out_of_range("split_sigma: strand index out of range");
  if (n < 1) throw std::invalid_argument("split_sigma: cable needs at least one strand");
  if (!is_pure(w)) throw std::invalid_argument("split_sigma: braid is not pure");
  int p = t;  // position of the cable's first strand in the new diagram
  std::vector<int> out;
  for (int a : w.letters()) {
    const int k = std::abs(a);
    const int e = a > 0 ? 1 : -1;
    if (k + 1 < p) {
      out.push_back(e * k);
    } else if (k > p) {
      out.push_back(e * (k + n - 1));
    } else if (k == p) {
      // cable (p..p+n-1) crosses the strand at p+n, which moves to p
      for (int c = p + n - 1; c >= p; --c) out.push_back(e * c);
      ++p;
    } else {
      // strand at k = p-1 crosses the cable, ending at p-1+n
      for (int c = k; c <= k + n - 1; ++c) out.push_back(e * c);
      --p;
    }
  }
  return SigmaWord(w.strands() + n - 1, std::move(out));
}

AWord cable_substitution(const ALetter& a, int strands, int t, int n) {
  if (t < 1 || t > strands) throw std::out_of_range("cable_substitution: strand index out of range");
  if (a.j > strands) throw std::out_of_range("cable_substitution: letter outside strands");
  const int total = strands + n - 1;
  auto up = [&](int k) { return k > t ? k + n - 1 : k; };
  std::vector<ALetter> body;
  if (a.i == t) {
    // strand j (now at j+n-1) links every cable strand; outer cable strand first
    for (int c = n - 1; c >= 0; --c) body.push_back({t + c, up(a.j), 1});
  } else if (a.j == t) {
    for (int c = n - 1; c >= 0; --c) body.push_back({a.i, t + c, 1});
  } else {
    body.push_back({up(a.i), up(a.j), 1});
  }
  AWord out(total, std::move(body));
  return a.sign > 0 ? out : out.inverse();
}

AWord split_a(const AWord& w, int t, int n, const AWord& inner) {
  if (t < 1 || t > w.strands()) throw std::out_of_range("split_a: strand index out of range");
  if (inner.strands() != n) throw std::invalid_argument("split_a: inner braid must have n strands");
  const int total = w.strands() + n - 1;
  std::vector<ALetter> out;
  for (const auto& a : w.letters()) {
    AWord piece = cable_substitution(a, w.strands(), t, n);
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  AWord result(total, std::move(out));
  return result * shift_embed(inner, t, total);
}

// --------------------------------------------------------------- combing

std::vector<Letter> kernel_conjugate(int r, int s, int sign, int j) {
  if (r < 2 || s <= r || j < 2) throw std::out_of_range("kernel_conjugate: bad indices");
  const Letter J = j - 1, R = r - 1, S = s - 1;
  auto conj = [&](std::vector<Letter> by) {
    std::vector<Letter> out;
    append_reduced(out, by);
    append_reduced(out, std::vector<Letter>{J});
    append_inverse_reduced(out, by);
    return out;
  };
  if (j < r || j > s) return {J};
  if (j == s) return sign > 0 ? conj({-R}) : conj({S, R});
  if (j == r) return sign > 0 ? conj({-R, -S}) : conj({S});
  // r < j < s
  return sign > 0 ? conj({-R, -S, R, S}) : conj({S, R, -S, -R});
}

void validate_conjugation_schema(int strands) {
  for (int k = 3; k <= strands; ++k)
    for (int r = 2; r <= k; ++r)
      for (int s = r + 1; s <= k; ++s)
        for (int sign : {1, -1})
          for (int j = 2; j <= k; ++j) {
            AWord lhs(k, {{r, s, sign}, {1, j, 1}, {r, s, -sign}});
            std::vector<ALetter> rhs;
            for (Letter x : kernel_conjugate(r, s, sign, j))
              rhs.push_back({1, std::abs(x) + 1, x > 0 ? 1 : -1});
            if (!braids_equal(lhs, AWord(k, std::move(rhs))))
              throw std::logic_error("conjugation schema fails for A[" + std::to_string(r) + "," + std::to_string(s) +
                                     "]^" + std::to_string(sign) + " on A[1," + std::to_string(j) + "] in P_" +
                                     std::to_string(k));
          }
}

namespace {

void ensure_schema_validated() {
  static std::once_flag once;
  std::call_once(once, [] { validate_conjugation_schema(5); });
}

}  // namespace

CombedForm comb(const AWord& w, const CombOptions& opts) {
  ensure_schema_validated();
  CombedForm out;
  out.strands = w.strands();
  AWord cur = free_reduce(w);
  for (int k = w.strands(); k >= 2; --k) {
    // img[j] = Q A_{1,j} Q^-1 for the non-kernel prefix Q read so far
    auto img = identity_images(k - 1);
    std::size_t total = k - 1;
    Word front;
    std::vector<ALetter> rest;
    for (const auto& a : cur.letters()) {
      if (a.i == 1) {
        if (a.sign > 0)
          append_reduced(front, img[a.j - 1]);
        else
          append_inverse_reduced(front, img[a.j - 1]);
        if (front.size() > opts.max_word_length)
          throw std::length_error("comb: coordinate exceeds the configured length ceiling");
        continue;
      }
      rest.push_back({a.i - 1, a.j - 1, a.sign});
      std::vector<std::pair<int, Word>> fresh;
      for (int j = a.i; j <= a.j; ++j) {
        Word pattern = kernel_conjugate(a.i, a.j, a.sign, j);
        if (pattern.size() > 1) fresh.emplace_back(j, substitute(img, pattern));
      }
      for (auto& [j, word] : fresh) {
        total = total - img[j - 1].size() + word.size();
        img[j - 1] = std::move(word);
      }
      if (total > opts.max_word_length)
        throw std::length_error("comb: kernel images exceed the configured length ceiling");
    }
    out.coordinates.emplace_back(k - 1, front);
    cur = free_reduce(AWord(k - 1, std::move(rest)));
  }
  return out;
}

AWord uncomb(const CombedForm& c) {
  const int m = c.strands;
  std::vector<ALetter> out;
  for (std::size_t level = 0; level < c.coordinates.size(); ++level) {
    const int k = m - static_cast<int>(level);  // level-k strands are m-k+1..m
    const int base = m - k;
    for (Letter x : c.coordinates[level].letters())
      out.push_back({base + 1, base + std::abs(x) + 1, x > 0 ? 1 : -1});
  }
  return AWord(m, std::move(out));
}

namespace {

// Element of a group together with its inverse.
template <class E>
struct Paired {
  E fwd, inv;
};

template <class E, class Mul>
Paired<E> evaluate_pattern(const std::vector<Paired<E>>& img, const Word& pattern, const E& one, Mul mul) {
  Paired<E> out{one, one};
  for (Letter a : pattern) {
    const auto& g = img[std::abs(a)];
    const E& f = a > 0 ? g.fwd : g.inv;
    const E& b = a > 0 ? g.inv : g.fwd;
    out.fwd = mul(out.fwd, f);
    out.inv = mul(b, out.inv);
  }
  return out;
}

// Level-k combing coordinate of `w` (strand 1 around strands 2..k) evaluated
// in a group with generators gen(j) standing for A_{1,j+1}.
template <class E, class Gen, class Mul>
E level_coordinate(const AWord& w, const E& one, Gen gen, Mul mul) {
  const int k = w.strands();
  std::vector<Paired<E>> img(k);
  for (int j = 1; j < k; ++j) img[j] = gen(j);
  E front = one;
  for (const auto& a : w.letters()) {
    if (a.i == 1) {
      const auto& g = img[a.j - 1];
      front = mul(front, a.sign > 0 ? g.fwd : g.inv);
      continue;
    }
    std::vector<std::pair<int, Paired<E>>> fresh;
    for (int j = a.i; j <= a.j; ++j) {
      Word pattern = kernel_conjugate(a.i, a.j, a.sign, j);
      if (pattern.size() > 1) fresh.emplace_back(j, evaluate_pattern(img, pattern, one, mul));
    }
    for (auto& [j, g] : fresh) img[j - 1] = std::move(g);
  }
  return front;
}

using Coef = __int128;

Coef coef_add(Coef a, Coef b) {
  Coef r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("kr_sign: Magnus coefficient overflow");
  return r;
}

Coef coef_mul(Coef a, Coef b) {
  Coef r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("kr_sign: Magnus coefficient overflow");
  return r;
}

// Dense truncated series in noncommuting X_1..X_r; a monomial of length d
// with letters v_1..v_d sits at offset[d] + sum (v_t - 1) r^(d-t), which is
// degree-then-lexicographic order.
struct SeriesShape {
  int rank;
  int degree;
  std::vector<std::size_t> offset;  // offset[d], d = 0..degree+1
  std::vector<std::size_t> power;   // r^d

  SeriesShape(int r, int deg) : rank(r), degree(deg) {
    offset.assign(deg + 2, 0);
    power.assign(deg + 1, 1);
    for (int d = 1; d <= deg; ++d) power[d] = power[d - 1] * r;
    for (int d = 1; d <= deg + 1; ++d) offset[d] = offset[d - 1] + power[d - 1];
  }
  std::size_t size() const { return offset[degree + 1]; }
};

using Series = std::vector<Coef>;

Series series_multiply(const SeriesShape& sh, const Series& x, const Series& y) {
  Series out(sh.size(), 0);
  for (int da = 0; da <= sh.degree; ++da)
    for (std::size_t ca = 0; ca < sh.power[da]; ++ca) {
      const Coef xa = x[sh.offset[da] + ca];
      if (xa == 0) continue;
      for (int db = 0; da + db <= sh.degree; ++db) {
        const std::size_t base = sh.offset[da + db] + ca * sh.power[db];
        const std::size_t yo = sh.offset[db];
        for (std::size_t cb = 0; cb < sh.power[db]; ++cb) {
          const Coef yb = y[yo + cb];
          if (yb == 0) continue;
          out[base + cb] = coef_add(out[base + cb], coef_mul(xa, yb));
        }
      }
    }
  return out;
}

Paired<Series> series_generator(const SeriesShape& sh, int j) {
  Series f(sh.size(), 0), g(sh.size(), 0);
  f[0] = 1;
  if (sh.degree >= 1) f[sh.offset[1] + (j - 1)] = 1;
  // (1 + X)^-1 = 1 - X + X^2 - ...
  std::size_t code = 0;
  for (int d = 0; d <= sh.degree; ++d) {
    g[sh.offset[d] + code] = d % 2 ? -1 : 1;
    code = code * sh.rank + (j - 1);
  }
  return {std::move(f), std::move(g)};
}

Sign coordinate_sign(const AWord& level, const CombOptions& opts) {
  const int r = level.strands() - 1;
  for (int degree = 1;; ++degree) {
    SeriesShape sh(r, degree);
    if (sh.size() > opts.max_series_terms)
      throw std::length_error("kr_sign: Magnus series exceeds the configured term ceiling");
    Series one(sh.size(), 0);
    one[0] = 1;
    Series front = level_coordinate<Series>(
        level, one, [&](int j) { return series_generator(sh, j); },
        [&](const Series& x, const Series& y) { return series_multiply(sh, x, y); });
    for (std::size_t idx = 1; idx < front.size(); ++idx)
      if (front[idx] != 0) return front[idx] > 0 ? Sign::positive : Sign::negative;
  }
}

}  // namespace

Sign kr_sign(const AWord& w, const CombOptions& opts) {
  ensure_schema_validated();
  // tails[k] is w restricted to its last k strands; its level-k coordinate is
  // w_k, and tails[k] is trivial iff w_2..w_k all are.
  const int m = w.strands();
  std::vector<AWord> tails(m + 1, AWord(1));
  tails[m] = free_reduce(w);
  for (int k = m - 1; k >= 2; --k) tails[k] = delete_strand(tails[k + 1], 1);
  for (int k = 2; k <= m; ++k)
    if (!is_trivial(tails[k])) return coordinate_sign(tails[k], opts);
  return Sign::zero;
}

}  // namespace bft
