#include "bft/freegroup.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bft {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("NCPolynomial: coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("NCPolynomial: coefficient overflow");
  return r;
}

std::string to_key(const Monomial& m) {
  std::string key;
  key.reserve(m.size());
  for (int v : m) key.push_back(static_cast<char>(v));
  return key;
}

Monomial from_key(const std::string& key) {
  Monomial m;
  m.reserve(key.size());
  for (char c : key) m.push_back(static_cast<unsigned char>(c));
  return m;
}

}  // namespace

void append_reduced(std::vector<Letter>& out, std::span<const Letter> w) {
  for (Letter a : w) {
    if (!out.empty() && out.back() == -a)
      out.pop_back();
    else
      out.push_back(a);
  }
}

void append_inverse_reduced(std::vector<Letter>& out, std::span<const Letter> w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (!out.empty() && out.back() == *it)
      out.pop_back();
    else
      out.push_back(-*it);
  }
}

FreeWord::FreeWord(int rank, std::span<const Letter> letters) : rank_(rank) {
  if (rank < 0) throw std::invalid_argument("FreeWord: negative rank");
  for (Letter a : letters)
    if (a == 0 || std::abs(a) > rank)
      throw std::out_of_range("FreeWord: generator index " + std::to_string(a) + " outside rank " +
                              std::to_string(rank));
  append_reduced(letters_, letters);
}

FreeWord FreeWord::inverse() const {
  FreeWord r(rank_);
  append_inverse_reduced(r.letters_, letters_);
  return r;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
  if (rank_ != other.rank_) throw std::invalid_argument("FreeWord: rank mismatch");
  FreeWord r = *this;
  append_reduced(r.letters_, other.letters_);
  return r;
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << ' ';
    os << 'x' << std::abs(letters_[k]);
    if (letters_[k] < 0) os << "^-1";
  }
  return os.str();
}

FreeWord reduce_word(int rank, std::span<const Letter> letters) { return FreeWord(rank, letters); }

FreeWord parse_free_word(int rank, const std::string& text) {
  std::istringstream is(text);
  std::vector<Letter> letters;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("bad free-group letter '" + tok + "'");
    int sign = 1;
    std::string digits = tok.substr(1);
    if (auto caret = digits.find('^'); caret != std::string::npos) {
      std::string exp = digits.substr(caret + 1);
      digits = digits.substr(0, caret);
      if (exp == "-1")
        sign = -1;
      else if (exp != "1")
        throw std::invalid_argument("bad exponent in '" + tok + "'");
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad free-group letter '" + tok + "'");
    letters.push_back(sign * std::stoi(digits));
  }
  return FreeWord(rank, letters);
}

int monomial_compare(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

NCPolynomial::NCPolynomial(int rank, int degree) : rank_(rank), degree_(degree) {
  if (rank < 0 || rank > 255) throw std::invalid_argument("NCPolynomial: rank must be in 0..255");
  if (degree < 0) throw std::invalid_argument("NCPolynomial: negative truncation degree");
}

NCPolynomial NCPolynomial::constant(int rank, int degree, std::int64_t c) {
  NCPolynomial p(rank, degree);
  p.add_term({}, c);
  return p;
}

NCPolynomial NCPolynomial::variable(int rank, int degree, int index) {
  NCPolynomial p(rank, degree);
  p.add_term({index}, 1);
  return p;
}

std::int64_t NCPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(to_key(m));
  return it == terms_.end() ? 0 : it->second;
}

void NCPolynomial::add_term(const Monomial& m, std::int64_t c) {
  for (int v : m)
    if (v < 1 || v > rank_) throw std::out_of_range("NCPolynomial: variable index out of range");
  if (static_cast<int>(m.size()) > degree_ || c == 0) return;
  auto key = to_key(m);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

std::vector<std::pair<Monomial, std::int64_t>> NCPolynomial::terms() const {
  std::vector<std::pair<Monomial, std::int64_t>> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.emplace_back(from_key(k), c);
  return out;
}

void NCPolynomial::check_compatible(const NCPolynomial& q) const {
  if (rank_ != q.rank_ || degree_ != q.degree_)
    throw std::invalid_argument("NCPolynomial: rank or truncation degree mismatch");
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& q) const {
  check_compatible(q);
  NCPolynomial r = *this;
  for (const auto& [k, c] : q.terms_) {
    auto it = r.terms_.find(k);
    if (it == r.terms_.end()) {
      r.terms_.emplace(k, c);
    } else {
      it->second = checked_add(it->second, c);
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

NCPolynomial NCPolynomial::operator-() const {
  NCPolynomial r = *this;
  for (auto& [k, c] : r.terms_) c = checked_mul(c, -1);
  return r;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial& q) const { return *this + (-q); }

NCPolynomial NCPolynomial::operator*(const NCPolynomial& q) const {
  check_compatible(q);
  std::unordered_map<std::string, std::int64_t> acc;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : q.terms_) {
      if (static_cast<int>(ka.size() + kb.size()) > degree_) continue;
      auto& slot = acc[ka + kb];
      slot = checked_add(slot, checked_mul(ca, cb));
    }
  NCPolynomial r(rank_, degree_);
  for (auto& [k, c] : acc)
    if (c != 0) r.terms_.emplace(k, c);
  return r;
}

bool NCPolynomial::operator==(const NCPolynomial& q) const {
  return rank_ == q.rank_ && degree_ == q.degree_ && terms_ == q.terms_;
}

std::string NCPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (k.empty()) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    for (char v : k) os << 'X' << static_cast<int>(static_cast<unsigned char>(v));
  }
  return os.str();
}

NCPolynomial nc_add(const NCPolynomial& p, const NCPolynomial& q) { return p + q; }
NCPolynomial nc_negate(const NCPolynomial& p) { return -p; }
NCPolynomial nc_multiply(const NCPolynomial& p, const NCPolynomial& q) { return p * q; }

NCPolynomial magnus_truncated(const FreeWord& w, int degree) {
  NCPolynomial result(w.rank(), degree);
  std::unordered_map<std::string, std::int64_t> cur{{std::string(), 1}};
  std::unordered_map<std::string, std::int64_t> next;
  for (Letter a : w.letters()) {
    const char v = static_cast<char>(a > 0 ? a : -a);
    next = cur;
    for (const auto& [k, c] : cur) {
      // x -> 1 + X ; x^-1 -> 1 - X + X^2 - ...
      std::string mono = k;
      std::int64_t coef = c;
      for (int d = static_cast<int>(k.size()) + 1; d <= degree; ++d) {
        mono.push_back(v);
        if (a < 0) coef = checked_mul(coef, -1);
        auto& slot = next[mono];
        slot = checked_add(slot, coef);
        if (a > 0) break;
      }
    }
    cur.clear();
    for (auto& [k, c] : next)
      if (c != 0) cur.emplace(k, c);
  }
  for (auto& [k, c] : cur) result.terms_.emplace(k, c);
  return result;
}

Sign magnus_sign(const FreeWord& w) {
  if (w.empty()) return Sign::zero;
  const int cap = 2 * static_cast<int>(w.size());
  for (int degree = 1;; degree = std::min(2 * degree, cap)) {
    NCPolynomial p = magnus_truncated(w, degree);
    for (const auto& [k, c] : p.terms_) {
      if (k.empty()) continue;
      return c > 0 ? Sign::positive : Sign::negative;
    }
    if (degree >= cap) break;
  }
  throw std::logic_error("magnus_sign: no nonconstant term up to degree " + std::to_string(cap) + " for " +
                         w.str());
}

}  // namespace bft
