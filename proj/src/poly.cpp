// SPDX-License-Identifier: MIT
#include "poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

namespace invforge {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case Errc::TableMismatch: return "TableMismatch";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::UnboundVariableOccurs: return "UnboundVariableOccurs";
    case Errc::NotASquare: return "NotASquare";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::NotSquareMatrix: return "NotSquareMatrix";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::NotAlternating: return "NotAlternating";
    case Errc::OddSize: return "OddSize";
    case Errc::NonLinearVariablePresent: return "NonLinearVariablePresent";
    case Errc::NonHomogeneous: return "NonHomogeneous";
    case Errc::NotQuadratic: return "NotQuadratic";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::WrongParity: return "WrongParity";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoLiftFound: return "NoLiftFound";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::ExpressionNotInSubring: return "ExpressionNotInSubring";
    case Errc::HalvingFailed: return "HalvingFailed";
    case Errc::FactorizationMismatch: return "FactorizationMismatch";
    case Errc::NotInSubring: return "NotInSubring";
    case Errc::AmbiguousExpression: return "AmbiguousExpression";
    case Errc::TriangularInversionFailed: return "TriangularInversionFailed";
    case Errc::IdentityFailed: return "IdentityFailed";
    case Errc::ResidueNonzero: return "ResidueNonzero";
    case Errc::DeterminantMismatch: return "DeterminantMismatch";
    case Errc::SquareRootFailed: return "SquareRootFailed";
    case Errc::UnknownIdentity: return "UnknownIdentity";
    case Errc::ZeroPoleOrder: return "ZeroPoleOrder";
    case Errc::GoldenMismatch: return "GoldenMismatch";
    case Errc::Unsupported: return "Unsupported";
    case Errc::InternalError: return "InternalError";
  }
  return "InternalError";
}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

const char* ring_name(Ring r) { return r == Ring::F2 ? "F2" : "Z4"; }

// ---------------------------------------------------------------------------
// VariableTable
// ---------------------------------------------------------------------------

VariableTable::VariableTable(std::vector<std::string> names,
                             std::vector<uint64_t> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size())
    fail(Errc::InternalError, "table names/weights length mismatch");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (weights_[i] == 0)
      fail(Errc::InternalError, "variable weight must be positive");
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        fail(Errc::InternalError, "duplicate variable name " + names_[i]);
  }
}

std::optional<size_t> VariableTable::find(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

size_t VariableTable::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) fail(Errc::UnknownVariable, std::string(name));
  return *i;
}

TablePtr make_table(std::vector<std::string> names,
                    std::vector<uint64_t> weights) {
  return std::make_shared<const VariableTable>(std::move(names),
                                               std::move(weights));
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::make(const VariableTable& table,
                        std::vector<uint32_t> exps) {
  if (exps.size() != table.size())
    fail(Errc::InternalError, "exponent vector length mismatch");
  Monomial m;
  m.exps = std::move(exps);
  m.wdeg = 0;
  for (size_t i = 0; i < m.exps.size(); ++i)
    m.wdeg += static_cast<uint64_t>(m.exps[i]) * table.weight(i);
  return m;
}

bool monomial_greater(const Monomial& a, const Monomial& b) {
  if (a.wdeg != b.wdeg) return a.wdeg > b.wdeg;
  // Reverse lexicographic tie break: compare at the rightmost position where
  // the exponents differ; the smaller exponent there belongs to the larger
  // monomial.
  size_t n = a.exps.size();
  for (size_t i = n; i-- > 0;) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
  }
  return false;  // equal
}

namespace {

struct ExpsHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

bool term_greater(const Term& a, const Term& b) {
  return monomial_greater(a.mono, b.mono);
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial: construction
// ---------------------------------------------------------------------------

Polynomial Polynomial::zero(TablePtr table, Ring ring) {
  Polynomial p;
  p.table_ = std::move(table);
  p.ring_ = ring;
  return p;
}

Polynomial Polynomial::constant(TablePtr table, Ring ring, unsigned value) {
  value %= ring_modulus(ring);
  Polynomial p = zero(std::move(table), ring);
  if (value != 0) {
    Monomial m = Monomial::make(*p.table_,
                                std::vector<uint32_t>(p.table_->size(), 0));
    p.terms_.push_back({std::move(m), static_cast<uint8_t>(value)});
  }
  return p;
}

Polynomial Polynomial::variable(TablePtr table, Ring ring, size_t index) {
  if (index >= table->size())
    fail(Errc::InternalError, "variable index out of range");
  std::vector<uint32_t> e(table->size(), 0);
  e[index] = 1;
  return monomial(std::move(table), ring, std::move(e));
}

Polynomial Polynomial::monomial(TablePtr table, Ring ring,
                                std::vector<uint32_t> exps, unsigned coeff) {
  coeff %= ring_modulus(ring);
  Polynomial p = zero(std::move(table), ring);
  if (coeff != 0) {
    Monomial m = Monomial::make(*p.table_, std::move(exps));
    p.terms_.push_back({std::move(m), static_cast<uint8_t>(coeff)});
  }
  return p;
}

Polynomial Polynomial::from_unsorted(TablePtr table, Ring ring,
                                     std::vector<Term> terms) {
  unsigned mod = ring_modulus(ring);
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = static_cast<uint8_t>((out.back().coeff + t.coeff) % mod);
    } else {
      t.coeff = static_cast<uint8_t>(t.coeff % mod);
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  Polynomial p = zero(std::move(table), ring);
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::from_terms(TablePtr table, Ring ring,
                                  std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.mono.exps.size() != table->size())
      fail(Errc::TableMismatch, "term exponent vector does not fit the table");
  return from_unsorted(std::move(table), ring, std::move(terms));
}

// ---------------------------------------------------------------------------
// Polynomial: queries
// ---------------------------------------------------------------------------

void Polynomial::check_compatible(const Polynomial& o) const {
  if (table_ != o.table_)
    fail(Errc::TableMismatch, "operands use different variable tables");
  if (ring_ != o.ring_)
    fail(Errc::RingMismatch, std::string("operands over ") + ring_name(ring_) +
                                 " and " + ring_name(o.ring_));
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].mono.wdeg == 0;
}

uint64_t Polynomial::degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.wdeg;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.wdeg != terms_.front().mono.wdeg) return false;
  return true;
}

uint32_t Polynomial::degree_in(size_t v) const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exps[v]);
  return d;
}

bool Polynomial::involves(size_t v) const {
  for (const auto& t : terms_)
    if (t.mono.exps[v] != 0) return true;
  return false;
}

bool Polynomial::supported_on(const std::vector<bool>& allowed) const {
  for (const auto& t : terms_)
    for (size_t i = 0; i < t.mono.exps.size(); ++i)
      if (t.mono.exps[i] != 0 && !allowed[i]) return false;
  return true;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (table_ != o.table_ || ring_ != o.ring_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff ||
        !(terms_[i].mono == o.terms_[i].mono))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Polynomial: arithmetic
// ---------------------------------------------------------------------------

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compatible(o);
  unsigned mod = ring_modulus(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].mono == o.terms_[j].mono) {
      auto c = static_cast<uint8_t>((terms_[i].coeff + o.terms_[j].coeff) % mod);
      if (c != 0) out.push_back({terms_[i].mono, c});
      ++i;
      ++j;
    } else if (monomial_greater(terms_[i].mono, o.terms_[j].mono)) {
      out.push_back(terms_[i++]);
    } else {
      out.push_back(o.terms_[j++]);
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  Polynomial p = zero(table_, ring_);
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, unsigned coeff) const {
  unsigned mod = ring_modulus(ring_);
  coeff %= mod;
  Polynomial p = zero(table_, ring_);
  if (coeff == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto c = static_cast<uint8_t>((t.coeff * coeff) % mod);
    if (c == 0) continue;
    Term nt;
    nt.coeff = c;
    nt.mono.exps.resize(t.mono.exps.size());
    for (size_t i = 0; i < t.mono.exps.size(); ++i)
      nt.mono.exps[i] = t.mono.exps[i] + m.exps[i];
    nt.mono.wdeg = t.mono.wdeg + m.wdeg;
    p.terms_.push_back(std::move(nt));
  }
  // Multiplying by a fixed monomial preserves the term order.
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return zero(table_, ring_);
  const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& big = terms_.size() <= o.terms_.size() ? o : *this;
  if (small.terms_.size() == 1)
    return big.times_term(small.terms_[0].mono, small.terms_[0].coeff);

  unsigned mod = ring_modulus(ring_);
  std::unordered_map<std::vector<uint32_t>, unsigned, ExpsHash> acc;
  acc.reserve(big.terms_.size() * 2);
  std::vector<uint32_t> key(table_->size());
  for (const auto& a : small.terms_) {
    for (const auto& b : big.terms_) {
      for (size_t i = 0; i < key.size(); ++i)
        key[i] = a.mono.exps[i] + b.mono.exps[i];
      unsigned c = (a.coeff * b.coeff) % mod;
      auto [it, fresh] = acc.try_emplace(key, c);
      if (!fresh) it->second = (it->second + c) % mod;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (c % mod == 0) continue;
    Term t;
    t.coeff = static_cast<uint8_t>(c % mod);
    t.mono = Monomial::make(*table_, e);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), term_greater);
  Polynomial p = zero(table_, ring_);
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::negated() const {
  Polynomial p = *this;
  if (ring_ == Ring::Z4)
    for (auto& t : p.terms_) t.coeff = static_cast<uint8_t>(4 - t.coeff);
  return p;
}

Polynomial Polynomial::pow(uint64_t e) const {
  if (e == 0) return constant(table_, ring_, 1);
  // Over F2 squaring is the Frobenius: exponents double termwise and the
  // order is preserved, so binary powering is linear per squaring step.
  auto square = [](const Polynomial& q) {
    if (q.ring_ == Ring::F2) {
      Polynomial s = q;
      for (auto& t : s.terms_) {
        for (auto& x : t.mono.exps) x *= 2;
        t.mono.wdeg *= 2;
      }
      return s;
    }
    return q * q;
  };
  Polynomial base = *this;
  Polynomial result = constant(table_, ring_, 1);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = square(base);
  }
  return result;
}

Polynomial Polynomial::component(uint64_t d) const {
  Polynomial p = zero(table_, ring_);
  for (const auto& t : terms_)
    if (t.mono.wdeg == d) p.terms_.push_back(t);
  return p;
}

Polynomial Polynomial::coeff_of(size_t v, uint32_t k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exps[v] != k) continue;
    Term nt = t;
    nt.mono.exps[v] = 0;
    nt.mono.wdeg -= static_cast<uint64_t>(k) * table_->weight(v);
    out.push_back(std::move(nt));
  }
  return from_unsorted(table_, ring_, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<size_t>& vars,
                                  const std::vector<Polynomial>& images) const {
  if (ring_ != Ring::F2)
    fail(Errc::Unsupported, "substitution is implemented over F2 only");
  if (vars.size() != images.size())
    fail(Errc::InternalError, "substitute: binding length mismatch");
  TablePtr target = images.empty() ? table_ : images[0].table();
  for (const auto& img : images) {
    if (img.table() != target)
      fail(Errc::TableMismatch, "substitution images use different tables");
    if (img.ring() != ring_)
      fail(Errc::RingMismatch, "substitution image over a different ring");
  }
  std::vector<int> binding(table_->size(), -1);
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] >= table_->size())
      fail(Errc::UnknownVariable, "substituted variable index out of range");
    if (binding[vars[i]] != -1)
      fail(Errc::InternalError,
           "variable bound twice: " + table_->name(vars[i]));
    binding[vars[i]] = static_cast<int>(i);
  }
  bool same_table = (target == table_);

  // Cache of images[i]^(2^k), filled by repeated squaring on demand.
  std::vector<std::vector<Polynomial>> frob(images.size());
  auto image_power = [&](size_t i, uint32_t e) {
    Polynomial r = constant(target, ring_, 1);
    auto& cache = frob[i];
    if (cache.empty()) cache.push_back(images[i]);
    for (unsigned k = 0; e != 0; ++k, e >>= 1) {
      while (cache.size() <= k) cache.push_back(cache.back() * cache.back());
      if (e & 1) r = r * cache[k];
    }
    return r;
  };

  Polynomial result = zero(target, ring_);
  for (const auto& t : terms_) {
    Polynomial acc = constant(target, ring_, t.coeff);
    std::vector<uint32_t> kept(target->size(), 0);
    bool any_kept = false;
    for (size_t v = 0; v < t.mono.exps.size(); ++v) {
      uint32_t e = t.mono.exps[v];
      if (e == 0) continue;
      if (binding[v] >= 0) {
        acc = acc * image_power(static_cast<size_t>(binding[v]), e);
      } else if (same_table) {
        kept[v] = e;
        any_kept = true;
      } else {
        fail(Errc::UnboundVariableOccurs,
             "variable " + table_->name(v) + " occurs but has no image");
      }
    }
    if (any_kept) acc = acc.times_term(Monomial::make(*target, kept), 1);
    result += acc;
  }
  return result;
}

Polynomial Polynomial::derivative(size_t v) const {
  if (v >= table_->size())
    fail(Errc::UnknownVariable, "derivative variable index out of range");
  unsigned mod = ring_modulus(ring_);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    uint32_t e = t.mono.exps[v];
    if (e == 0) continue;
    unsigned c = (t.coeff * (e % mod)) % mod;
    if (c == 0) continue;
    Term nt = t;
    nt.coeff = static_cast<uint8_t>(c);
    nt.mono.exps[v] = e - 1;
    nt.mono.wdeg -= table_->weight(v);
    out.push_back(std::move(nt));
  }
  return from_unsorted(table_, ring_, std::move(out));
}

Polynomial Polynomial::sqrt_exact() const {
  if (ring_ != Ring::F2)
    fail(Errc::Unsupported, "square roots are implemented over F2 only");
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    for (auto& e : t.mono.exps) {
      if (e % 2 != 0)
        fail(Errc::NotASquare, "odd exponent in term " + str());
      e /= 2;
    }
    t.mono.wdeg /= 2;
  }
  // Halving exponents preserves the descending term order.
  return p;
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  check_compatible(divisor);
  if (ring_ != Ring::F2)
    fail(Errc::Unsupported, "exact division is implemented over F2 only");
  if (divisor.is_zero()) fail(Errc::NotDivisible, "division by zero");
  Polynomial rem = *this;
  std::vector<Term> qterms;
  const Term& dlead = divisor.terms_.front();
  while (!rem.is_zero()) {
    const Term& rlead = rem.terms_.front();
    Term q;
    q.coeff = 1;
    q.mono.exps.resize(rlead.mono.exps.size());
    for (size_t i = 0; i < rlead.mono.exps.size(); ++i) {
      if (rlead.mono.exps[i] < dlead.mono.exps[i])
        fail(Errc::NotDivisible,
             "leading term not divisible by divisor leading term");
      q.mono.exps[i] = rlead.mono.exps[i] - dlead.mono.exps[i];
    }
    q.mono.wdeg = rlead.mono.wdeg - dlead.mono.wdeg;
    rem += divisor.times_term(q.mono, 1);
    qterms.push_back(std::move(q));
  }
  // Quotient leading terms strictly decrease, so qterms is already sorted.
  Polynomial quot = zero(table_, ring_);
  quot.terms_ = std::move(qterms);
  return quot;
}

// ---------------------------------------------------------------------------
// Polynomial: text form
// ---------------------------------------------------------------------------

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& t : terms_) {
    if (!first_term) out += '+';
    first_term = false;
    if (t.mono.wdeg == 0) {
      out += static_cast<char>('0' + t.coeff);
      continue;
    }
    if (t.coeff != 1) out += static_cast<char>('0' + t.coeff);
    bool first_factor = true;
    for (size_t i = 0; i < t.mono.exps.size(); ++i) {
      uint32_t e = t.mono.exps[i];
      if (e == 0) continue;
      if (!first_factor) out += '*';
      first_factor = false;
      out += table_->name(i);
      if (e != 1) {
        out += '^';
        out += std::to_string(e);
      }
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(TablePtr table, Ring ring, std::string_view text)
      : table_(std::move(table)), ring_(ring), text_(text) {}

  std::vector<Term> run() {
    skip_ws();
    if (pos_ >= text_.size()) fail_at(pos_, "empty polynomial");
    if (text_[pos_] == '0') {
      ++pos_;
      skip_ws();
      if (pos_ != text_.size())
        fail_at(pos_, "unexpected text after zero literal");
      return {};
    }
    std::vector<Term> terms;
    terms.push_back(parse_term());
    skip_ws();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '+') fail_at(pos_, "expected '+'");
      ++pos_;
      skip_ws();
      terms.push_back(parse_term());
      skip_ws();
    }
    return terms;
  }

 private:
  [[noreturn]] void fail_at(size_t pos, const std::string& what) {
    fail(Errc::SyntaxError, what + " at byte " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  Term parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) fail_at(pos_, "expected term");
    unsigned coeff = 1;
    bool have_coeff = false;
    char c = text_[pos_];
    if (c >= '0' && c <= '9') {
      unsigned v = static_cast<unsigned>(c - '0');
      unsigned maxc = ring_ == Ring::F2 ? 1u : 3u;
      if (v < 1 || v > maxc)
        fail(Errc::CoefficientOutOfRange,
             std::string("coefficient ") + c + " over " + ring_name(ring_) +
                 " at byte " + std::to_string(pos_));
      coeff = v;
      have_coeff = true;
      ++pos_;
      skip_ws();
    }
    std::vector<uint32_t> exps(table_->size(), 0);
    bool have_factor = false;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      parse_factor(exps);
      have_factor = true;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() ||
            !std::isalpha(static_cast<unsigned char>(text_[pos_])))
          fail_at(pos_, "expected variable name after '*'");
      } else {
        break;
      }
    }
    if (!have_factor && !have_coeff) fail_at(pos_, "expected term");
    Term t;
    t.coeff = static_cast<uint8_t>(coeff);
    t.mono = Monomial::make(*table_, std::move(exps));
    return t;
  }

  void parse_factor(std::vector<uint32_t>& exps) {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    auto idx = table_->find(name);
    if (!idx)
      fail(Errc::UnknownVariable, std::string(name) + " at byte " +
                                      std::to_string(start));
    uint64_t e = 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      size_t estart = pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail_at(pos_, "expected exponent");
      e = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<uint64_t>(text_[pos_] - '0');
        if (e > 0xffffffffull) fail_at(estart, "exponent too large");
        ++pos_;
      }
    }
    uint64_t total = static_cast<uint64_t>(exps[*idx]) + e;
    if (total > 0xffffffffull) fail_at(start, "exponent too large");
    exps[*idx] = static_cast<uint32_t>(total);
  }

  TablePtr table_;
  Ring ring_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(TablePtr table, Ring ring,
                             std::string_view text) {
  std::vector<Term> terms = Parser(table, ring, text).run();
  return from_unsorted(std::move(table), ring, std::move(terms));
}

// ---------------------------------------------------------------------------
// PolyMatrix
// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(TablePtr table, Ring ring, size_t rows, size_t cols)
    : table_(std::move(table)), ring_(ring), rows_(rows), cols_(cols) {
  e_.assign(rows_ * cols_, Polynomial::zero(table_, ring_));
}

const Polynomial& PolyMatrix::at(size_t r, size_t c) const {
  if (r >= rows_ || c >= cols_)
    fail(Errc::InternalError, "matrix index out of range");
  return e_[r * cols_ + c];
}

void PolyMatrix::set(size_t r, size_t c, Polynomial p) {
  if (r >= rows_ || c >= cols_)
    fail(Errc::InternalError, "matrix index out of range");
  if (p.table() != table_)
    fail(Errc::TableMismatch, "matrix entry uses a different table");
  if (p.ring() != ring_)
    fail(Errc::RingMismatch, "matrix entry over a different ring");
  e_[r * cols_ + c] = std::move(p);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_)
    fail(Errc::DimensionMismatch, "matrix product shapes do not match");
  if (table_ != o.table_ || ring_ != o.ring_)
    fail(Errc::TableMismatch, "matrix product over different tables or rings");
  PolyMatrix out(table_, ring_, rows_, o.cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < o.cols_; ++c) {
      Polynomial s = Polynomial::zero(table_, ring_);
      for (size_t k = 0; k < cols_; ++k) s += at(r, k) * o.at(k, c);
      out.set(r, c, std::move(s));
    }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(Errc::DimensionMismatch, "matrix sum shapes do not match");
  PolyMatrix out(table_, ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
  return out;
}

PolyMatrix PolyMatrix::map_square() const {
  PolyMatrix out(table_, ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].pow(2);
  return out;
}

PolyMatrix PolyMatrix::map_sqrt_exact() const {
  PolyMatrix out(table_, ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].sqrt_exact();
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out(table_, ring_, cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  return out;
}

PolyMatrix PolyMatrix::erased(std::optional<size_t> row,
                              std::optional<size_t> col) const {
  size_t nr = rows_ - (row ? 1 : 0);
  size_t nc = cols_ - (col ? 1 : 0);
  PolyMatrix out(table_, ring_, nr, nc);
  size_t ro = 0;
  for (size_t r = 0; r < rows_; ++r) {
    if (row && r == *row) continue;
    size_t co = 0;
    for (size_t c = 0; c < cols_; ++c) {
      if (col && c == *col) continue;
      out.set(ro, co, at(r, c));
      ++co;
    }
    ++ro;
  }
  return out;
}

Polynomial PolyMatrix::determinant() const {
  if (rows_ != cols_)
    fail(Errc::NotSquareMatrix, "determinant of a non-square matrix");
  if (rows_ > 10)
    fail(Errc::SizeLimitExceeded, "determinant size capped at 10");
  size_t n = rows_;
  if (n == 0) return Polynomial::constant(table_, ring_, 1);

  // det over the set of still-available columns; the row to expand along is
  // determined by how many columns were consumed already.
  std::unordered_map<uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, uint32_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::constant(table_, ring_, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    size_t row = n - static_cast<size_t>(std::popcount(mask));
    Polynomial s = Polynomial::zero(table_, ring_);
    unsigned parity = 0;
    for (size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const Polynomial& a = at(row, c);
      if (!a.is_zero()) {
        Polynomial sub = self(self, mask & ~(1u << c));
        Polynomial contrib = a * sub;
        if (ring_ == Ring::Z4 && (parity & 1)) contrib = contrib.negated();
        s += contrib;
      }
      ++parity;
    }
    memo.emplace(mask, s);
    return s;
  };
  return rec(rec, (n == 32 ? 0xffffffffu : (1u << n) - 1u));
}

Polynomial PolyMatrix::pfaffian() const {
  if (rows_ != cols_)
    fail(Errc::NotSquareMatrix, "Pfaffian of a non-square matrix");
  if (rows_ % 2 != 0) fail(Errc::OddSize, "Pfaffian needs even size");
  if (rows_ > 8) fail(Errc::SizeLimitExceeded, "Pfaffian size capped at 8");
  if (ring_ != Ring::F2)
    fail(Errc::Unsupported, "Pfaffian is implemented over F2 only");
  size_t n = rows_;
  for (size_t i = 0; i < n; ++i) {
    if (!at(i, i).is_zero())
      fail(Errc::NotAlternating, "nonzero diagonal entry");
    for (size_t j = i + 1; j < n; ++j)
      if (!(at(i, j) == at(j, i)))
        fail(Errc::NotAlternating, "matrix is not symmetric");
  }
  if (n == 0) return Polynomial::constant(table_, ring_, 1);

  // Expand along the lowest remaining index; over F2 all signs are 1.
  std::unordered_map<uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, uint32_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::constant(table_, ring_, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    auto i = static_cast<size_t>(std::countr_zero(mask));
    Polynomial s = Polynomial::zero(table_, ring_);
    for (size_t j = i + 1; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const Polynomial& a = at(i, j);
      if (a.is_zero()) continue;
      s += a * self(self, mask & ~((1u << i) | (1u << j)));
    }
    memo.emplace(mask, s);
    return s;
  };
  return rec(rec, (1u << n) - 1u);
}

PolyMatrix PolyMatrix::inverse_upper_unitriangular() const {
  if (rows_ != cols_)
    fail(Errc::NotSquareMatrix, "inverse of a non-square matrix");
  size_t n = rows_;
  for (size_t i = 0; i < n; ++i) {
    if (!at(i, i).is_one())
      fail(Errc::TriangularInversionFailed, "diagonal entry is not 1");
    for (size_t j = 0; j < i; ++j)
      if (!at(i, j).is_zero())
        fail(Errc::TriangularInversionFailed, "entry below the diagonal");
  }
  PolyMatrix inv = identity(table_, ring_, n);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = j; i-- > 0;) {
      Polynomial s = Polynomial::zero(table_, ring_);
      for (size_t k = i + 1; k <= j; ++k) s += at(i, k) * inv.at(k, j);
      inv.set(i, j, s.negated());
    }
  }
  return inv;
}

PolyMatrix PolyMatrix::identity(TablePtr table, Ring ring, size_t n) {
  PolyMatrix m(table, ring, n, n);
  for (size_t i = 0; i < n; ++i)
    m.set(i, i, Polynomial::constant(table, ring, 1));
  return m;
}

}  // namespace invforge
