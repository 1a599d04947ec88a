// SPDX-License-Identifier: MIT
// Sparse multivariate polynomial arithmetic over F2 and Z/4 with weighted
// gradings, canonical text form, exact division / square roots, and small
// matrix determinants and Pfaffians.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invforge {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
  SyntaxError,
  UnknownVariable,
  CoefficientOutOfRange,
  TableMismatch,
  RingMismatch,
  UnboundVariableOccurs,
  NotASquare,
  NotDivisible,
  NotSquareMatrix,
  SizeLimitExceeded,
  NotAlternating,
  OddSize,
  NonLinearVariablePresent,
  NonHomogeneous,
  NotQuadratic,
  DegenerateInput,
  WrongParity,
  DimensionTooLarge,
  DimensionMismatch,
  NoLiftFound,
  DegreeTooLarge,
  ExpressionNotInSubring,
  HalvingFailed,
  FactorizationMismatch,
  NotInSubring,
  AmbiguousExpression,
  TriangularInversionFailed,
  IdentityFailed,
  ResidueNonzero,
  DeterminantMismatch,
  SquareRootFailed,
  UnknownIdentity,
  ZeroPoleOrder,
  GoldenMismatch,
  Unsupported,
  InternalError,
};

// Stable identifier used in messages and across the C boundary.
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

enum class Ring : uint8_t { F2, Z4 };

inline unsigned ring_modulus(Ring r) { return r == Ring::F2 ? 2u : 4u; }
const char* ring_name(Ring r);

// ---------------------------------------------------------------------------
// Variable tables
// ---------------------------------------------------------------------------

// An ordered list of named variables with positive integer weights.  The
// position in the table fixes both the print order inside a term and the
// tie-breaking order of the monomial comparison.  Tables are immutable and
// shared by pointer; two polynomials interoperate only when they hold the
// same table object.
class VariableTable {
 public:
  VariableTable(std::vector<std::string> names, std::vector<uint64_t> weights);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  uint64_t weight(size_t i) const { return weights_[i]; }
  // Index of a name, or nullopt when absent.
  std::optional<size_t> find(std::string_view name) const;
  // Index of a name; throws UnknownVariable when absent.
  size_t index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<uint64_t> weights_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

TablePtr make_table(std::vector<std::string> names,
                    std::vector<uint64_t> weights);

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

// Exponent vector, same length as the owning table, with the weighted degree
// cached.  Comparison is graded reverse lexicographic: higher weighted degree
// wins; at equal degree the monomial whose exponent is smaller at the
// rightmost differing position is the larger one.
struct Monomial {
  std::vector<uint32_t> exps;
  uint64_t wdeg = 0;

  static Monomial make(const VariableTable& table, std::vector<uint32_t> exps);
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// True when a strictly precedes b in descending canonical order (a > b).
bool monomial_greater(const Monomial& a, const Monomial& b);

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

struct Term {
  Monomial mono;
  uint8_t coeff;  // 1 for F2; 1..3 for Z/4
};

// Terms are kept sorted in descending monomial order with nonzero
// coefficients, so equal polynomials have equal representations and the
// canonical print falls out of a single pass.
class Polynomial {
 public:
  Polynomial() = default;  // invalid placeholder; use the factories

  static Polynomial zero(TablePtr table, Ring ring);
  static Polynomial constant(TablePtr table, Ring ring, unsigned value);
  static Polynomial variable(TablePtr table, Ring ring, size_t index);
  static Polynomial monomial(TablePtr table, Ring ring,
                             std::vector<uint32_t> exps, unsigned coeff = 1);

  // Builds a polynomial from terms in any order, merging duplicates and
  // dropping zero coefficients.  Exponent vectors must match the table size.
  static Polynomial from_terms(TablePtr table, Ring ring,
                               std::vector<Term> terms);

  // Parses the canonical grammar:
  //   poly   := '0' | term ('+' term)*
  //   term   := coeff? factor ('*' factor)* | coeff
  //   coeff  := '1' | '2' | '3'            (2 and 3 only over Z/4)
  //   factor := name ('^' uint)?
  // Whitespace is tolerated around '+'.  Errors carry the byte offset.
  static Polynomial parse(TablePtr table, Ring ring, std::string_view text);

  const TablePtr& table() const { return table_; }
  Ring ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  // Weighted degree of the leading term; zero polynomial has degree 0.
  uint64_t degree() const;
  bool is_homogeneous() const;
  // Largest exponent of variable v across all terms.
  uint32_t degree_in(size_t v) const;
  // True when variable v occurs in some term.
  bool involves(size_t v) const;
  // True when every variable outside `allowed` (a bitset by index) is absent.
  bool supported_on(const std::vector<bool>& allowed) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const;

  // -p: identity over F2, coefficientwise 4-c over Z/4.
  Polynomial negated() const;
  Polynomial pow(uint64_t e) const;
  // Multiplication by a single term, cheaper than building a polynomial.
  Polynomial times_term(const Monomial& m, unsigned coeff) const;

  // Sum of the terms of weighted degree exactly d.
  Polynomial component(uint64_t d) const;
  // Sum of terms t with deg_v(t) == k, with v's factor removed; that is, the
  // coefficient of v^k when the polynomial is read in R[others][v].
  Polynomial coeff_of(size_t v, uint32_t k) const;

  // Simultaneous substitution.  images[i] replaces the variable bound to it;
  // every bound variable must belong to this polynomial's table and all
  // images must share one table/ring.  Variables not bound must either not
  // occur, or (when the image table equals the source table) they map to
  // themselves.  F2 only.
  Polynomial substitute(const std::vector<size_t>& vars,
                        const std::vector<Polynomial>& images) const;

  // Partial derivative with respect to variable v.
  Polynomial derivative(size_t v) const;

  // Exact square root over F2: every exponent halves; throws NotASquare.
  Polynomial sqrt_exact() const;
  // Exact quotient over F2: throws NotDivisible when the division leaves a
  // remainder (the divisor's leading term must divide repeatedly to zero).
  Polynomial divide_exact(const Polynomial& divisor) const;

  // Canonical text: terms in descending order, factors in table order,
  // exponent 1 and coefficient 1 implicit, "0" for zero.
  std::string str() const;

 private:
  friend class PolyMatrix;
  void check_compatible(const Polynomial& o) const;
  static Polynomial from_unsorted(TablePtr table, Ring ring,
                                  std::vector<Term> terms);

  TablePtr table_;
  Ring ring_ = Ring::F2;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Matrices of polynomials
// ---------------------------------------------------------------------------

class PolyMatrix {
 public:
  PolyMatrix(TablePtr table, Ring ring, size_t rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const Polynomial& at(size_t r, size_t c) const;
  void set(size_t r, size_t c, Polynomial p);
  const TablePtr& table() const { return table_; }
  Ring ring() const { return ring_; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  // Entrywise map helpers.
  PolyMatrix map_square() const;      // every entry squared
  PolyMatrix map_sqrt_exact() const;  // exact square root of every entry
  PolyMatrix transpose() const;
  // Copy with one row and/or one column removed (nullopt keeps all).
  PolyMatrix erased(std::optional<size_t> row, std::optional<size_t> col) const;

  // Cofactor expansion with minors memoised on column subsets.  Over Z/4 the
  // alternating signs matter; over F2 they vanish.  Size is capped at 10.
  Polynomial determinant() const;
  // Pfaffian of an alternating matrix (zero diagonal, symmetric since -1=1
  // over F2) by expansion along the first remaining row; even size <= 8.
  Polynomial pfaffian() const;

  // Inverse of an upper unitriangular matrix by back substitution.
  PolyMatrix inverse_upper_unitriangular() const;

  static PolyMatrix identity(TablePtr table, Ring ring, size_t n);

 private:
  TablePtr table_;
  Ring ring_;
  size_t rows_, cols_;
  std::vector<Polynomial> e_;  // row-major
};

}  // namespace invforge
