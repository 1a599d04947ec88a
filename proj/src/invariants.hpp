// SPDX-License-Identifier: MIT
// Generators of rings of invariants over F2: the xi sequence obtained from a
// nonsingular quadratic form by iterated Steenrod squares, Dickson
// invariants, Pfaffian-type top classes and their Steenrod derivatives, the
// two half-products attached to the shift families, and exact expression of
// concrete invariants in terms of the abstract generators.
#pragma once

#include "context.hpp"
#include "quadforms.hpp"
#include "steenrod.hpp"

namespace invforge {

// Rebuild p over another table, matching variables by name.
Polynomial transplant(const Polynomial& p, TablePtr target);

// ---------------------------------------------------------------------------
// Concrete side
// ---------------------------------------------------------------------------

// xi_0 is the standard form; xi_i = Sq^{2^{i-1}}(xi_{i-1}).  Returns
// xi_0..xi_{2n}.
std::vector<Polynomial> xi_sequence(const SContext& ctx);

// D(X) = prod_{u in U} (X + u), computed by subspace doubling, and its
// coefficients c_j at X^{2^j} (c_{2n} = 1).  U is spanned by x_1..x_{2n}.
struct Dickson {
  Polynomial D;
  std::vector<Polynomial> c;  // c_0..c_{2n}
};
Dickson dickson(const SContext& ctx);

// Moore matrix M[j][i] = x_{j+1}^{2^i} (2n rows, columns i = 0..2n-1); it
// satisfies M (c_0..c_{2n-1})^T = (x_1^{2^{2n}}, ..., x_{2n}^{2^{2n}})^T and
// det M = c_0.
PolyMatrix moore_matrix(const SContext& ctx);

// Product of the whole odd shift family = D evaluated at x0 (odd spaces).
Polynomial eta(const SContext& ctx);

// Products over the two halves of the shift family: P± in t over the linear
// forms, Q± in X over the shifted quadratic forms, and the coefficients
// d_n..d_{2n-1} of P- (d_j sits at t^{2^{j-1}-2^{n-1}}).
struct Chern {
  Polynomial Pplus, Pminus;
  Polynomial Qplus, Qminus;
  std::vector<Polynomial> d;  // d_n..d_{2n-1}
};
Chern chern(const SContext& ctx);

// ---------------------------------------------------------------------------
// Abstract side
// ---------------------------------------------------------------------------

// Total Steenrod square on the subring generated by xi_0..xi_{2n-1}, as the
// ring endomorphism with Sq(xi_i) = xi_i + xi_{i-1}^2 + xi_{i+1} + xi_i^2
// (the xi_{i-1}^2 term is absent for i <= 1).
Polynomial total_sq_xi(const XiContext& a, const Polynomial& p);
Polynomial sq_xi(const XiContext& a, uint64_t i, const Polynomial& p);

// The alternating matrix with entry xi_{j-i}^{2^i} at (i, j), i < j
// (0-indexed), zero diagonal, symmetric.
PolyMatrix xi_matrix(const XiContext& a, int size);

// Top Pfaffian class of level k (size-2k matrix) and its direct evaluation
// as a sum over perfect matchings.
Polynomial lambda_level(const XiContext& a, int k);
Polynomial lambda_by_matchings(const XiContext& a, int k);
// Sq^{2^{2k}-2^i} of the level-k class, for 0 <= i <= 2k.
Polynomial lambda_i_level(const XiContext& a, int k, int i);

// The (2k+1) x (2k+1) symmetric matrix over Z/4 with diagonal 2 X^{2^i} and
// entry xi_{j-i}^{2^i} at (i, j), i < j; its determinant has all
// coefficients in {0, 2} and halves to the level-k full product.
PolyMatrix h_matrix(const XiContext& a, int k);
Polynomial halve(const Polynomial& p);  // divides a {0,2}-coefficient Z/4 poly by 2
Polynomial omega_level(const XiContext& a, int k);

// The two factors of the full product, built level by level together with
// the auxiliary polynomials alpha±_k, using the splitting off of xi_{2k},
// the cube identity and one quadratic solve per level.
struct OmegaPm {
  std::vector<Polynomial> plus;         // levels 0..n
  std::vector<Polynomial> minus;        // levels 0..n
  std::vector<Polynomial> alpha_plus;   // levels 0..n
  std::vector<Polynomial> alpha_minus;  // levels 0..n
  std::vector<Polynomial> full;         // levels 0..n (full[0] = X)
};
OmegaPm omega_pm(const XiContext& a);

// ---------------------------------------------------------------------------
// Evaluation and exact expression
// ---------------------------------------------------------------------------

// Concrete values of every abstract generator on a space of the same n.
// The d images come from the shift-family products, which are only built at
// desk scale (n <= 2); beyond that the d slots stay empty and substituting a
// polynomial that uses them is refused.
struct ConcreteImages {
  SContext s;
  XiContext a;
  std::vector<Polynomial> images;  // one per abstract table slot
  bool has_d = false;
};
ConcreteImages concrete_images(int n, SpaceKind kind);

// Substitute the concrete images into an abstract polynomial.
Polynomial to_S(const ConcreteImages& ci, const Polynomial& p);

// Write a homogeneous concrete polynomial as a polynomial in the allowed
// abstract slots, at most affine in the `linear` slots.  A representation
// avoiding the linear slots entirely is preferred when one exists; otherwise
// the expression must be unique (AmbiguousExpression when a relation makes
// it not so, ExpressionNotInSubring when there is none).
Polynomial express_in_xi(const ConcreteImages& ci, const Polynomial& target,
                         const std::vector<size_t>& allowed,
                         const std::vector<size_t>& linear = {});

// The shift-family products with coefficients expressed abstractly:
// P± over {xi_0..xi_{2n-2}, d_n..d_{2n-1}}, Q± over {xi_1..xi_{2n-1},
// c_n..c_{2n-1}}, linear in the d (resp. c) slots.
Polynomial abstract_P(const ConcreteImages& ci, bool plus);
Polynomial abstract_Q(const ConcreteImages& ci, bool plus);

// ---------------------------------------------------------------------------
// Structured matrices for the relation systems
// ---------------------------------------------------------------------------

// L, R: top blocks of the level-n alternating matrix (rows 0..n-1, columns
// 0..n-1 and n..2n-1).  K is built by the doubling recursion (first row
// zero, lower-left K_{n-1} squared, last column E_{n-1} squared) and the
// column E by exact expression of c_i + sum_j K[i][j] c_{n+j} in the xi
// subring; its top entry is the level-n Pfaffian class.
struct KE {
  PolyMatrix L, R, K;          // n x n
  std::vector<Polynomial> E;   // n entries
};
KE ke_matrices(const XiContext& a);  // n <= 2

// Write beta_l = (alpha-_l(t^2+xi0))^{2^{n-l}}.  The coefficient of
// t^{2^{n+j}-2^n} in beta_l (rows j = 0..n-1, columns l = 0..n-1) is an
// upper unitriangular matrix of squares; U is its entrywise square root.
// V[j] is the same coefficient for l = n.  J = U^{-1} and F = J^{*2} V give
// (c_n..c_{2n-1})^T = J^{*2} (d_n^2..d_{2n-1}^2)^T + F.
struct JF {
  PolyMatrix U, J;             // n x n
  std::vector<Polynomial> V, F;
};
JF jf_matrices(const XiContext& a);

}  // namespace invforge
