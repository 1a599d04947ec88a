// SPDX-License-Identifier: MIT
// Standard variable tables for the two sides of the computation: the
// concrete polynomial ring on a quadratic space (variables t, X and a basis
// of linear forms) and the abstract ring generated by the quadratic form xi0,
// its Steenrod images xi1, xi2, ..., the Chern-style generators d_j and the
// Dickson generators c_j.
#pragma once

#include <cstdint>

#include "poly.hpp"

namespace invforge {

// Shape of the underlying quadratic space: odd dimension 2n+1, or even
// dimension 2n carrying a form of plus or minus type.
enum class SpaceKind : uint8_t { Odd, EvenPlus, EvenMinus };

// The four families of groups handled by the relation and series code.
enum class GroupKind : uint8_t { OOdd, OPlus, OMinus, Sp };

const char* space_kind_name(SpaceKind k);
const char* group_kind_name(GroupKind k);

// Concrete side: F2[x...] together with the series variables t (weight 1)
// and X (weight 2).  Odd spaces use x0..x{2n}, even spaces x1..x{2n}.
struct SContext {
  int n = 0;
  SpaceKind kind = SpaceKind::Odd;
  TablePtr table;

  static SContext make(int n, SpaceKind kind);

  int dim() const { return kind == SpaceKind::Odd ? 2 * n + 1 : 2 * n; }
  // Lowest basis index: 0 on odd spaces, 1 on even ones.
  int x_lo() const { return kind == SpaceKind::Odd ? 0 : 1; }
  size_t t_index() const { return 0; }
  size_t X_index() const { return 1; }
  size_t x_index(int i) const;

  Polynomial t() const { return Polynomial::variable(table, Ring::F2, 0); }
  Polynomial X() const { return Polynomial::variable(table, Ring::F2, 1); }
  Polynomial x(int i) const {
    return Polynomial::variable(table, Ring::F2, x_index(i));
  }
  Polynomial zero() const { return Polynomial::zero(table, Ring::F2); }
  Polynomial one() const { return Polynomial::constant(table, Ring::F2, 1); }

  // Sum of the basis forms selected by the mask; bit k stands for x_{lo+k}.
  Polynomial linear_form(uint32_t mask) const;

  // The standard nonsingular quadratic form of this kind:
  //   odd        x0^2 + x1 x2 + x3 x4 + ...
  //   even plus  x1 x2 + x3 x4 + ...
  //   even minus x1^2 + x1 x2 + x2^2 + x3 x4 + ...
  Polynomial xi0() const;
};

// Abstract side: t, X, xi0..xi{2n}, d_n..d_{2n-1}, c_n..c_{2n-1} with the
// weights these elements have on the concrete side (xi_i has weight 2^i + 1,
// d_j has 2^{2n-1} - 2^{j-1}, c_j has 2^{2n} - 2^j).
struct XiContext {
  int n = 0;
  TablePtr table;

  static XiContext make(int n);

  size_t t_index() const { return 0; }
  size_t X_index() const { return 1; }
  size_t xi_index(int i) const;  // 0 <= i <= 2n
  size_t d_index(int j) const;   // n <= j <= 2n-1
  size_t c_index(int j) const;   // n <= j <= 2n-1

  Polynomial t() const { return Polynomial::variable(table, Ring::F2, 0); }
  Polynomial X() const { return Polynomial::variable(table, Ring::F2, 1); }
  Polynomial xi(int i) const {
    return Polynomial::variable(table, Ring::F2, xi_index(i));
  }
  Polynomial d(int j) const {
    return Polynomial::variable(table, Ring::F2, d_index(j));
  }
  Polynomial c(int j) const {
    return Polynomial::variable(table, Ring::F2, c_index(j));
  }
  Polynomial zero() const { return Polynomial::zero(table, Ring::F2); }
  Polynomial one() const { return Polynomial::constant(table, Ring::F2, 1); }
};

}  // namespace invforge
