// SPDX-License-Identifier: MIT
// Finite orthogonal and symplectic groups over F2 on small spaces: exhaustive
// enumeration by isometry backtracking, polynomial action, transvection
// counting, lifts from the even subspace to the odd space, and dimensions of
// spaces of invariant polynomials per degree.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "context.hpp"
#include "quadforms.hpp"

namespace invforge {

// A linear map on F2^dim; rows[i] is the image of basis vector e_i as a
// bitmask (bit j stands for e_j).
struct GroupElement {
  uint8_t dim = 0;
  std::array<uint8_t, 8> rows{};

  bool operator==(const GroupElement& o) const = default;
  uint32_t apply(uint32_t v) const;
  uint64_t key() const;  // packed rows, unique per element
  static GroupElement identity(int dim);
};

// Composition: (a * b)(v) = a(b(v)).
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);
int rank(const GroupElement& g);

// The concrete space a group kind acts on (Sp shares the even-plus table;
// only its polar form matters).
SContext group_space(int n, GroupKind kind);

// All isometries of the standard form of the context (the polar form alone
// for Sp), ordered lexicographically by rows.  Enumeration is capped at
// dimension 5.
std::vector<GroupElement> enumerate_group(const SContext& ctx, GroupKind kind);

// |G| and the number of transvections in G, in closed form.
uint64_t group_order_formula(GroupKind kind, int n);
uint64_t transvection_count_formula(GroupKind kind, int n);

// Transvections are the elements g != 1 with rank(g - 1) = 1; each fixes the
// hyperplane ker(phi) pointwise, phi being readable off the nonzero part of
// g - 1.  The histogram maps the mask of phi to a count.
size_t count_transvections(const std::vector<GroupElement>& group);
std::map<uint32_t, size_t> transvection_hyperplanes(
    const std::vector<GroupElement>& group);

// Substitute x_i -> x_i o g into p, i.e. p o g.  The action of g on
// polynomials is p -> p o g^{-1}, making it a left action.
Polynomial compose_with(const SContext& ctx, const GroupElement& g,
                        const Polynomial& p);
Polynomial act_on_poly(const SContext& ctx, const GroupElement& g,
                       const Polynomial& p);

// Extend an isometry of the polar form on U (dimension 2n) to an isometry of
// the odd space fixing e0, by correcting each image with an e0 component.
// The result is checked on the standard form; NoLiftFound if the input does
// not lift (e.g. it is not symplectic).
GroupElement lift_orthogonal(const SContext& odd_ctx, const GroupElement& g);

// A small generating set, picked greedily from the enumeration order.
std::vector<GroupElement> generating_set(const std::vector<GroupElement>& group);

// Dimension of the space of degree-d polynomials in the x variables fixed by
// every element of `generators`.  Degree is capped at 12.
size_t invariant_dimension(const SContext& ctx,
                           const std::vector<GroupElement>& generators,
                           int degree);

}  // namespace invforge
