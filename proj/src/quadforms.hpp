// SPDX-License-Identifier: MIT
// Quadratic forms over F2 on the concrete contexts: polarization, radicals,
// type classification by zero counting, and the two distinguished families
// of forms attached to a nonsingular form (shifts by squares of linear
// forms, and their restrictions to the even part of an odd space).
#pragma once

#include <cstdint>
#include <vector>

#include "context.hpp"

namespace invforge {

// Type of a nonsingular quadratic form: even dimension splits into plus
// (majority of zeros) and minus; odd dimension has a single type.
enum class FormType : uint8_t { Plus, Minus, Odd };
const char* form_type_name(FormType t);

// --- small F2 linear algebra on bitmask rows ---

// Rank of a list of row masks.
int mask_rank(std::vector<uint32_t> rows);
// Basis of { v : parity(v & row) = 0 for all rows } inside F2^ncols.
std::vector<uint32_t> mask_kernel(const std::vector<uint32_t>& rows, int ncols);

// Evaluate p at the 0/1 point given by `point` over the x-basis
// (bit k stands for x_{lo+k}); t and X evaluate to 0.
bool eval_at_point(const SContext& ctx, const Polynomial& p, uint32_t point);

// Gram matrix of the polar form b(u,v) = q(u+v)+q(u)+q(v) as row masks over
// the x-basis.  q must be homogeneous of degree 2 in the x variables alone.
std::vector<uint32_t> polarization(const SContext& ctx, const Polynomial& q);

// Basis of the radical of the polar form, and of the subspace of it where q
// also vanishes.
std::vector<uint32_t> radical_basis(const SContext& ctx, const Polynomial& q);
std::vector<uint32_t> form_radical_basis(const SContext& ctx,
                                         const Polynomial& q);
bool is_nonsingular(const SContext& ctx, const Polynomial& q);

// Classify q restricted to the span of `basis` (DegenerateInput when the
// restriction is singular).  classify_type uses the whole space.
FormType classify_on(const SContext& ctx, const Polynomial& q,
                     const std::vector<uint32_t>& basis);
FormType classify_type(const SContext& ctx, const Polynomial& q);

// The linear forms x (as basis masks, ascending) whose square shifts the
// standard form to the given type:
//   odd spaces   x runs over forms with x0-coefficient 1; the test form is
//                xi0 + x^2 restricted to ker x;
//   even spaces  x runs over all of U*; the test form is xi0 + x^2 on U.
std::vector<uint32_t> a_set(const SContext& ctx, FormType type);

// On an odd space, the forms xi0 + x0^2 + x^2 on U for x in U* (ascending by
// the mask of x) of the given type.  The mask bit k of the returned pairs
// stands for x_{k+1}.
struct BForm {
  uint32_t mask;    // mask of x over x1..x{2n}
  Polynomial form;  // xi0 + x0^2 + x^2, a form on U
};
std::vector<BForm> b_set(const SContext& ctx, FormType type);

}  // namespace invforge
