// SPDX-License-Identifier: MIT
// Steenrod squares on polynomial rings over F2.  The total square is the
// ring endomorphism sending each weight-1 variable x to x + x^2; Sq^i of a
// homogeneous polynomial of degree d is the degree d+i component of its
// total square.
#pragma once

#include "poly.hpp"

namespace invforge {

// Total squaring operation Sq = Sq^0 + Sq^1 + ...  Every variable occurring
// in p must have weight 1 (NonLinearVariablePresent otherwise).
Polynomial total_sq(const Polynomial& p);

// Sq^i(p) for homogeneous p (NonHomogeneous otherwise).  Satisfies
// Sq^0 = id, Sq^deg(p) = p^2 and Sq^i(p) = 0 for i > deg(p).
Polynomial sq(uint64_t i, const Polynomial& p);

}  // namespace invforge
