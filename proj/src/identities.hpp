// SPDX-License-Identifier: MIT
// Named verifiable identities tying the abstract generators to the concrete
// products: factorizations, Steenrod stability, vanishing loci, restriction
// behaviour and coefficient formulas.  Every identity is checked exactly, by
// polynomial computation, at the requested level.
#pragma once

#include <string>
#include <vector>

namespace invforge {

// Catalogue order is fixed; names are stable identifiers.
std::vector<std::string> identity_names();

// Check one named identity at level n.  Throws UnknownIdentity for a name
// outside the catalogue, Unsupported when n is out of range for it (levels
// beyond the fast gate need allow_slow), IdentityFailed when the identity
// does not hold.
void verify_identity(const std::string& name, int n, bool allow_slow);

// Largest level verify_identity accepts for the name (throws
// UnknownIdentity for unknown names).
int identity_max_level(const std::string& name, bool allow_slow);
// Smallest level the identity is stated at (2 for the ones that need two
// levels below, 1 otherwise).
int identity_min_level(const std::string& name);

}  // namespace invforge
