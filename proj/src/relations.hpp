// SPDX-License-Identifier: MIT
// Presentations of the rings of invariants at desk scale: the free generator
// list of each family member, the one generator of the xi chain the leading
// row defines in terms of the others, the residual relators, the structured
// coefficient matrix of the underlying linear system, and the determinant
// identities it satisfies.
#pragma once

#include <optional>
#include <string>

#include "invariants.hpp"

namespace invforge {

// One determinant identity: `value` is the determinant actually computed
// from the assembled matrix, `expected` the closed form it must equal.
struct DetCheck {
  std::string label;
  Polynomial value;
  Polynomial expected;
};

struct RelationSystem {
  GroupKind group = GroupKind::OOdd;
  int n = 0;
  XiContext a;
  std::vector<size_t> generators;      // freely generating slots, table order
  std::vector<size_t> unknowns;        // slots the rows are linear in
  std::optional<size_t> defined_slot;  // xi defined by the leading row
  Polynomial defined_value;            // its expression in the generators
  std::vector<Polynomial> relators;    // remaining rows; zero in the ring
  PolyMatrix structure;                // coefficient matrix of the system
  std::vector<DetCheck> checks;
};

// Assemble the presentation (n <= 2).
RelationSystem relation_system(const XiContext& a, GroupKind g);

// Map every row to the concrete space of the matching kind and verify it
// vanishes (ResidueNonzero otherwise), then compare each determinant with
// its closed form (DeterminantMismatch otherwise).
void check_relation_system(const RelationSystem& rs);

// Stable plain-text rendering (generators, defined slot, relators, structure
// rows, determinant values); shared by the golden tree and the C API.
std::string relation_system_text(const RelationSystem& rs);

}  // namespace invforge
