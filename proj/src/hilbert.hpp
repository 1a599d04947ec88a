// SPDX-License-Identifier: MIT
// Hilbert series of the invariant rings as finite products
// prod (1 - t^b) / prod (1 - t^a): the denominator degrees are the generator
// weights, the numerator degrees the relator weights.  The Laurent data at
// t = 1 recovers the group order and the number of transvections, and the
// power-series coefficients count invariants degree by degree.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "context.hpp"

namespace invforge {

struct HilbertSeries {
  GroupKind group = GroupKind::OOdd;
  int n = 0;
  std::vector<uint64_t> den;  // degrees a of the factors 1 - t^a below
  std::vector<uint64_t> num;  // degrees b of the factors 1 - t^b above
};

// The series of one family member (1 <= n <= 4), degrees sorted ascending.
HilbertSeries hilbert_series(GroupKind g, int n);

// 1 / (leading Laurent coefficient at t = 1) = prod den / prod num.  For the
// series of an invariant ring this is the group order.  ZeroPoleOrder when
// the shape admits no pole (a zero degree, or too few denominator factors).
uint64_t series_order(const HilbertSeries& h);

// Subleading Laurent data: sum (a - 1) - sum (b - 1), the number of
// transvections of the group.
uint64_t series_reflections(const HilbertSeries& h);

// Power-series coefficients 0..maxdeg (DegreeTooLarge beyond 64).
std::vector<int64_t> series_coefficients(const HilbertSeries& h, int maxdeg);

// One-object JSON report; expand >= 0 adds coefficients 0..expand.
std::string series_report_json(const HilbertSeries& h, int expand);

}  // namespace invforge
