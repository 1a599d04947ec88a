// SPDX-License-Identifier: MIT
#include "hilbert.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "poly.hpp"

namespace invforge {

namespace {

uint64_t pw2(int e) { return uint64_t{1} << e; }

}  // namespace

HilbertSeries hilbert_series(GroupKind g, int n) {
  if (n < 1) fail(Errc::DegenerateInput, "series need n >= 1");
  if (n > 4) fail(Errc::DimensionTooLarge, "series tables stop at n = 4");
  HilbertSeries h;
  h.group = g;
  h.n = n;
  switch (g) {
    case GroupKind::Sp:
      // Generators xi1..xi{2n-1} and c{n}..c{2n-1}; relators in weights
      // 2^{2n} + 2^j for j = 1..n-1 (the top row of the system defines
      // xi{2n}, the rest are relations).
      for (int i = 1; i <= 2 * n - 1; ++i) h.den.push_back(pw2(i) + 1);
      for (int j = n; j <= 2 * n - 1; ++j) h.den.push_back(pw2(2 * n) - pw2(j));
      for (int j = 1; j <= n - 1; ++j) h.num.push_back(pw2(2 * n) + pw2(j));
      break;
    case GroupKind::OOdd:
    case GroupKind::OPlus:
    case GroupKind::OMinus: {
      // Generators xi0..xi{2n-2} plus the d family; which d's survive and
      // how many relators there are is what separates the three kinds.
      for (int i = 0; i <= 2 * n - 2; ++i) h.den.push_back(pw2(i) + 1);
      int d_lo = (g == GroupKind::OMinus) ? n + 1 : n;
      for (int j = d_lo; j <= 2 * n - 1; ++j)
        h.den.push_back(pw2(2 * n - 1) - pw2(j - 1));
      int r_hi = (g == GroupKind::OPlus) ? n - 1 : n - 2;
      for (int j = 1; j <= r_hi; ++j) h.num.push_back(pw2(2 * n - 1) + pw2(j));
      if (n == 1 && g != GroupKind::OPlus)
        // At n = 1 no row defines xi1, so it stays a free generator.
        h.den.push_back(3);
      break;
    }
  }
  std::sort(h.den.begin(), h.den.end());
  std::sort(h.num.begin(), h.num.end());
  return h;
}

uint64_t series_order(const HilbertSeries& h) {
  for (uint64_t a : h.den)
    if (a == 0) fail(Errc::ZeroPoleOrder, "zero-degree denominator factor");
  for (uint64_t b : h.num)
    if (b == 0) fail(Errc::ZeroPoleOrder, "zero-degree numerator factor");
  if (h.num.size() >= h.den.size())
    fail(Errc::ZeroPoleOrder, "series has no pole at t = 1");
  // prod den / prod num; the quotient fits in 64 bits for every table entry
  // (it is a group order), but the raw product can exceed them, so divide
  // through a 128-bit accumulator.
  unsigned __int128 acc = 1;
  for (uint64_t a : h.den) acc *= a;
  for (uint64_t b : h.num) {
    if (acc % b != 0)
      fail(Errc::InternalError, "numerator degree does not divide the order");
    acc /= b;
  }
  if (acc > UINT64_MAX) fail(Errc::SizeLimitExceeded, "order exceeds 64 bits");
  return static_cast<uint64_t>(acc);
}

uint64_t series_reflections(const HilbertSeries& h) {
  uint64_t s = 0;
  for (uint64_t a : h.den) s += a - 1;
  for (uint64_t b : h.num) s -= b - 1;
  return s;
}

std::vector<int64_t> series_coefficients(const HilbertSeries& h, int maxdeg) {
  if (maxdeg < 0) fail(Errc::DegenerateInput, "negative expansion degree");
  if (maxdeg > 64) fail(Errc::DegreeTooLarge, "series expansion stops at 64");
  std::vector<int64_t> c(static_cast<size_t>(maxdeg) + 1, 0);
  c[0] = 1;
  for (uint64_t a : h.den) {
    // Multiply by 1/(1 - t^a): ascending sweep reuses the updated prefix.
    if (a == 0) fail(Errc::ZeroPoleOrder, "zero-degree denominator factor");
    for (uint64_t i = a; i < c.size(); ++i) c[i] += c[i - a];
  }
  for (uint64_t b : h.num) {
    // Multiply by 1 - t^b: descending sweep keeps the old prefix intact.
    if (b == 0) fail(Errc::ZeroPoleOrder, "zero-degree numerator factor");
    for (uint64_t i = c.size(); i-- > b;) c[i] -= c[i - b];
  }
  return c;
}

std::string series_report_json(const HilbertSeries& h, int expand) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["group"] = group_kind_name(h.group);
  j["n"] = h.n;
  j["series"]["num"] = h.num;
  j["series"]["den"] = h.den;
  j["order"] = series_order(h);
  j["reflections"] = series_reflections(h);
  if (expand >= 0) j["coefficients"] = series_coefficients(h, expand);
  return j.dump(2) + "\n";
}

}  // namespace invforge
