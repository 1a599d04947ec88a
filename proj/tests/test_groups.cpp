// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "groups.hpp"

using namespace invforge;

namespace {

template <typename F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalError;
}

}  // namespace

TEST_CASE("group orders match the closed formulas") {
  for (int n = 1; n <= 2; ++n) {
    for (GroupKind kind :
         {GroupKind::OOdd, GroupKind::OPlus, GroupKind::OMinus,
          GroupKind::Sp}) {
      auto ctx = group_space(n, kind);
      auto group = enumerate_group(ctx, kind);
      CHECK(group.size() == group_order_formula(kind, n));
    }
  }
  CHECK(group_order_formula(GroupKind::OOdd, 1) == 6);
  CHECK(group_order_formula(GroupKind::OOdd, 2) == 720);
  CHECK(group_order_formula(GroupKind::OMinus, 2) == 120);
  CHECK(group_order_formula(GroupKind::OPlus, 2) == 72);
  CHECK(group_order_formula(GroupKind::Sp, 3) == 1451520);
}

TEST_CASE("enumerated elements preserve the form") {
  auto ctx = group_space(2, GroupKind::OMinus);
  auto group = enumerate_group(ctx, GroupKind::OMinus);
  auto q = ctx.xi0();
  for (const auto& g : group) CHECK(compose_with(ctx, g, q) == q);
}

TEST_CASE("element algebra: composition, inverse, action") {
  auto ctx = group_space(2, GroupKind::OOdd);
  auto group = enumerate_group(ctx, GroupKind::OOdd);
  std::mt19937 rng(31337);
  auto q = ctx.xi0();
  auto pick = [&] { return group[rng() % group.size()]; };
  for (int trial = 0; trial < 40; ++trial) {
    auto g = pick(), h = pick();
    CHECK(mul(g, inverse(g)) == GroupElement::identity(g.dim));
    // Left action on polynomials: act(gh) = act(g) after act(h).
    auto p = q * ctx.linear_form(static_cast<uint32_t>(1 + rng() % 31));
    CHECK(act_on_poly(ctx, mul(g, h), p) ==
          act_on_poly(ctx, g, act_on_poly(ctx, h, p)));
    // Vector and polynomial actions are compatible.
    uint32_t v = rng() % 32;
    CHECK(eval_at_point(ctx, act_on_poly(ctx, g, p), g.apply(v)) ==
          eval_at_point(ctx, p, v));
  }
}

TEST_CASE("transvections: counts and fixed hyperplanes") {
  for (int n = 1; n <= 2; ++n) {
    for (GroupKind kind :
         {GroupKind::OOdd, GroupKind::OPlus, GroupKind::OMinus,
          GroupKind::Sp}) {
      auto ctx = group_space(n, kind);
      auto group = enumerate_group(ctx, kind);
      CHECK(count_transvections(group) ==
            transvection_count_formula(kind, n));
    }
  }
  CHECK(transvection_count_formula(GroupKind::OOdd, 2) == 15);
  CHECK(transvection_count_formula(GroupKind::OMinus, 2) == 10);
  CHECK(transvection_count_formula(GroupKind::OPlus, 2) == 6);

  // Orthogonal transvections pair off with distinct fixed hyperplanes.
  for (GroupKind kind : {GroupKind::OOdd, GroupKind::OPlus, GroupKind::OMinus}) {
    auto ctx = group_space(2, kind);
    auto hist = transvection_hyperplanes(enumerate_group(ctx, kind));
    CHECK(hist.size() == transvection_count_formula(kind, 2));
    for (const auto& [phi, count] : hist) CHECK(count == 1);
  }
}

TEST_CASE("lifting symplectic maps to the odd space") {
  for (int n = 1; n <= 2; ++n) {
    auto odd = group_space(n, GroupKind::OOdd);
    auto even = group_space(n, GroupKind::Sp);
    auto sp = enumerate_group(even, GroupKind::Sp);
    auto q = odd.xi0();
    std::vector<GroupElement> lifted;
    for (const auto& g : sp) lifted.push_back(lift_orthogonal(odd, g));
    // The lift is injective into the odd group and hits its order.
    std::sort(lifted.begin(), lifted.end(),
              [](const GroupElement& a, const GroupElement& b) {
                return a.key() < b.key();
              });
    CHECK(std::adjacent_find(lifted.begin(), lifted.end()) == lifted.end());
    CHECK(lifted.size() == group_order_formula(GroupKind::OOdd, n));
    // Homomorphism spot check.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = sp[rng() % sp.size()], h = sp[rng() % sp.size()];
      CHECK(lift_orthogonal(odd, mul(g, h)) ==
            mul(lift_orthogonal(odd, g), lift_orthogonal(odd, h)));
    }
  }
  // A non-symplectic map has no lift.
  auto odd = group_space(1, GroupKind::OOdd);
  GroupElement shear;
  shear.dim = 2;
  shear.rows[0] = 0b01;
  shear.rows[1] = 0b01;  // singular
  CHECK(code_of([&] { lift_orthogonal(odd, shear); }) == Errc::NoLiftFound);
}

TEST_CASE("invariant dimensions per degree") {
  {
    auto ctx = group_space(1, GroupKind::OOdd);
    auto gens = generating_set(enumerate_group(ctx, GroupKind::OOdd));
    CHECK(gens.size() <= 8);
    // Polynomial invariants of the full odd group in 3 variables have one
    // generator each in degrees 1, 2, 3.
    std::vector<size_t> expect{1, 1, 2, 3, 4, 5, 7};
    for (int d = 0; d < static_cast<int>(expect.size()); ++d)
      CHECK(invariant_dimension(ctx, gens, d) == expect[d]);
  }
  {
    auto ctx = group_space(1, GroupKind::Sp);
    auto gens = generating_set(enumerate_group(ctx, GroupKind::Sp));
    // Generators in degrees 2 and 3.
    std::vector<size_t> expect{1, 0, 1, 1, 1, 1, 2};
    for (int d = 0; d < static_cast<int>(expect.size()); ++d)
      CHECK(invariant_dimension(ctx, gens, d) == expect[d]);
  }
  auto ctx = group_space(1, GroupKind::OOdd);
  auto gens = generating_set(enumerate_group(ctx, GroupKind::OOdd));
  CHECK(code_of([&] { invariant_dimension(ctx, gens, 13); }) ==
        Errc::DegreeTooLarge);
}
