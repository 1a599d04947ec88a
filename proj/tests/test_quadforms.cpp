// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadforms.hpp"

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

TEST_CASE("standard forms classify by kind") {
  for (int n = 1; n <= 2; ++n) {
    auto odd = SContext::make(n, SpaceKind::Odd);
    CHECK(classify_type(odd, odd.xi0()) == FormType::Odd);
    auto plus = SContext::make(n, SpaceKind::EvenPlus);
    CHECK(classify_type(plus, plus.xi0()) == FormType::Plus);
    auto minus = SContext::make(n, SpaceKind::EvenMinus);
    CHECK(classify_type(minus, minus.xi0()) == FormType::Minus);
  }
}

TEST_CASE("radicals and degeneracy") {
  auto odd = SContext::make(2, SpaceKind::Odd);
  auto q = odd.xi0();
  auto rad = radical_basis(odd, q);
  REQUIRE(rad.size() == 1);
  CHECK(rad[0] == 1u);  // e0 spans the polar radical
  CHECK(form_radical_basis(odd, q).empty());
  CHECK(is_nonsingular(odd, q));

  // Dropping the x0^2 term makes e0 a singular vector.
  auto sing = q + odd.x(0) * odd.x(0);
  CHECK_FALSE(is_nonsingular(odd, sing));
  CHECK(code_of([&] { classify_type(odd, sing); }) == Errc::DegenerateInput);

  auto even = SContext::make(2, SpaceKind::EvenPlus);
  auto partial = even.x(1) * even.x(2);  // rank-2 form on a 4-space
  CHECK(radical_basis(even, partial).size() == 2);
  CHECK(code_of([&] { classify_type(even, partial); }) ==
        Errc::DegenerateInput);
}

TEST_CASE("polarization rejects non-quadratic input") {
  auto ctx = SContext::make(1, SpaceKind::Odd);
  CHECK(code_of([&] { polarization(ctx, ctx.x(1).pow(3)); }) ==
        Errc::NotQuadratic);
  CHECK(code_of([&] { polarization(ctx, ctx.X()); }) == Errc::NotQuadratic);
  CHECK(code_of([&] { polarization(ctx, ctx.t() * ctx.x(1)); }) ==
        Errc::NotQuadratic);
  CHECK(code_of([&] { polarization(ctx, ctx.x(1) + ctx.x(2) * ctx.x(1)); }) ==
        Errc::NotQuadratic);
}

TEST_CASE("point evaluation") {
  auto ctx = SContext::make(1, SpaceKind::Odd);
  auto q = ctx.xi0();  // x0^2 + x1 x2
  CHECK(eval_at_point(ctx, q, 0b001));
  CHECK_FALSE(eval_at_point(ctx, q, 0b010));
  CHECK(eval_at_point(ctx, q, 0b110));
  CHECK_FALSE(eval_at_point(ctx, q, 0b111));  // 1 + 1
}

TEST_CASE("shift families: sizes on odd spaces") {
  for (int n = 1; n <= 3; ++n) {
    auto ctx = SContext::make(n, SpaceKind::Odd);
    size_t plus = a_set(ctx, FormType::Plus).size();
    size_t minus = a_set(ctx, FormType::Minus).size();
    size_t half = size_t{1} << (2 * n - 1);
    size_t excess = size_t{1} << (n - 1);
    CHECK(plus == half + excess);
    CHECK(minus == half - excess);
    if (n <= 2) {
      CHECK(b_set(ctx, FormType::Plus).size() == plus);
      CHECK(b_set(ctx, FormType::Minus).size() == minus);
    }
  }
}

TEST_CASE("shift families on even spaces contain x = 0 on the matching side") {
  for (int n = 1; n <= 2; ++n) {
    auto plus_ctx = SContext::make(n, SpaceKind::EvenPlus);
    auto ap = a_set(plus_ctx, FormType::Plus);
    auto am = a_set(plus_ctx, FormType::Minus);
    size_t half = size_t{1} << (2 * n - 1);
    size_t excess = size_t{1} << (n - 1);
    CHECK(ap.size() == half + excess);
    CHECK(am.size() == half - excess);
    REQUIRE(!ap.empty());
    CHECK(ap[0] == 0u);

    auto minus_ctx = SContext::make(n, SpaceKind::EvenMinus);
    auto mp = a_set(minus_ctx, FormType::Plus);
    auto mm = a_set(minus_ctx, FormType::Minus);
    CHECK(mp.size() == half + excess);
    CHECK(mm.size() == half - excess);
    REQUIRE(!mm.empty());
    CHECK(mm[0] == 0u);
  }
}

TEST_CASE("adding the square of the shift maps one family onto the other") {
  for (int n = 1; n <= 2; ++n) {
    auto ctx = SContext::make(n, SpaceKind::Odd);
    for (FormType type : {FormType::Plus, FormType::Minus}) {
      auto a = a_set(ctx, type);
      auto b = b_set(ctx, type);
      REQUIRE(a.size() == b.size());
      for (size_t k = 0; k < a.size(); ++k) {
        // a is ordered by odd masks, b by the even remainder, so entries
        // correspond elementwise.
        CHECK(a[k] == (b[k].mask << 1 | 1u));
        Polynomial x = ctx.linear_form(a[k]);
        CHECK(ctx.xi0() + x * x == b[k].form);
      }
    }
  }
}

TEST_CASE("n = 1 families by hand") {
  auto ctx = SContext::make(1, SpaceKind::Odd);
  auto aminus = a_set(ctx, FormType::Minus);
  REQUIRE(aminus.size() == 1);
  CHECK(ctx.linear_form(aminus[0]).str() == "x0+x1+x2");
  auto bminus = b_set(ctx, FormType::Minus);
  REQUIRE(bminus.size() == 1);
  CHECK(bminus[0].form.str() == "x1^2+x1*x2+x2^2");
  auto aplus = a_set(ctx, FormType::Plus);
  REQUIRE(aplus.size() == 3);
  CHECK(ctx.linear_form(aplus[0]).str() == "x0");
}
