// SPDX-License-Identifier: MIT
#include "context.hpp"

namespace invforge {

const char* space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Odd: return "odd";
    case SpaceKind::EvenPlus: return "even-plus";
    case SpaceKind::EvenMinus: return "even-minus";
  }
  return "?";
}

const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::OOdd: return "o-odd";
    case GroupKind::OPlus: return "o-plus";
    case GroupKind::OMinus: return "o-minus";
    case GroupKind::Sp: return "sp";
  }
  return "?";
}

SContext SContext::make(int n, SpaceKind kind) {
  if (n < 1) fail(Errc::DegenerateInput, "n must be at least 1");
  if (n > 3) fail(Errc::DimensionTooLarge, "concrete spaces support n <= 3");
  SContext ctx;
  ctx.n = n;
  ctx.kind = kind;
  std::vector<std::string> names{"t", "X"};
  std::vector<uint64_t> weights{1, 2};
  for (int i = ctx.x_lo(); i <= 2 * n; ++i) {
    names.push_back("x" + std::to_string(i));
    weights.push_back(1);
  }
  ctx.table = make_table(std::move(names), std::move(weights));
  return ctx;
}

size_t SContext::x_index(int i) const {
  if (i < x_lo() || i > 2 * n)
    fail(Errc::InternalError, "basis index out of range");
  return 2 + static_cast<size_t>(i - x_lo());
}

Polynomial SContext::linear_form(uint32_t mask) const {
  Polynomial f = zero();
  for (int k = 0; k < dim(); ++k)
    if (mask & (1u << k)) f += x(x_lo() + k);
  return f;
}

Polynomial SContext::xi0() const {
  Polynomial q = zero();
  if (kind == SpaceKind::Odd) {
    q += x(0) * x(0);
  } else if (kind == SpaceKind::EvenMinus) {
    q += x(1) * x(1) + x(1) * x(2) + x(2) * x(2);
  }
  int start = (kind == SpaceKind::EvenMinus) ? 3 : 1;
  for (int i = start; i + 1 <= 2 * n; i += 2) q += x(i) * x(i + 1);
  return q;
}

XiContext XiContext::make(int n) {
  if (n < 1) fail(Errc::DegenerateInput, "n must be at least 1");
  if (n > 4) fail(Errc::DimensionTooLarge, "abstract contexts support n <= 4");
  XiContext ctx;
  ctx.n = n;
  std::vector<std::string> names{"t", "X"};
  std::vector<uint64_t> weights{1, 2};
  for (int i = 0; i <= 2 * n; ++i) {
    names.push_back("xi" + std::to_string(i));
    weights.push_back((uint64_t{1} << i) + 1);
  }
  for (int j = n; j <= 2 * n - 1; ++j) {
    names.push_back("d" + std::to_string(j));
    weights.push_back((uint64_t{1} << (2 * n - 1)) - (uint64_t{1} << (j - 1)));
  }
  for (int j = n; j <= 2 * n - 1; ++j) {
    names.push_back("c" + std::to_string(j));
    weights.push_back((uint64_t{1} << (2 * n)) - (uint64_t{1} << j));
  }
  ctx.table = make_table(std::move(names), std::move(weights));
  return ctx;
}

size_t XiContext::xi_index(int i) const {
  if (i < 0 || i > 2 * n) fail(Errc::InternalError, "xi index out of range");
  return 2 + static_cast<size_t>(i);
}

size_t XiContext::d_index(int j) const {
  if (j < n || j > 2 * n - 1) fail(Errc::InternalError, "d index out of range");
  return 2 + static_cast<size_t>(2 * n + 1) + static_cast<size_t>(j - n);
}

size_t XiContext::c_index(int j) const {
  if (j < n || j > 2 * n - 1) fail(Errc::InternalError, "c index out of range");
  return 2 + static_cast<size_t>(2 * n + 1) + static_cast<size_t>(n) +
         static_cast<size_t>(j - n);
}

}  // namespace invforge
