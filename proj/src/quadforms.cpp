// SPDX-License-Identifier: MIT
#include "quadforms.hpp"

#include <bit>

namespace invforge {

const char* form_type_name(FormType t) {
  switch (t) {
    case FormType::Plus: return "plus";
    case FormType::Minus: return "minus";
    case FormType::Odd: return "odd";
  }
  return "?";
}

int mask_rank(std::vector<uint32_t> rows) {
  int rank = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    uint32_t pivot = rows[i];
    if (pivot == 0) continue;
    uint32_t low = pivot & (~pivot + 1);
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & low) rows[j] ^= pivot;
    ++rank;
  }
  return rank;
}

std::vector<uint32_t> mask_kernel(const std::vector<uint32_t>& rows,
                                  int ncols) {
  // Column-reduce the constraint rows, tracking pivot columns, then read the
  // kernel off the free columns.
  std::vector<uint32_t> reduced;
  std::vector<int> pivot_col;
  for (uint32_t r : rows) {
    for (size_t k = 0; k < reduced.size(); ++k)
      if (r & (1u << pivot_col[k])) r ^= reduced[k];
    if (r == 0) continue;
    int col = std::countr_zero(r);
    // Back-substitute to keep each pivot column unique.
    for (size_t k = 0; k < reduced.size(); ++k)
      if (reduced[k] & (1u << col)) reduced[k] ^= r;
    reduced.push_back(r);
    pivot_col.push_back(col);
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<uint32_t> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    uint32_t v = 1u << free;
    for (size_t k = 0; k < reduced.size(); ++k)
      if (reduced[k] & (1u << free)) v |= 1u << pivot_col[k];
    basis.push_back(v);
  }
  return basis;
}

bool eval_at_point(const SContext& ctx, const Polynomial& p, uint32_t point) {
  if (p.ring() != Ring::F2)
    fail(Errc::Unsupported, "point evaluation over F2 only");
  bool acc = false;
  size_t first_x = 2;  // t and X occupy slots 0 and 1
  for (const auto& term : p.terms()) {
    bool value = true;
    for (size_t v = 0; v < term.mono.exps.size() && value; ++v) {
      if (term.mono.exps[v] == 0) continue;
      if (v < first_x) {
        value = false;  // t = X = 0
      } else {
        value = (point >> (v - first_x)) & 1u;
      }
    }
    acc ^= value;
  }
  return acc;
}

std::vector<uint32_t> polarization(const SContext& ctx, const Polynomial& q) {
  int d = ctx.dim();
  std::vector<uint32_t> gram(d, 0);
  for (const auto& term : q.terms()) {
    if (term.mono.wdeg != 2)
      fail(Errc::NotQuadratic, "term of degree " +
                                   std::to_string(term.mono.wdeg));
    int idx[2];
    int found = 0;
    for (size_t v = 0; v < term.mono.exps.size(); ++v) {
      uint32_t e = term.mono.exps[v];
      if (e == 0) continue;
      if (v < 2)
        fail(Errc::NotQuadratic,
             "form involves " + q.table()->name(v));
      for (uint32_t k = 0; k < e; ++k) idx[found++] = static_cast<int>(v - 2);
    }
    if (found != 2) fail(Errc::InternalError, "degree bookkeeping");
    // Squares polarize to zero; cross terms contribute symmetrically.
    if (idx[0] != idx[1]) {
      gram[idx[0]] ^= 1u << idx[1];
      gram[idx[1]] ^= 1u << idx[0];
    }
  }
  return gram;
}

std::vector<uint32_t> radical_basis(const SContext& ctx, const Polynomial& q) {
  return mask_kernel(polarization(ctx, q), ctx.dim());
}

std::vector<uint32_t> form_radical_basis(const SContext& ctx,
                                         const Polynomial& q) {
  // On the radical of b the form is additive, so its zero set is a subspace;
  // collect the vanishing vectors and re-extract a basis.
  std::vector<uint32_t> rad = radical_basis(ctx, q);
  std::vector<uint32_t> zeros;
  for (uint32_t s = 0; s < (1u << rad.size()); ++s) {
    uint32_t v = 0;
    for (size_t k = 0; k < rad.size(); ++k)
      if (s & (1u << k)) v ^= rad[k];
    if (v != 0 && !eval_at_point(ctx, q, v)) zeros.push_back(v);
  }
  std::vector<uint32_t> echelon(32, 0);
  for (uint32_t z : zeros) {
    uint32_t r = z;
    for (int bit = 31; bit >= 0 && r != 0; --bit) {
      if (!((r >> bit) & 1u)) continue;
      if (echelon[bit]) {
        r ^= echelon[bit];
      } else {
        echelon[bit] = r;
        break;
      }
    }
  }
  std::vector<uint32_t> basis;
  for (uint32_t b : echelon)
    if (b) basis.push_back(b);
  return basis;
}

bool is_nonsingular(const SContext& ctx, const Polynomial& q) {
  return form_radical_basis(ctx, q).empty();
}

FormType classify_on(const SContext& ctx, const Polynomial& q,
                     const std::vector<uint32_t>& basis) {
  size_t m = basis.size();
  if (m > 20) fail(Errc::SizeLimitExceeded, "subspace too large to classify");
  std::vector<uint32_t> gram = polarization(ctx, q);

  // Gram matrix of the restriction.
  auto bilinear = [&](uint32_t u, uint32_t v) -> bool {
    bool s = false;
    for (int i = 0; i < ctx.dim(); ++i)
      if ((u >> i) & 1u) s ^= (std::popcount(gram[i] & v) & 1) != 0;
    return s;
  };
  std::vector<uint32_t> sub_rows(m, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (bilinear(basis[i], basis[j])) sub_rows[i] |= 1u << j;

  // Radical of the restriction, then the vectors of it where q vanishes.
  std::vector<uint32_t> rad = mask_kernel(sub_rows, static_cast<int>(m));
  for (uint32_t s = 1; s < (1u << rad.size()); ++s) {
    uint32_t coords = 0;
    for (size_t k = 0; k < rad.size(); ++k)
      if (s & (1u << k)) coords ^= rad[k];
    uint32_t v = 0;
    for (size_t i = 0; i < m; ++i)
      if ((coords >> i) & 1u) v ^= basis[i];
    if (v == 0 || !eval_at_point(ctx, q, v))
      fail(Errc::DegenerateInput, "restriction of the form is singular");
  }

  size_t zeros = 0;
  for (uint32_t s = 0; s < (1u << m); ++s) {
    uint32_t v = 0;
    for (size_t i = 0; i < m; ++i)
      if (s & (1u << i)) v ^= basis[i];
    if (!eval_at_point(ctx, q, v)) ++zeros;
  }
  if (m % 2 == 1) {
    if (zeros != (size_t{1} << (m - 1)))
      fail(Errc::InternalError, "odd-dimensional zero count");
    return FormType::Odd;
  }
  size_t half = size_t{1} << (m - 1);
  size_t excess = size_t{1} << (m / 2 - 1);
  if (zeros == half + excess) return FormType::Plus;
  if (zeros == half - excess) return FormType::Minus;
  fail(Errc::InternalError, "even-dimensional zero count");
}

FormType classify_type(const SContext& ctx, const Polynomial& q) {
  std::vector<uint32_t> basis;
  for (int i = 0; i < ctx.dim(); ++i) basis.push_back(1u << i);
  return classify_on(ctx, q, basis);
}

std::vector<uint32_t> a_set(const SContext& ctx, FormType type) {
  if (type == FormType::Odd)
    fail(Errc::WrongParity, "requested set needs a plus or minus type");
  Polynomial q0 = ctx.xi0();
  std::vector<uint32_t> out;
  if (ctx.kind == SpaceKind::Odd) {
    // Forms with x0-coefficient 1, classified on the kernel hyperplane.
    for (uint32_t w = 1; w < (1u << ctx.dim()); w += 2) {
      Polynomial x = ctx.linear_form(w);
      Polynomial q = q0 + x * x;
      std::vector<uint32_t> ker = mask_kernel({w}, ctx.dim());
      if (classify_on(ctx, q, ker) == type) out.push_back(w);
    }
  } else {
    for (uint32_t w = 0; w < (1u << ctx.dim()); ++w) {
      Polynomial x = ctx.linear_form(w);
      Polynomial q = q0 + x * x;
      if (classify_type(ctx, q) == type) out.push_back(w);
    }
  }
  return out;
}

std::vector<BForm> b_set(const SContext& ctx, FormType type) {
  if (ctx.kind != SpaceKind::Odd)
    fail(Errc::WrongParity, "the shifted family lives on an odd space");
  if (type == FormType::Odd)
    fail(Errc::WrongParity, "requested set needs a plus or minus type");
  Polynomial base = ctx.xi0() + ctx.x(0) * ctx.x(0);  // form on U
  std::vector<uint32_t> ubasis;
  for (int i = 1; i <= 2 * ctx.n; ++i) ubasis.push_back(1u << i);
  std::vector<BForm> out;
  for (uint32_t y = 0; y < (1u << (2 * ctx.n)); ++y) {
    Polynomial u = ctx.linear_form(y << 1);
    Polynomial q = base + u * u;
    if (classify_on(ctx, q, ubasis) == type) out.push_back({y, q});
  }
  return out;
}

}  // namespace invforge
