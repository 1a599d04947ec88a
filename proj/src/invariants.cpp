// SPDX-License-Identifier: MIT
#include "invariants.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace invforge {

namespace {

// ---------------------------------------------------------------------------
// F2 linear systems indexed by monomials
// ---------------------------------------------------------------------------

struct ExpsHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Solve sum_j eps_j * cols[j] == rhs over F2, one row per monomial.
struct F2Solution {
  bool consistent = false;
  size_t kernel_dim = 0;
  std::vector<uint8_t> coeffs;  // free variables set to zero
};

F2Solution solve_f2(const std::vector<Polynomial>& cols, const Polynomial& rhs) {
  const size_t ncols = cols.size();
  const size_t words = (ncols + 1 + 63) / 64;
  std::unordered_map<std::vector<uint32_t>, size_t, ExpsHash> row_of;
  std::vector<std::vector<uint64_t>> rows;
  auto row_for = [&](const std::vector<uint32_t>& exps) -> std::vector<uint64_t>& {
    auto [it, fresh] = row_of.try_emplace(exps, rows.size());
    if (fresh) rows.emplace_back(words, 0);
    return rows[it->second];
  };
  for (size_t j = 0; j < ncols; ++j)
    for (const Term& t : cols[j].terms())
      row_for(t.mono.exps)[j / 64] ^= 1ull << (j % 64);
  for (const Term& t : rhs.terms())
    row_for(t.mono.exps)[ncols / 64] ^= 1ull << (ncols % 64);

  size_t rank = 0;
  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t pr = rank;
    while (pr < rows.size() && !((rows[pr][col / 64] >> (col % 64)) & 1)) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      if ((rows[r][col / 64] >> (col % 64)) & 1)
        for (size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
    }
    pivots.emplace_back(rank, col);
    ++rank;
  }

  F2Solution out;
  out.kernel_dim = ncols - pivots.size();
  for (size_t r = rank; r < rows.size(); ++r)
    if ((rows[r][ncols / 64] >> (ncols % 64)) & 1) return out;  // inconsistent
  out.consistent = true;
  out.coeffs.assign(ncols, 0);
  for (auto [r, c] : pivots)
    out.coeffs[c] = static_cast<uint8_t>((rows[r][ncols / 64] >> (ncols % 64)) & 1);
  return out;
}

// All exponent vectors supported on `slots` with weighted degree exactly w,
// in a fixed deterministic order.
void weight_monomials_rec(const VariableTable& table,
                          const std::vector<size_t>& slots, size_t at,
                          uint64_t w, std::vector<uint32_t>& cur,
                          std::vector<std::vector<uint32_t>>& out, size_t cap) {
  if (out.size() > cap)
    fail(Errc::SizeLimitExceeded, "too many candidate monomials");
  if (at == slots.size()) {
    if (w == 0) out.push_back(cur);
    return;
  }
  const size_t v = slots[at];
  const uint64_t wt = table.weight(v);
  for (uint64_t e = 0; e * wt <= w; ++e) {
    cur[v] = static_cast<uint32_t>(e);
    weight_monomials_rec(table, slots, at + 1, w - e * wt, cur, out, cap);
  }
  cur[v] = 0;
}

std::vector<std::vector<uint32_t>> weight_monomials(
    const VariableTable& table, const std::vector<size_t>& slots, uint64_t w) {
  std::vector<uint32_t> cur(table.size(), 0);
  std::vector<std::vector<uint32_t>> out;
  weight_monomials_rec(table, slots, 0, w, cur, out, 200000);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Table transplantation
// ---------------------------------------------------------------------------

Polynomial transplant(const Polynomial& p, TablePtr target) {
  if (p.table() == target) return p;
  const VariableTable& src = *p.table();
  std::vector<int> map(src.size(), -1);
  std::vector<Term> terms;
  terms.reserve(p.term_count());
  for (const Term& t : p.terms()) {
    std::vector<uint32_t> exps(target->size(), 0);
    for (size_t i = 0; i < src.size(); ++i) {
      if (t.mono.exps[i] == 0) continue;
      if (map[i] < 0) map[i] = static_cast<int>(target->index_of(src.name(i)));
      exps[static_cast<size_t>(map[i])] = t.mono.exps[i];
    }
    terms.push_back({Monomial::make(*target, std::move(exps)), t.coeff});
  }
  return Polynomial::from_terms(std::move(target), p.ring(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Concrete side
// ---------------------------------------------------------------------------

std::vector<Polynomial> xi_sequence(const SContext& ctx) {
  std::vector<Polynomial> xi;
  xi.push_back(ctx.xi0());
  for (int i = 1; i <= 2 * ctx.n; ++i)
    xi.push_back(sq(1ull << (i - 1), xi.back()));
  return xi;
}

Dickson dickson(const SContext& ctx) {
  // Doubling over the flag of subspaces spanned by x_1..x_k:
  // D_{W + <w>}(X) = D_W(X) * D_W(X + w).
  Polynomial D = ctx.X();
  for (int i = 1; i <= 2 * ctx.n; ++i) {
    Polynomial shifted =
        D.substitute({ctx.X_index()}, {ctx.X() + ctx.x(i)});
    D = D * shifted;
  }
  Dickson out{D, {}};
  for (int j = 0; j <= 2 * ctx.n; ++j)
    out.c.push_back(D.coeff_of(ctx.X_index(), 1u << j));
  return out;
}

PolyMatrix moore_matrix(const SContext& ctx) {
  const int m = 2 * ctx.n;
  PolyMatrix M(ctx.table, Ring::F2, m, m);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < m; ++k)
      M.set(r, k, ctx.x(r + 1).pow(1ull << k));
  return M;
}

Polynomial eta(const SContext& ctx) {
  if (ctx.kind != SpaceKind::Odd)
    fail(Errc::WrongParity, "the odd shift family needs an odd space");
  return dickson(ctx).D.substitute({ctx.X_index()}, {ctx.x(0)});
}

Chern chern(const SContext& ctx) {
  auto linear_product = [&](FormType ty) {
    Polynomial P = ctx.one();
    for (uint32_t w : a_set(ctx, ty)) P *= ctx.t() + ctx.linear_form(w);
    return P;
  };
  Chern out{linear_product(FormType::Plus), linear_product(FormType::Minus),
            ctx.one(), ctx.one(), {}};
  if (ctx.kind == SpaceKind::Odd) {
    for (const BForm& b : b_set(ctx, FormType::Plus)) out.Qplus *= ctx.X() + b.form;
    for (const BForm& b : b_set(ctx, FormType::Minus)) out.Qminus *= ctx.X() + b.form;
  } else {
    const Polynomial xi0 = ctx.xi0();
    for (uint32_t w : a_set(ctx, FormType::Plus)) {
      Polynomial lf = ctx.linear_form(w);
      out.Qplus *= ctx.X() + xi0 + lf * lf;
    }
    for (uint32_t w : a_set(ctx, FormType::Minus)) {
      Polynomial lf = ctx.linear_form(w);
      out.Qminus *= ctx.X() + xi0 + lf * lf;
    }
  }
  for (int j = ctx.n; j <= 2 * ctx.n - 1; ++j) {
    uint32_t tpow = (1u << (j - 1)) - (1u << (ctx.n - 1));
    out.d.push_back(out.Pminus.coeff_of(ctx.t_index(), tpow));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Abstract side
// ---------------------------------------------------------------------------

Polynomial total_sq_xi(const XiContext& a, const Polynomial& p) {
  std::vector<bool> allowed(a.table->size(), false);
  for (int i = 0; i < 2 * a.n; ++i) allowed[a.xi_index(i)] = true;
  if (!p.supported_on(allowed))
    fail(Errc::NotInSubring,
         "the total square acts on the subring generated by xi0..xi" +
             std::to_string(2 * a.n - 1));
  std::vector<size_t> vars;
  std::vector<Polynomial> images;
  for (int i = 0; i < 2 * a.n; ++i) {
    Polynomial img = a.xi(i) + a.xi(i + 1) + a.xi(i) * a.xi(i);
    if (i >= 2) img += a.xi(i - 1) * a.xi(i - 1);
    vars.push_back(a.xi_index(i));
    images.push_back(img);
  }
  return p.substitute(vars, images);
}

Polynomial sq_xi(const XiContext& a, uint64_t i, const Polynomial& p) {
  if (!p.is_homogeneous())
    fail(Errc::NonHomogeneous, "Sq^i needs a homogeneous argument");
  if (p.is_zero()) return p;
  if (i > p.degree()) return Polynomial::zero(p.table(), p.ring());
  return total_sq_xi(a, p).component(p.degree() + i);
}

PolyMatrix xi_matrix(const XiContext& a, int size) {
  if (size < 0 || size > 2 * a.n + 1)
    fail(Errc::DimensionMismatch,
         "matrix size " + std::to_string(size) + " exceeds the xi range");
  PolyMatrix M(a.table, Ring::F2, size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      Polynomial e = a.xi(j - i).pow(1ull << i);
      M.set(i, j, e);
      M.set(j, i, e);
    }
  return M;
}

Polynomial lambda_level(const XiContext& a, int k) {
  if (k == 0) return a.one();
  return xi_matrix(a, 2 * k).pfaffian();
}

Polynomial lambda_by_matchings(const XiContext& a, int k) {
  if (k < 0 || 2 * k - 1 > 2 * a.n)
    fail(Errc::DimensionMismatch, "matching level exceeds the xi range");
  if (k == 0) return a.one();
  const int m = 2 * k;
  std::vector<Term> terms;
  std::vector<uint32_t> exps(a.table->size(), 0);
  uint32_t used = 0;
  auto rec = [&](auto&& self) -> void {
    int i = 0;
    while (i < m && (used >> i) & 1) ++i;
    if (i == m) {
      terms.push_back({Monomial::make(*a.table, exps), 1});
      return;
    }
    used |= 1u << i;
    for (int j = i + 1; j < m; ++j) {
      if ((used >> j) & 1) continue;
      used |= 1u << j;
      const size_t v = a.xi_index(j - i);
      exps[v] += 1u << i;
      self(self);
      exps[v] -= 1u << i;
      used &= ~(1u << j);
    }
    used &= ~(1u << i);
  };
  rec(rec);
  return Polynomial::from_terms(a.table, Ring::F2, std::move(terms));
}

Polynomial lambda_i_level(const XiContext& a, int k, int i) {
  if (i < 0 || i > 2 * k)
    fail(Errc::DimensionMismatch, "Steenrod index out of range");
  Polynomial L = lambda_level(a, k);
  if (i == 2 * k) return L;
  return sq_xi(a, (1ull << (2 * k)) - (1ull << i), L);
}

PolyMatrix h_matrix(const XiContext& a, int k) {
  const int size = 2 * k + 1;
  if (size > 2 * a.n + 1)
    fail(Errc::DimensionMismatch, "matrix size exceeds the xi range");
  PolyMatrix H(a.table, Ring::Z4, size, size);
  for (int i = 0; i < size; ++i) {
    std::vector<uint32_t> exps(a.table->size(), 0);
    exps[a.X_index()] = 1u << i;
    H.set(i, i, Polynomial::monomial(a.table, Ring::Z4, exps, 2));
  }
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      std::vector<uint32_t> exps(a.table->size(), 0);
      exps[a.xi_index(j - i)] = 1u << i;
      Polynomial e = Polynomial::monomial(a.table, Ring::Z4, exps, 1);
      H.set(i, j, e);
      H.set(j, i, e);
    }
  return H;
}

Polynomial halve(const Polynomial& p) {
  if (p.ring() != Ring::Z4)
    fail(Errc::RingMismatch, "halving is defined over Z/4");
  std::vector<Term> terms;
  terms.reserve(p.term_count());
  for (const Term& t : p.terms()) {
    if (t.coeff != 2)
      fail(Errc::HalvingFailed,
           "coefficient " + std::to_string(t.coeff) + " is not in {0,2}");
    terms.push_back({t.mono, 1});
  }
  return Polynomial::from_terms(p.table(), Ring::F2, std::move(terms));
}

Polynomial omega_level(const XiContext& a, int k) {
  return halve(h_matrix(a, k).determinant());
}

// ---------------------------------------------------------------------------
// The two factors of the full product
// ---------------------------------------------------------------------------

namespace {

// Monomials in X, xi_1..xi_{2k-1} of weighted degree 2^{2k} - 2^k with
// X-exponent at most 2^{2k-1} - 2^{k-1}: the search space for alpha-_k.
std::vector<std::vector<uint32_t>> alpha_candidates(const XiContext& a, int k) {
  const uint64_t target = (1ull << (2 * k)) - (1ull << k);
  const uint64_t xcap = (1ull << (2 * k - 1)) - (1ull << (k - 1));
  std::vector<size_t> slots;
  for (int i = 1; i <= 2 * k - 1; ++i) slots.push_back(a.xi_index(i));
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur(a.table->size(), 0);
  auto rec = [&](auto&& self, size_t at, uint64_t w) -> void {
    if (at == slots.size()) {
      if (w % 2 == 0 && w / 2 <= xcap) {
        cur[a.X_index()] = static_cast<uint32_t>(w / 2);
        out.push_back(cur);
        cur[a.X_index()] = 0;
      }
      return;
    }
    const uint64_t wt = a.table->weight(slots[at]);
    for (uint64_t e = 0; e * wt <= w; ++e) {
      cur[slots[at]] = static_cast<uint32_t>(e);
      self(self, at + 1, w - e * wt);
    }
    cur[slots[at]] = 0;
  };
  rec(rec, 0, target);
  return out;
}

}  // namespace

OmegaPm omega_pm(const XiContext& a) {
  OmegaPm r;
  r.plus = {a.X()};
  r.minus = {a.one()};
  r.alpha_plus = {a.X()};
  r.alpha_minus = {a.one()};
  r.full = {a.X()};

  for (int k = 1; k <= a.n; ++k) {
    const size_t v = a.xi_index(2 * k);
    const Polynomial Lam = lambda_level(a, k);
    const Polynomial Om = omega_level(a, k);

    // Split off xi_{2k}: Om = xi^2 (previous full)^2 + xi Lam^3 + Z.
    if (Om.degree_in(v) != 2)
      fail(Errc::InternalError, "unexpected xi_{2k} degree in the full product");
    if (!(Om.coeff_of(v, 2) == r.full[k - 1] * r.full[k - 1]))
      fail(Errc::InternalError, "xi_{2k}^2 coefficient of the full product");
    if (!(Om.coeff_of(v, 1) == Lam * Lam * Lam))
      fail(Errc::InternalError, "xi_{2k} coefficient of the full product");
    const Polynomial Z = Om.coeff_of(v, 0);

    // xi_{2k}-free parts of the upper Steenrod derivatives of Lam; their
    // xi_{2k}-linear parts must square the previous level's derivatives.
    std::vector<Polynomial> Lo;
    for (int l = 0; l < k; ++l) {
      Polynomial Li = lambda_i_level(a, k, k + l);
      if (Li.degree_in(v) > 1)
        fail(Errc::InternalError, "Steenrod derivative xi_{2k} degree");
      Polynomial prev = lambda_i_level(a, k - 1, (k - 1) + l);
      if (!(Li.coeff_of(v, 1) == prev * prev))
        fail(Errc::InternalError, "Steenrod derivative xi_{2k} linear part");
      Lo.push_back(Li.coeff_of(v, 0));
    }

    Polynomial Cp = a.zero(), Cm = a.zero();
    for (int l = 0; l < k; ++l) {
      Cp += Lo[l] * r.alpha_plus[l].pow(1ull << (k - l));
      Cm += Lo[l] * r.alpha_minus[l].pow(1ull << (k - l));
    }
    const Polynomial Wp = r.plus[k - 1] * r.plus[k - 1];
    const Polynomial Wm = r.minus[k - 1] * r.minus[k - 1];

    // Cube identity reduced modulo xi_{2k}:
    //   Wp * minus + Wm * plus = Lam^3  =>  Wp a- + Wm a+ = Rt.
    const Polynomial Rt =
        (Lam * Lam * Lam + Wp * Cm + Wm * Cp).divide_exact(Lam);

    // Matching the xi-free part of plus*minus = full gives a quadratic
    // equation for alpha-_k over F2, linear in its coefficients.
    const Polynomial A = Lam * Lam * Wp;
    const Polynomial B = Lam * (Wm * Cp + Wp * Cm + Lam * Rt);
    const Polynomial C = Wm * Cp * Cm + Lam * Cm * Rt + Wm * Z;

    std::vector<std::vector<uint32_t>> cand = alpha_candidates(a, k);
    std::vector<Polynomial> cols;
    cols.reserve(cand.size());
    for (const auto& exps : cand) {
      Monomial m = Monomial::make(*a.table, exps);
      std::vector<uint32_t> sq = exps;
      for (auto& e : sq) e *= 2;
      Monomial m2 = Monomial::make(*a.table, sq);
      cols.push_back(A.times_term(m2, 1) + B.times_term(m, 1));
    }
    F2Solution sol = solve_f2(cols, C);
    if (!sol.consistent)
      fail(Errc::FactorizationMismatch,
           "no candidate for alpha- at level " + std::to_string(k));
    if (sol.kernel_dim > 2)
      fail(Errc::InternalError, "alpha- solution space is too large");

    // Collect the kernel to enumerate every solution of the linear system.
    std::vector<std::vector<uint8_t>> kernel;
    if (sol.kernel_dim > 0) {
      // Re-solve against zero with each free column forced on: cheap since
      // the systems here are tiny (kernel dimension is almost always 0).
      for (size_t fix = 0; fix < cand.size() && kernel.size() < sol.kernel_dim;
           ++fix) {
        F2Solution k0 = solve_f2(cols, cols[fix]);
        if (!k0.consistent) continue;
        std::vector<uint8_t> vec = k0.coeffs;
        vec[fix] ^= 1;
        if (std::any_of(vec.begin(), vec.end(), [](uint8_t b) { return b; }))
          kernel.push_back(vec);
      }
    }

    const uint64_t xm_deg = (1ull << (2 * k - 1)) - (1ull << (k - 1));
    const uint64_t xp_deg = (1ull << (2 * k - 1)) + (1ull << (k - 1));
    bool accepted = false;
    for (uint32_t pick = 0; pick < (1u << kernel.size()) && !accepted; ++pick) {
      std::vector<uint8_t> sel = sol.coeffs;
      for (size_t b = 0; b < kernel.size(); ++b)
        if ((pick >> b) & 1)
          for (size_t j = 0; j < sel.size(); ++j) sel[j] ^= kernel[b][j];
      std::vector<Term> terms;
      for (size_t j = 0; j < cand.size(); ++j)
        if (sel[j]) terms.push_back({Monomial::make(*a.table, cand[j]), 1});
      Polynomial am = Polynomial::from_terms(a.table, Ring::F2, terms);
      if (am.degree_in(a.X_index()) != xm_deg) continue;
      if (!am.coeff_of(a.X_index(), static_cast<uint32_t>(xm_deg)).is_one())
        continue;
      Polynomial ap;
      try {
        ap = (Rt + Wp * am).divide_exact(Wm);
      } catch (const Error&) {
        continue;
      }
      Polynomial xi2k = a.xi(2 * k);
      Polynomial Op = Cp + xi2k * Wp + Lam * ap;
      Polynomial Omm = Cm + xi2k * Wm + Lam * am;
      if (!(Op * Omm == Om)) continue;
      if (Op.degree_in(a.X_index()) != xp_deg ||
          !(Op.coeff_of(a.X_index(), static_cast<uint32_t>(xp_deg)) == Lam))
        continue;
      if (Omm.degree_in(a.X_index()) != xm_deg ||
          !(Omm.coeff_of(a.X_index(), static_cast<uint32_t>(xm_deg)) == Lam))
        continue;
      r.plus.push_back(Op);
      r.minus.push_back(Omm);
      r.alpha_plus.push_back(ap);
      r.alpha_minus.push_back(am);
      r.full.push_back(Om);
      accepted = true;
    }
    if (!accepted)
      fail(Errc::FactorizationMismatch,
           "no factorization of the full product at level " + std::to_string(k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Evaluation and exact expression
// ---------------------------------------------------------------------------

ConcreteImages concrete_images(int n, SpaceKind kind) {
  ConcreteImages ci{SContext::make(n, kind), XiContext::make(n), {}, false};
  std::vector<Polynomial> xi = xi_sequence(ci.s);
  Dickson dk = dickson(ci.s);
  ci.images.assign(ci.a.table->size(), ci.s.zero());
  ci.images[ci.a.t_index()] = ci.s.t();
  ci.images[ci.a.X_index()] = ci.s.X();
  for (int i = 0; i <= 2 * n; ++i) ci.images[ci.a.xi_index(i)] = xi[i];
  for (int j = n; j <= 2 * n - 1; ++j)
    ci.images[ci.a.c_index(j)] = dk.c[j];
  // The d images come from fully expanded products over half the point set,
  // which is only tractable at desk scale.
  if (n <= 2) {
    Chern ch = chern(ci.s);
    for (int j = n; j <= 2 * n - 1; ++j)
      ci.images[ci.a.d_index(j)] = ch.d[j - n];
    ci.has_d = true;
  }
  return ci;
}

Polynomial to_S(const ConcreteImages& ci, const Polynomial& p) {
  if (p.table() != ci.a.table)
    fail(Errc::TableMismatch, "polynomial does not use the abstract table");
  // Bind only the slots that occur, so polynomials that avoid the d range
  // can be evaluated even when the d images were not built.
  std::vector<size_t> vars;
  std::vector<Polynomial> images;
  for (size_t i = 0; i < ci.images.size(); ++i) {
    if (!p.involves(i)) continue;
    const int n = ci.a.n;
    if (!ci.has_d && i >= ci.a.d_index(n) && i <= ci.a.d_index(2 * n - 1))
      fail(Errc::Unsupported, "no concrete values for the d generators here");
    vars.push_back(i);
    images.push_back(ci.images[i]);
  }
  // Constants bind nothing; move them across tables directly.
  if (vars.empty())
    return p.is_zero() ? Polynomial::zero(ci.s.table, p.ring())
                       : Polynomial::constant(ci.s.table, p.ring(),
                                              p.terms().front().coeff);
  return p.substitute(vars, images);
}

namespace {

Polynomial image_of(const ConcreteImages& ci,
                    const std::vector<uint32_t>& exps) {
  return to_S(ci, Polynomial::monomial(ci.a.table, Ring::F2, exps));
}

}  // namespace

Polynomial express_in_xi(const ConcreteImages& ci, const Polynomial& target,
                         const std::vector<size_t>& allowed,
                         const std::vector<size_t>& linear) {
  if (target.table() != ci.s.table)
    fail(Errc::TableMismatch, "target does not use the concrete table");
  if (target.ring() != Ring::F2)
    fail(Errc::RingMismatch, "expression works over F2");
  if (target.is_zero()) return ci.a.zero();
  if (!target.is_homogeneous())
    fail(Errc::NonHomogeneous, "expression needs a homogeneous target");
  const uint64_t w = target.degree();

  auto build = [&](const std::vector<std::vector<uint32_t>>& cand,
                   const std::vector<uint8_t>& sel) {
    std::vector<Term> terms;
    for (size_t j = 0; j < cand.size(); ++j)
      if (sel[j]) terms.push_back({Monomial::make(*ci.a.table, cand[j]), 1});
    return Polynomial::from_terms(ci.a.table, Ring::F2, std::move(terms));
  };
  auto solve = [&](const std::vector<std::vector<uint32_t>>& cand) {
    std::vector<Polynomial> cols;
    cols.reserve(cand.size());
    for (const auto& exps : cand) cols.push_back(image_of(ci, exps));
    return solve_f2(cols, target);
  };

  // A representation without the linear slots is preferred when one exists.
  std::vector<std::vector<uint32_t>> pure =
      weight_monomials(*ci.a.table, allowed, w);
  F2Solution s1 = solve(pure);
  if (s1.kernel_dim > 0)
    fail(Errc::AmbiguousExpression,
         "relation among the allowed generators in degree " + std::to_string(w));
  if (s1.consistent) return build(pure, s1.coeffs);
  if (linear.empty())
    fail(Errc::ExpressionNotInSubring,
         "target of degree " + std::to_string(w) +
         " is not in the allowed subring");

  std::vector<std::vector<uint32_t>> cand = pure;
  for (size_t L : linear) {
    const uint64_t wl = ci.a.table->weight(L);
    if (wl > w) continue;
    for (auto exps : weight_monomials(*ci.a.table, allowed, w - wl)) {
      exps[L] += 1;
      cand.push_back(std::move(exps));
    }
  }
  F2Solution s2 = solve(cand);
  if (!s2.consistent)
    fail(Errc::ExpressionNotInSubring,
         "target of degree " + std::to_string(w) +
         " is not in the allowed subring");
  if (s2.kernel_dim > 0)
    fail(Errc::AmbiguousExpression,
         "multiple representations in degree " + std::to_string(w));
  return build(cand, s2.coeffs);
}

Polynomial abstract_P(const ConcreteImages& ci, bool plus) {
  if (ci.a.n > 2)
    fail(Errc::DimensionTooLarge, "expanded point products stop at n = 2");
  Chern ch = chern(ci.s);
  const Polynomial& P = plus ? ch.Pplus : ch.Pminus;
  std::vector<size_t> allowed;
  const int top = ci.a.n == 1 ? 1 : 2 * ci.a.n - 2;
  for (int i = 0; i <= top; ++i) allowed.push_back(ci.a.xi_index(i));
  std::vector<size_t> lin;
  for (int j = ci.a.n; j <= 2 * ci.a.n - 1; ++j)
    lin.push_back(ci.a.d_index(j));
  Polynomial out = ci.a.zero();
  for (uint32_t k = 0; k <= P.degree_in(ci.s.t_index()); ++k) {
    Polynomial coeff = P.coeff_of(ci.s.t_index(), k);
    if (coeff.is_zero()) continue;
    out += express_in_xi(ci, coeff, allowed, lin) * ci.a.t().pow(k);
  }
  return out;
}

Polynomial abstract_Q(const ConcreteImages& ci, bool plus) {
  if (ci.a.n > 2)
    fail(Errc::DimensionTooLarge, "expanded point products stop at n = 2");
  Chern ch = chern(ci.s);
  const Polynomial& Q = plus ? ch.Qplus : ch.Qminus;
  std::vector<size_t> allowed;
  for (int i = 1; i <= 2 * ci.a.n - 1; ++i) allowed.push_back(ci.a.xi_index(i));
  std::vector<size_t> lin;
  for (int j = ci.a.n; j <= 2 * ci.a.n - 1; ++j)
    lin.push_back(ci.a.c_index(j));
  Polynomial out = ci.a.zero();
  for (uint32_t k = 0; k <= Q.degree_in(ci.s.X_index()); ++k) {
    Polynomial coeff = Q.coeff_of(ci.s.X_index(), k);
    if (coeff.is_zero()) continue;
    out += express_in_xi(ci, coeff, allowed, lin) * ci.a.X().pow(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structured matrices
// ---------------------------------------------------------------------------

namespace {

struct LevelKE {
  PolyMatrix K;
  std::vector<Polynomial> E;
};

// K_1 = [0], E_1 = [xi_1]; K_k has a zero first row, K_{k-1} squared in its
// lower-left block and E_{k-1} squared as the rest of its last column, and
// E_k expresses c_i + sum_j K_k[i][j] c_{k+j} in the xi subring at level k.
LevelKE ke_level(const XiContext& a, int k) {
  LevelKE cur{PolyMatrix(a.table, Ring::F2, 1, 1), {a.xi(1)}};
  for (int lv = 2; lv <= k; ++lv) {
    PolyMatrix K(a.table, Ring::F2, lv, lv);
    for (int i = 1; i < lv; ++i) {
      for (int j = 0; j < lv - 1; ++j)
        K.set(i, j, cur.K.at(i - 1, j) * cur.K.at(i - 1, j));
      K.set(i, lv - 1, cur.E[i - 1] * cur.E[i - 1]);
    }
    ConcreteImages ck = concrete_images(lv, SpaceKind::Odd);
    Dickson dk = dickson(ck.s);
    std::vector<size_t> allowed;
    for (int i = 1; i <= 2 * lv - 1; ++i) allowed.push_back(ck.a.xi_index(i));
    std::vector<Polynomial> E;
    for (int i = 0; i < lv; ++i) {
      Polynomial target = dk.c[i];
      for (int j = 0; j < lv; ++j) {
        const Polynomial& kij = K.at(i, j);
        if (kij.is_zero()) continue;
        target += to_S(ck, transplant(kij, ck.a.table)) * dk.c[lv + j];
      }
      E.push_back(transplant(express_in_xi(ck, target, allowed), a.table));
    }
    cur = {std::move(K), std::move(E)};
  }
  return cur;
}

}  // namespace

KE ke_matrices(const XiContext& a) {
  const int n = a.n;
  if (n < 1 || n > 2)
    fail(Errc::DimensionTooLarge,
         "structured relation matrices are computed for n <= 2");
  PolyMatrix M = xi_matrix(a, 2 * n);
  PolyMatrix L(a.table, Ring::F2, n, n), R(a.table, Ring::F2, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      L.set(i, j, M.at(i, j));
      R.set(i, j, M.at(i, n + j));
    }
  LevelKE ke = ke_level(a, n);
  return {std::move(L), std::move(R), std::move(ke.K), std::move(ke.E)};
}

JF jf_matrices(const XiContext& a) {
  const int n = a.n;
  OmegaPm op = omega_pm(a);
  auto beta = [&](int l) {
    Polynomial s = op.alpha_minus[l].substitute(
        {a.X_index()}, {a.t() * a.t() + a.xi(0)});
    return s.pow(1ull << (n - l));
  };
  PolyMatrix Uraw(a.table, Ring::F2, n, n);
  std::vector<Polynomial> V;
  for (int l = 0; l <= n; ++l) {
    Polynomial b = beta(l);
    for (int j = 0; j < n; ++j) {
      Polynomial coeff =
          b.coeff_of(a.t_index(), (1u << (n + j)) - (1u << n));
      if (l < n)
        Uraw.set(j, l, std::move(coeff));
      else
        V.push_back(std::move(coeff));
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!Uraw.at(j, j).is_one())
      fail(Errc::InternalError, "coefficient matrix is not unitriangular");
    for (int l = 0; l < j; ++l)
      if (!Uraw.at(j, l).is_zero())
        fail(Errc::InternalError, "coefficient matrix is not unitriangular");
  }
  PolyMatrix U = Uraw.map_sqrt_exact();
  PolyMatrix J = U.inverse_upper_unitriangular();
  std::vector<Polynomial> F;
  for (int j = 0; j < n; ++j) {
    Polynomial f = a.zero();
    for (int l = 0; l < n; ++l) f += J.at(j, l) * J.at(j, l) * V[l];
    F.push_back(std::move(f));
  }
  return {std::move(U), std::move(J), std::move(V), std::move(F)};
}

}  // namespace invforge
