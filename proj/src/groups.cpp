// SPDX-License-Identifier: MIT
#include "groups.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace invforge {

uint32_t GroupElement::apply(uint32_t v) const {
  uint32_t out = 0;
  for (int i = 0; i < dim; ++i)
    if ((v >> i) & 1u) out ^= rows[i];
  return out;
}

uint64_t GroupElement::key() const {
  uint64_t k = 0;
  for (int i = 0; i < dim; ++i) k |= uint64_t{rows[i]} << (8 * i);
  return k;
}

GroupElement GroupElement::identity(int dim) {
  GroupElement g;
  g.dim = static_cast<uint8_t>(dim);
  for (int i = 0; i < dim; ++i) g.rows[i] = static_cast<uint8_t>(1u << i);
  return g;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (a.dim != b.dim) fail(Errc::DimensionMismatch, "composing maps of different dimension");
  GroupElement out;
  out.dim = a.dim;
  for (int i = 0; i < a.dim; ++i)
    out.rows[i] = static_cast<uint8_t>(a.apply(b.rows[i]));
  return out;
}

int rank(const GroupElement& g) {
  std::vector<uint32_t> rows(g.rows.begin(), g.rows.begin() + g.dim);
  return mask_rank(std::move(rows));
}

GroupElement inverse(const GroupElement& g) {
  // Gauss-Jordan on [g | I].
  int n = g.dim;
  std::vector<uint32_t> a(n), inv(n);
  for (int i = 0; i < n; ++i) {
    a[i] = g.rows[i];
    inv[i] = 1u << i;
  }
  // The stored rows are images of basis vectors; as a matrix this is the
  // transpose, but inverting and transposing commute, so eliminate directly.
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if ((a[r] >> col) & 1u) {
        pivot = r;
        break;
      }
    if (pivot < 0) fail(Errc::DegenerateInput, "map is not invertible");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      if ((a[r] >> col) & 1u) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
    }
  }
  GroupElement out;
  out.dim = g.dim;
  for (int i = 0; i < n; ++i) out.rows[i] = static_cast<uint8_t>(inv[i]);
  return out;
}

SContext group_space(int n, GroupKind kind) {
  switch (kind) {
    case GroupKind::OOdd: return SContext::make(n, SpaceKind::Odd);
    case GroupKind::OPlus: return SContext::make(n, SpaceKind::EvenPlus);
    case GroupKind::OMinus: return SContext::make(n, SpaceKind::EvenMinus);
    case GroupKind::Sp: return SContext::make(n, SpaceKind::EvenPlus);
  }
  fail(Errc::InternalError, "unknown group kind");
}

std::vector<GroupElement> enumerate_group(const SContext& ctx,
                                          GroupKind kind) {
  int dim = ctx.dim();
  if (dim > 5)
    fail(Errc::DimensionTooLarge, "group enumeration is capped at dimension 5");
  bool want_q = kind != GroupKind::Sp;
  if ((kind == GroupKind::OOdd) != (ctx.kind == SpaceKind::Odd) ||
      (kind == GroupKind::OPlus && ctx.kind != SpaceKind::EvenPlus) ||
      (kind == GroupKind::OMinus && ctx.kind != SpaceKind::EvenMinus) ||
      (kind == GroupKind::Sp && ctx.kind == SpaceKind::Odd))
    fail(Errc::TableMismatch, "context does not carry this group kind");

  Polynomial q = ctx.xi0();
  std::vector<uint32_t> gram = polarization(ctx, q);
  uint32_t npts = 1u << dim;
  std::vector<uint8_t> qv(npts, 0);
  for (uint32_t v = 0; v < npts; ++v)
    qv[v] = eval_at_point(ctx, q, v) ? 1 : 0;
  // gv[v] = G v as a mask, so b(u, v) = parity(u & gv[v]).
  std::vector<uint32_t> gv(npts, 0);
  for (uint32_t v = 0; v < npts; ++v)
    for (int j = 0; j < dim; ++j)
      if ((v >> j) & 1u) gv[v] ^= gram[j];
  auto bil = [&](uint32_t u, uint32_t v) {
    return (std::popcount(u & gv[v]) & 1) != 0;
  };

  std::vector<GroupElement> out;
  GroupElement g;
  g.dim = static_cast<uint8_t>(dim);
  // Backtracking over images of basis vectors in mask order keeps the
  // final list sorted lexicographically by rows.
  auto rec = [&](auto&& self, int i) -> void {
    if (i == dim) {
      if (rank(g) == dim) out.push_back(g);
      return;
    }
    for (uint32_t cand = 0; cand < npts; ++cand) {
      if (want_q && qv[cand] != qv[1u << i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (bil(cand, g.rows[j]) != bil(1u << i, 1u << j)) ok = false;
      if (!ok) continue;
      g.rows[i] = static_cast<uint8_t>(cand);
      self(self, i + 1);
    }
    g.rows[i] = 0;
  };
  rec(rec, 0);
  return out;
}

uint64_t group_order_formula(GroupKind kind, int n) {
  if (n < 1 || n > 8) fail(Errc::DimensionTooLarge, "order formula range");
  auto prod4 = [](int upto) {
    uint64_t p = 1;
    for (int j = 1; j <= upto; ++j) p *= (uint64_t{1} << (2 * j)) - 1;
    return p;
  };
  switch (kind) {
    case GroupKind::OOdd:
    case GroupKind::Sp:
      return (uint64_t{1} << (n * n)) * prod4(n);
    case GroupKind::OPlus:
      return (uint64_t{1} << (n * n - n + 1)) * ((uint64_t{1} << n) - 1) *
             prod4(n - 1);
    case GroupKind::OMinus:
      return (uint64_t{1} << (n * n - n + 1)) * ((uint64_t{1} << n) + 1) *
             prod4(n - 1);
  }
  fail(Errc::InternalError, "unknown group kind");
}

uint64_t transvection_count_formula(GroupKind kind, int n) {
  switch (kind) {
    case GroupKind::OOdd:
    case GroupKind::Sp:
      return (uint64_t{1} << (2 * n)) - 1;
    case GroupKind::OPlus:
      return (uint64_t{1} << (2 * n - 1)) - (uint64_t{1} << (n - 1));
    case GroupKind::OMinus:
      return (uint64_t{1} << (2 * n - 1)) + (uint64_t{1} << (n - 1));
  }
  fail(Errc::InternalError, "unknown group kind");
}

namespace {

// For g != 1 with rank(g - 1) = 1, all nonzero rows of g - 1 agree; the mask
// of rows that are nonzero is the fixed hyperplane's normal form phi.
bool transvection_normal(const GroupElement& g, uint32_t* phi) {
  uint32_t common = 0, mask = 0;
  for (int i = 0; i < g.dim; ++i) {
    uint32_t r = g.rows[i] ^ (1u << i);
    if (r == 0) continue;
    if (common == 0)
      common = r;
    else if (common != r)
      return false;
    mask |= 1u << i;
  }
  if (common == 0) return false;  // identity
  *phi = mask;
  return true;
}

}  // namespace

size_t count_transvections(const std::vector<GroupElement>& group) {
  size_t c = 0;
  uint32_t phi;
  for (const auto& g : group)
    if (transvection_normal(g, &phi)) ++c;
  return c;
}

std::map<uint32_t, size_t> transvection_hyperplanes(
    const std::vector<GroupElement>& group) {
  std::map<uint32_t, size_t> hist;
  uint32_t phi;
  for (const auto& g : group)
    if (transvection_normal(g, &phi)) ++hist[phi];
  return hist;
}

Polynomial compose_with(const SContext& ctx, const GroupElement& g,
                        const Polynomial& p) {
  if (g.dim != ctx.dim())
    fail(Errc::DimensionMismatch, "map dimension does not match the space");
  std::vector<size_t> vars;
  std::vector<Polynomial> images;
  for (int i = 0; i < ctx.dim(); ++i) {
    // x_i o g = sum over j with (g e_j)_i = 1 of x_j.
    uint32_t form = 0;
    for (int j = 0; j < ctx.dim(); ++j)
      if ((g.rows[j] >> i) & 1u) form |= 1u << j;
    vars.push_back(ctx.x_index(ctx.x_lo() + i));
    images.push_back(ctx.linear_form(form));
  }
  return p.substitute(vars, images);
}

Polynomial act_on_poly(const SContext& ctx, const GroupElement& g,
                       const Polynomial& p) {
  return compose_with(ctx, inverse(g), p);
}

GroupElement lift_orthogonal(const SContext& odd_ctx, const GroupElement& g) {
  if (odd_ctx.kind != SpaceKind::Odd)
    fail(Errc::WrongParity, "lift target must be an odd space");
  if (odd_ctx.n > 2)
    fail(Errc::DimensionTooLarge, "lifts are computed for n <= 2");
  if (g.dim != 2 * odd_ctx.n)
    fail(Errc::DimensionMismatch, "lift input must act on the even part");
  Polynomial q = odd_ctx.xi0();
  auto qval = [&](uint32_t v) { return eval_at_point(odd_ctx, q, v); };
  GroupElement lift;
  lift.dim = static_cast<uint8_t>(2 * odd_ctx.n + 1);
  lift.rows[0] = 1;  // e0 is fixed
  for (int j = 1; j <= 2 * odd_ctx.n; ++j) {
    uint32_t image = static_cast<uint32_t>(g.rows[j - 1]) << 1;
    bool c = qval(image) != qval(1u << j);
    lift.rows[j] = static_cast<uint8_t>(image | (c ? 1u : 0u));
  }
  if (rank(lift) != lift.dim)
    fail(Errc::NoLiftFound, "corrected map is singular");
  if (!(compose_with(odd_ctx, lift, q) == q))
    fail(Errc::NoLiftFound, "corrected map does not preserve the form");
  return lift;
}

std::vector<GroupElement> generating_set(
    const std::vector<GroupElement>& group) {
  std::vector<GroupElement> gens;
  std::unordered_set<uint64_t> closure;
  std::vector<GroupElement> elems;
  if (group.empty()) return gens;
  GroupElement id = GroupElement::identity(group.front().dim);
  closure.insert(id.key());
  elems.push_back(id);
  for (const auto& g : group) {
    if (closure.contains(g.key())) continue;
    if (gens.size() >= 8)
      fail(Errc::InternalError, "generating set exceeded the expected cap");
    gens.push_back(g);
    // Refresh the closure with the new generator.
    std::vector<GroupElement> frontier = elems;
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& e : frontier)
        for (const auto& h : gens) {
          GroupElement prod = mul(e, h);
          if (closure.insert(prod.key()).second) {
            elems.push_back(prod);
            next.push_back(prod);
          }
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

namespace {

// Degree-d monomials over `nvars` variables, in a fixed deterministic order.
void monomials_rec(int nvars, int degree, std::vector<uint32_t>& cur,
                   std::vector<std::vector<uint32_t>>& out) {
  if (static_cast<int>(cur.size()) == nvars - 1) {
    cur.push_back(static_cast<uint32_t>(degree));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur.push_back(static_cast<uint32_t>(e));
    monomials_rec(nvars, degree - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

size_t invariant_dimension(const SContext& ctx,
                           const std::vector<GroupElement>& generators,
                           int degree) {
  if (degree < 0) fail(Errc::DegenerateInput, "negative degree");
  if (degree > 12) fail(Errc::DegreeTooLarge, "invariant dimension capped at degree 12");
  if (degree == 0) return 1;
  int nvars = ctx.dim();
  std::vector<std::vector<uint32_t>> monos;
  std::vector<uint32_t> cur;
  monomials_rec(nvars, degree, cur, monos);
  // Index of each monomial in the basis.
  std::unordered_map<std::vector<uint32_t>, size_t, decltype([](const std::vector<uint32_t>& v) {
                       size_t h = 1469598103934665603ull;
                       for (uint32_t x : v) {
                         h ^= x;
                         h *= 1099511628211ull;
                       }
                       return h;
                     })>
      index;
  for (size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);

  size_t ncols = monos.size();
  size_t words = (ncols + 63) / 64;
  std::vector<std::vector<uint64_t>> echelon;  // rows with distinct pivots
  std::vector<size_t> pivots;
  size_t rank_count = 0;

  auto add_row = [&](std::vector<uint64_t> row) {
    while (true) {
      size_t pivot = ncols;
      for (size_t w = 0; w < words && pivot == ncols; ++w)
        if (row[w]) pivot = w * 64 + static_cast<size_t>(std::countr_zero(row[w]));
      if (pivot == ncols) return;
      bool reduced = false;
      for (size_t r = 0; r < echelon.size(); ++r) {
        if (pivots[r] == pivot) {
          for (size_t w = 0; w < words; ++w) row[w] ^= echelon[r][w];
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        echelon.push_back(std::move(row));
        pivots.push_back(pivot);
        ++rank_count;
        return;
      }
    }
  };

  for (const auto& g : generators) {
    // Assemble the matrix of p -> (p o g) - p column by column (column k is
    // the image of monomial k), then rank its rows: each row is one
    // coefficient equation, so the kernel is the fixed space of g itself.
    // Ranking the images directly would compute invariants of the dual
    // action instead, which differ in characteristic 2.
    size_t colwords = (monos.size() + 63) / 64;
    std::vector<std::vector<uint64_t>> eqs(ncols,
                                           std::vector<uint64_t>(colwords, 0));
    for (size_t k = 0; k < monos.size(); ++k) {
      Polynomial m = ctx.one();
      for (int v = 0; v < nvars; ++v)
        if (monos[k][v])
          m *= ctx.x(ctx.x_lo() + v).pow(monos[k][v]);
      Polynomial moved = compose_with(ctx, g, m) + m;
      for (const auto& term : moved.terms()) {
        std::vector<uint32_t> e(term.mono.exps.begin() + 2,
                                term.mono.exps.end());
        auto it = index.find(e);
        if (it == index.end())
          fail(Errc::InternalError, "image left the degree component");
        eqs[it->second][k / 64] ^= uint64_t{1} << (k % 64);
      }
    }
    for (auto& row : eqs) add_row(std::move(row));
  }
  return ncols - rank_count;
}

}  // namespace invforge
