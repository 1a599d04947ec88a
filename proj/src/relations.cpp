// SPDX-License-Identifier: MIT
#include "relations.hpp"

#include <sstream>

namespace invforge {

namespace {

PolyMatrix transplant_matrix(const PolyMatrix& m, TablePtr target) {
  PolyMatrix out(target, m.ring(), m.rows(), m.cols());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      out.set(r, c, transplant(m.at(r, c), target));
  return out;
}

PolyMatrix colvec(TablePtr table, const std::vector<Polynomial>& v) {
  PolyMatrix out(std::move(table), Ring::F2, v.size(), 1);
  for (size_t i = 0; i < v.size(); ++i) out.set(i, 0, v[i]);
  return out;
}

// Evaluate a polynomial in X at X = xi0.
Polynomial at_xi0(const XiContext& a, const Polynomial& p) {
  return p.substitute({a.X_index()}, {a.xi(0)});
}

// The odd-side linear system A (d_n .. d_{2n-1})^T = rhs with
//   A     = ((L_{n-1} K_{n-1} | L_{n-1} E_{n-1}) + sqrt(R')) J,
//   rhs_i = xi_{2n-1-i}^{2^i} + sqrt of row i of L'E + (L'K + R')F,
// where a prime marks the first row removed.  n - 1 rows, n columns.
struct OddCore {
  PolyMatrix A;
  std::vector<Polynomial> rhs;
};

OddCore odd_core(const XiContext& a) {
  const int n = a.n;
  KE ke = ke_matrices(a);
  JF jf = jf_matrices(a);
  PolyMatrix Lp = ke.L.erased(0, std::nullopt);
  PolyMatrix Rp = ke.R.erased(0, std::nullopt);
  PolyMatrix base(a.table, Ring::F2, n - 1, n);
  if (n >= 2) {
    XiContext low = XiContext::make(n - 1);
    KE kl = ke_matrices(low);
    PolyMatrix lk = transplant_matrix(kl.L * kl.K, a.table);
    PolyMatrix le =
        transplant_matrix(kl.L * colvec(low.table, kl.E), a.table);
    for (int r = 0; r + 1 < n; ++r) {
      for (int c = 0; c + 1 < n; ++c) base.set(r, c, lk.at(r, c));
      base.set(r, n - 1, le.at(r, 0));
    }
  }
  OddCore oc{(base + Rp.map_sqrt_exact()) * jf.J, {}};
  PolyMatrix cons =
      Lp * colvec(a.table, ke.E) + (Lp * ke.K + Rp) * colvec(a.table, jf.F);
  for (int i = 0; i + 1 < n; ++i)
    oc.rhs.push_back(a.xi(2 * n - 1 - i).pow(1u << i) +
                     cons.at(i, 0).sqrt_exact());
  return oc;
}

}  // namespace

RelationSystem relation_system(const XiContext& a, GroupKind g) {
  const int n = a.n;
  if (n > 2)
    fail(Errc::DimensionTooLarge, "relation systems stop at n = 2");
  RelationSystem rs{g,  n,  a, {}, {}, std::nullopt, a.zero(), {},
                    PolyMatrix(a.table, Ring::F2, 0, 0), {}};

  if (g == GroupKind::Sp) {
    KE ke = ke_matrices(a);
    rs.structure = ke.L * ke.K + ke.R;
    for (int i = 1; i <= 2 * n - 1; ++i)
      rs.generators.push_back(a.xi_index(i));
    for (int j = n; j <= 2 * n - 1; ++j) {
      rs.generators.push_back(a.c_index(j));
      rs.unknowns.push_back(a.c_index(j));
    }
    PolyMatrix le = ke.L * colvec(a.table, ke.E);
    for (int i = 0; i < n; ++i) {
      Polynomial row = a.xi(2 * n - i).pow(1u << i) + le.at(i, 0);
      for (int j = 0; j < n; ++j)
        row += rs.structure.at(i, j) * a.c(n + j);
      if (i == 0) {
        // The leading row is linear in the next xi and defines it.
        rs.defined_slot = a.xi_index(2 * n);
        rs.defined_value = row + a.xi(2 * n);
      } else {
        rs.relators.push_back(row);
      }
    }
    rs.checks.push_back(
        {"det(LK+R)", rs.structure.determinant(), lambda_level(a, n)});
    return rs;
  }

  // The three orthogonal kinds share the odd-side core.
  OddCore oc = odd_core(a);
  OmegaPm om = omega_pm(a);
  auto row_poly = [&](int i, bool drop_dn) {
    Polynomial row = oc.rhs[i];
    for (int j = drop_dn ? 1 : 0; j < n; ++j)
      row += oc.A.at(i, j) * a.d(n + j);
    return row;
  };
  // Below the defined xi the chain itself contributes generators; at n = 1
  // there is no defining row on the odd and minus sides, so xi1 stays one.
  const int top = n == 1 ? 1 : 2 * n - 2;

  if (g == GroupKind::OOdd) {
    for (int i = 0; i <= top; ++i) rs.generators.push_back(a.xi_index(i));
    for (int j = n; j <= 2 * n - 1; ++j) {
      rs.generators.push_back(a.d_index(j));
      rs.unknowns.push_back(a.d_index(j));
    }
    rs.structure = oc.A;
    for (int i = 0; i + 1 < n; ++i) {
      Polynomial row = row_poly(i, false);
      if (i == 0) {
        rs.defined_slot = a.xi_index(2 * n - 1);
        rs.defined_value = row + a.xi(2 * n - 1);
      } else {
        rs.relators.push_back(row);
      }
    }
    rs.checks.push_back({"det S",
                         oc.A.erased(std::nullopt, n - 1).determinant(),
                         lambda_level(a, n - 1)});
    rs.checks.push_back({"det T", oc.A.erased(std::nullopt, 0).determinant(),
                         at_xi0(a, om.minus[n - 1])});
    return rs;
  }

  if (g == GroupKind::OMinus) {
    for (int i = 0; i <= top; ++i) rs.generators.push_back(a.xi_index(i));
    for (int j = n + 1; j <= 2 * n - 1; ++j) {
      rs.generators.push_back(a.d_index(j));
      rs.unknowns.push_back(a.d_index(j));
    }
    // The lowest shift coefficient vanishes on the minus space; dropping its
    // column leaves the square system T.
    rs.structure = oc.A.erased(std::nullopt, 0);
    for (int i = 0; i + 1 < n; ++i) {
      Polynomial row = row_poly(i, true);
      if (i == 0) {
        rs.defined_slot = a.xi_index(2 * n - 1);
        rs.defined_value = row + a.xi(2 * n - 1);
      } else {
        rs.relators.push_back(row);
      }
    }
    rs.checks.push_back({"det T", rs.structure.determinant(),
                         at_xi0(a, om.minus[n - 1])});
    if (n >= 2)
      rs.checks.push_back({"det T''",
                           rs.structure.erased(0, n - 2).determinant(),
                           at_xi0(a, om.minus[n - 2]).pow(2)});
    return rs;
  }

  // O-plus: append to the odd rows the row cut out by the vanishing of the
  // plus half product at zero.
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  Polynomial f = transplant(
      abstract_P(ci, true).coeff_of(ci.a.t_index(), 0), a.table);
  PolyMatrix M(a.table, Ring::F2, n, n);
  for (int r = 0; r + 1 < n; ++r)
    for (int c = 0; c < n; ++c) M.set(r, c, oc.A.at(r, c));
  for (int j = 0; j < n; ++j)
    M.set(n - 1, j, f.coeff_of(a.d_index(n + j), 1));

  const int ptop = n == 1 ? 0 : 2 * n - 2;
  for (int i = 0; i <= ptop; ++i) rs.generators.push_back(a.xi_index(i));
  for (int j = n; j <= 2 * n - 1; ++j) {
    rs.generators.push_back(a.d_index(j));
    rs.unknowns.push_back(a.d_index(j));
  }
  rs.structure = M;
  if (n == 1) {
    // The appended row is linear in xi1 and defines it.
    rs.defined_slot = a.xi_index(1);
    rs.defined_value = f + a.xi(1);
  } else {
    Polynomial row0 = row_poly(0, false);
    rs.defined_slot = a.xi_index(2 * n - 1);
    rs.defined_value = row0 + a.xi(2 * n - 1);
    for (int i = 1; i + 1 < n; ++i) rs.relators.push_back(row_poly(i, false));
    rs.relators.push_back(f);
  }
  rs.checks.push_back(
      {"det M", M.determinant(), at_xi0(a, om.plus[n - 1])});
  return rs;
}

void check_relation_system(const RelationSystem& rs) {
  SpaceKind kind = SpaceKind::Odd;
  if (rs.group == GroupKind::OPlus) kind = SpaceKind::EvenPlus;
  if (rs.group == GroupKind::OMinus) kind = SpaceKind::EvenMinus;
  ConcreteImages ci = concrete_images(rs.n, kind);
  auto img = [&](const Polynomial& p) {
    return to_S(ci, transplant(p, ci.a.table));
  };
  if (rs.group == GroupKind::OMinus &&
      !ci.images[ci.a.d_index(rs.n)].is_zero())
    fail(Errc::ResidueNonzero,
         "the lowest shift coefficient does not vanish on the minus space");
  if (rs.defined_slot) {
    Polynomial var =
        Polynomial::variable(rs.a.table, Ring::F2, *rs.defined_slot);
    if (!img(var + rs.defined_value).is_zero())
      fail(Errc::ResidueNonzero, "defining row has a nonzero residue");
  }
  for (size_t i = 0; i < rs.relators.size(); ++i)
    if (!img(rs.relators[i]).is_zero())
      fail(Errc::ResidueNonzero,
           "relator " + std::to_string(i + 1) + " has a nonzero residue");
  for (const DetCheck& c : rs.checks)
    if (!(c.value == c.expected))
      fail(Errc::DeterminantMismatch,
           c.label + " does not match its closed form");
}

std::string relation_system_text(const RelationSystem& rs) {
  std::ostringstream out;
  out << "group " << group_kind_name(rs.group) << " n " << rs.n << "\n";
  out << "generators";
  for (size_t s : rs.generators) out << " " << rs.a.table->name(s);
  out << "\nunknowns";
  for (size_t s : rs.unknowns) out << " " << rs.a.table->name(s);
  out << "\n";
  if (rs.defined_slot)
    out << "defines " << rs.a.table->name(*rs.defined_slot) << " = "
        << rs.defined_value.str() << "\n";
  for (const auto& r : rs.relators) out << "relator " << r.str() << "\n";
  out << "structure " << rs.structure.rows() << "x" << rs.structure.cols()
      << "\n";
  for (size_t i = 0; i < rs.structure.rows(); ++i) {
    out << "row" << i << ":";
    for (size_t j = 0; j < rs.structure.cols(); ++j)
      out << " [" << rs.structure.at(i, j).str() << "]";
    out << "\n";
  }
  for (const auto& c : rs.checks)
    out << "det " << c.label << " = " << c.value.str() << "\n";
  return out.str();
}

}  // namespace invforge
