// SPDX-License-Identifier: MIT
#include "identities.hpp"

#include <map>

#include "invariants.hpp"
#include "quadforms.hpp"

namespace invforge {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) fail(Errc::IdentityFailed, what);
}

// The half-product construction at level 3 is the one expensive step shared
// by several slow identities; compute it once per level and transplant.
OmegaPm omega_pm_cached(const XiContext& a) {
  static std::map<int, std::pair<XiContext, OmegaPm>> memo;
  auto it = memo.find(a.n);
  if (it == memo.end()) {
    XiContext own = XiContext::make(a.n);
    OmegaPm om = omega_pm(own);
    it = memo.emplace(a.n, std::make_pair(own, std::move(om))).first;
  }
  auto move_all = [&](const std::vector<Polynomial>& v) {
    std::vector<Polynomial> out;
    out.reserve(v.size());
    for (const Polynomial& p : v) out.push_back(transplant(p, a.table));
    return out;
  };
  const OmegaPm& c = it->second.second;
  return OmegaPm{move_all(c.plus), move_all(c.minus), move_all(c.alpha_plus),
                 move_all(c.alpha_minus), move_all(c.full)};
}

Polynomial at_xi0(const XiContext& a, const Polynomial& p) {
  return p.substitute({a.X_index()}, {a.xi(0)});
}

// Substitute zero for the listed slots.
Polynomial killed(const Polynomial& p, const std::vector<size_t>& slots) {
  Polynomial out = p;
  for (size_t s : slots) {
    if (!out.involves(s)) continue;
    out = out.substitute({s}, {Polynomial::zero(out.table(), out.ring())});
  }
  return out;
}

Polynomial odd_X_part(const XiContext& a, const Polynomial& p) {
  Polynomial out = a.zero();
  for (uint32_t k = 1; k <= p.degree_in(a.X_index()); k += 2)
    out += p.coeff_of(a.X_index(), k) * a.X().pow(k);
  return out;
}

// ---------------------------------------------------------------------------
// The identities
// ---------------------------------------------------------------------------

void id_omega_cube(int n) {
  XiContext a = XiContext::make(n);
  OmegaPm om = omega_pm_cached(a);
  check(om.plus[n - 1].pow(2) * om.minus[n] +
                om.minus[n - 1].pow(2) * om.plus[n] ==
            lambda_level(a, n).pow(3),
        "cube formula for the half products");
}

void id_p_squared(int n) {
  SContext s = SContext::make(n, SpaceKind::Odd);
  Chern ch = chern(s);
  Polynomial shift = s.t() * s.t() + s.xi0();
  check(ch.Qplus.substitute({s.X_index()}, {shift}) == ch.Pplus.pow(2),
        "square of the plus linear product");
  check(ch.Qminus.substitute({s.X_index()}, {shift}) == ch.Pminus.pow(2),
        "square of the minus linear product");
  Polynomial d = dickson(s).D;
  check(d.substitute({s.X_index()}, {s.t() + s.x(0)}) ==
            ch.Pplus * ch.Pminus,
        "product of the two linear products");
}

void id_nice_formulae(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  const SContext& s = ci.s;
  OmegaPm om = omega_pm_cached(ci.a);
  Chern ch = chern(s);
  Polynomial shift = s.t() * s.t() + xi_sequence(s)[0];
  auto at_shift = [&](const Polynomial& p) {
    return to_S(ci, p).substitute({s.X_index()}, {shift});
  };
  check(at_shift(om.plus[n - 1]) * ch.Pminus +
                at_shift(om.minus[n - 1]) * ch.Pplus ==
            dickson(s).c[0],
        "cross combination of the half products");
  check(ch.Pplus.coeff_of(s.t_index(), 1) ==
            to_S(ci, at_xi0(ci.a, om.plus[n - 1])),
        "linear coefficient of the plus product");
  check(ch.Pminus.coeff_of(s.t_index(), 1) ==
            to_S(ci, at_xi0(ci.a, om.minus[n - 1])),
        "linear coefficient of the minus product");
}

void id_caroline(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  const SContext& s = ci.s;
  OmegaPm om = omega_pm_cached(ci.a);
  Chern ch = chern(s);
  Polynomial base = to_S(ci, at_xi0(ci.a, om.minus[n - 1]));
  Polynomial shifted =
      to_S(ci, om.minus[n - 1])
          .substitute({s.X_index()}, {s.t() * s.t() + xi_sequence(s)[0]});
  const uint32_t D = (1u << (2 * n - 1)) - (1u << (n - 1));
  const uint64_t W = base.is_zero() ? 0 : base.degree();
  Polynomial tot = total_sq(base);
  Polynomial pm0 = ch.Pminus.coeff_of(s.t_index(), 0);
  for (uint32_t j = 0; j <= D; ++j) {
    Polynomial lhs = tot.component(W + j);
    Polynomial pj = ch.Pminus.coeff_of(s.t_index(), D - j);
    Polynomial ppj =
        (j >= 1 && W + 1 >= j)
            ? shifted.coeff_of(s.t_index(), static_cast<uint32_t>(W + 1 - j))
            : s.zero();
    check(lhs == base * pj + ppj * pm0,
          "derivative formula at index " + std::to_string(j));
  }
}

void id_carolinex(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  const XiContext& a = ci.a;
  OmegaPm om = omega_pm_cached(a);
  Polynomial expr = at_xi0(a, om.minus[n - 2]).pow(2) * a.xi(2 * n - 1) +
                    at_xi0(a, om.minus[n - 1]) * a.d(2 * n - 1) +
                    lambda_level(a, n - 1) * a.d(n);
  std::vector<size_t> allowed;
  for (int i = 0; i <= 2 * n - 2; ++i) allowed.push_back(a.xi_index(i));
  try {
    express_in_xi(ci, to_S(ci, expr), allowed);
  } catch (const Error& e) {
    fail(Errc::IdentityFailed,
         std::string("combination does not drop into the plain subring: ") +
             e.what());
  }
}

void id_omega_vanishing(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  const SContext& s = ci.s;
  OmegaPm om = omega_pm_cached(ci.a);
  Polynomial wplus = to_S(ci, om.plus[n]);
  Polynomial wminus = to_S(ci, om.minus[n]);
  for (const BForm& b : b_set(s, FormType::Plus))
    check(wplus.substitute({s.X_index()}, {b.form}).is_zero(),
          "plus factor does not vanish on its locus");
  for (const BForm& b : b_set(s, FormType::Minus))
    check(wminus.substitute({s.X_index()}, {b.form}).is_zero(),
          "minus factor does not vanish on its locus");
  Polynomial full = to_S(ci, om.full[n]);
  Polynomial q0 = xi_sequence(s)[0] + s.x(0) * s.x(0);
  check(full.substitute({s.X_index()}, {q0}).is_zero(),
        "full product does not vanish at the basepoint form");
}

void id_mis1_restriction(int n) {
  SContext s = SContext::make(n, SpaceKind::Odd);
  Chern ch = chern(s);
  // Restrict to the span of the odd-indexed basis vectors: every other
  // coordinate goes to zero.
  Polynomial r = ch.Qminus.substitute({s.X_index()}, {s.t() * s.t()});
  std::vector<size_t> drop = {s.x_index(0)};
  for (int i = 2; i <= 2 * n; i += 2) drop.push_back(s.x_index(i));
  r = killed(r, drop);
  Polynomial prod = s.one();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    Polynomial lf = s.zero();
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) lf += s.x(2 * b + 1);
    prod *= s.t() + lf;
  }
  check(r == prod.pow(1u << n), "restriction to a maximal singular subspace");
}

void id_middle_of_omega(int n) {
  XiContext a = XiContext::make(n);
  OmegaPm om = omega_pm_cached(a);
  std::vector<size_t> low = {a.X_index()};
  for (int i = 1; i <= n - 1; ++i) low.push_back(a.xi_index(i));
  check(killed(om.plus[n], low) ==
            a.xi(n).pow((1u << (n + 1)) - 1),
        "middle of the plus factor");
  check(killed(om.minus[n], low) == killed(lambda_i_level(a, n, n), low),
        "middle of the minus factor");
  std::vector<size_t> mid;
  for (int i = 1; i <= n; ++i) mid.push_back(a.xi_index(i));
  check(killed(om.minus[n], mid) == a.xi(n + 1).pow((1u << n) - 1),
        "minus factor below the middle");
}

void id_squarexi(int n) {
  for (SpaceKind kind :
       {SpaceKind::Odd, SpaceKind::EvenPlus, SpaceKind::EvenMinus}) {
    SContext s = SContext::make(n, kind);
    std::vector<Polynomial> xi = xi_sequence(s);
    for (int i = 0; i + 1 <= 2 * n; ++i) {
      Polynomial want = xi[i] + xi[i + 1] + xi[i] * xi[i];
      if (i >= 2) want += xi[i - 1] * xi[i - 1];
      check(total_sq(xi[i]) == want,
            "total square of xi" + std::to_string(i) + " on " +
                space_kind_name(kind));
    }
  }
}

void id_wu_dickson(int n) {
  SContext s = SContext::make(n, SpaceKind::Odd);
  Dickson dk = dickson(s);
  const Polynomial& c0 = dk.c[0];
  const uint64_t deg = c0.degree();
  Polynomial tot = total_sq(c0);
  for (uint64_t j = 0; j <= deg; ++j) {
    Polynomial want = s.zero();
    for (int i = 0; i <= 2 * n; ++i)
      if (j == (1u << (2 * n)) - (1u << i)) want = c0 * dk.c[i];
    check(tot.component(deg + j) == want,
          "derivative of the top class at index " + std::to_string(j));
  }
}

void id_lambda_sq_in_S(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  Polynomial lam = lambda_level(ci.a, n);
  check(to_S(ci, lam) == dickson(ci.s).c[0],
        "pfaffian class maps to the top dickson coefficient");
  check(lam.pow(2) == xi_matrix(ci.a, 2 * n).determinant(),
        "square of the pfaffian is the determinant");
}

void id_omega_c0sq_Q(int n) {
  ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
  OmegaPm om = omega_pm_cached(ci.a);
  Chern ch = chern(ci.s);
  Polynomial c0 = dickson(ci.s).c[0];
  check(to_S(ci, om.plus[n]) == c0 * ch.Qplus,
        "plus factor maps to c0 times the plus product");
  check(to_S(ci, om.minus[n]) == c0 * ch.Qminus,
        "minus factor maps to c0 times the minus product");
  check(to_S(ci, om.full[n]) == c0.pow(2) * ch.Qplus * ch.Qminus,
        "full product maps to c0 squared times both products");
}

void id_alpha_odd_part(int n) {
  XiContext a = XiContext::make(n);
  OmegaPm om = omega_pm_cached(a);
  check(odd_X_part(a, om.alpha_plus[n]) ==
            om.plus[n - 1].pow(2) * a.X(),
        "odd part of the plus solution");
  check(odd_X_part(a, om.alpha_minus[n]) ==
            om.minus[n - 1].pow(2) * a.X(),
        "odd part of the minus solution");
}

struct Entry {
  const char* name;
  int min_n;
  int fast_n;
  int slow_n;
  void (*run)(int);
};

constexpr Entry kCatalogue[] = {
    {"omega-cube", 1, 2, 3, id_omega_cube},
    {"p-squared", 1, 2, 2, id_p_squared},
    {"nice-formulae", 1, 2, 2, id_nice_formulae},
    {"caroline", 1, 2, 2, id_caroline},
    {"carolinex", 2, 2, 2, id_carolinex},
    {"omega-vanishing", 1, 2, 2, id_omega_vanishing},
    {"mis1-restriction", 1, 2, 2, id_mis1_restriction},
    {"middle-of-omega", 1, 2, 3, id_middle_of_omega},
    {"squarexi", 1, 2, 3, id_squarexi},
    {"wu-dickson", 1, 2, 2, id_wu_dickson},
    {"lambda-sq-in-S", 1, 2, 3, id_lambda_sq_in_S},
    {"omega-c0sq-Q", 1, 2, 2, id_omega_c0sq_Q},
    {"alpha-odd-part", 1, 2, 2, id_alpha_odd_part},
};

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : kCatalogue)
    if (name == e.name) return e;
  fail(Errc::UnknownIdentity, "no identity named '" + name + "'");
}

}  // namespace

std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (const Entry& e : kCatalogue) out.push_back(e.name);
  return out;
}

int identity_max_level(const std::string& name, bool allow_slow) {
  const Entry& e = find_entry(name);
  return allow_slow ? e.slow_n : e.fast_n;
}

int identity_min_level(const std::string& name) {
  return find_entry(name).min_n;
}

void verify_identity(const std::string& name, int n, bool allow_slow) {
  const Entry& e = find_entry(name);
  if (n < e.min_n)
    fail(Errc::Unsupported,
         "'" + name + "' starts at level " + std::to_string(e.min_n));
  if (n > e.slow_n)
    fail(Errc::Unsupported,
         "'" + name + "' is not available at level " + std::to_string(n));
  if (n > e.fast_n && !allow_slow)
    fail(Errc::Unsupported,
         "level " + std::to_string(n) + " of '" + name +
             "' is gated behind allow-slow");
  e.run(n);
}

}  // namespace invforge
