// SPDX-License-Identifier: MIT
#include "goldens.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "invariants.hpp"
#include "relations.hpp"

#ifndef INVFORGE_GOLDEN_DIR
#define INVFORGE_GOLDEN_DIR "golden"
#endif

namespace invforge {

namespace {

std::string line(const Polynomial& p) { return p.str() + "\n"; }

std::string render_relation_system(GroupKind g, int n) {
  XiContext a = XiContext::make(n);
  return relation_system_text(relation_system(a, g));
}

// The three recorded expressions over the minimal generating set at n = 2.
std::string render_expressions() {
  ConcreteImages ci = concrete_images(2, SpaceKind::Odd);
  const XiContext& a = ci.a;
  std::vector<size_t> xs = {a.xi_index(1), a.xi_index(2), a.xi_index(3)};
  std::vector<size_t> cs = {a.c_index(2), a.c_index(3)};
  std::vector<Polynomial> xi = xi_sequence(ci.s);
  Dickson dk = dickson(ci.s);
  std::ostringstream out;
  out << "c1 = " << express_in_xi(ci, dk.c[1], xs, cs).str() << "\n";
  out << "c0 = " << express_in_xi(ci, dk.c[0], xs, cs).str() << "\n";
  out << "xi4 = " << express_in_xi(ci, xi[4], xs, cs).str() << "\n";
  return out.str();
}

// The low Dickson coefficients written over the orthogonal generators:
// c_{n+j} = sum_i J[j][i]^2 d_{n+i}^2 + F[j].
std::string render_dickson_in_d() {
  XiContext a = XiContext::make(2);
  JF jf = jf_matrices(a);
  std::ostringstream out;
  for (int j = 0; j < 2; ++j) {
    Polynomial rhs = jf.F[j];
    for (int i = 0; i < 2; ++i)
      rhs += jf.J.at(j, i).pow(2) * a.d(2 + i).pow(2);
    out << "c" << 2 + j << " = " << rhs.str() << "\n";
  }
  return out.str();
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> golden_render_all() {
  std::vector<std::pair<std::string, std::string>> out;
  // Pfaffian classes at levels 1..4.
  for (int k = 1; k <= 4; ++k) {
    XiContext a = XiContext::make(k);
    out.emplace_back("lambda/lambda" + std::to_string(2 * k) + ".txt",
                     line(lambda_level(a, k)));
  }
  // Their recorded Steenrod derivatives (all of levels 1 and 2; i = 1..5 at
  // level 3).
  for (int k = 1; k <= 3; ++k) {
    XiContext a = XiContext::make(k);
    int lo = (k == 3) ? 1 : 0;
    for (int i = 2 * k - 1; i >= lo; --i)
      out.emplace_back("lambda_i/lambda" + std::to_string(2 * k) + "_" +
                           std::to_string(i) + ".txt",
                       line(lambda_i_level(a, k, i)));
  }
  // Full and half products at levels 1 and 2.
  for (int k = 1; k <= 2; ++k) {
    XiContext a = XiContext::make(k);
    std::string base = "omega/omega" + std::to_string(2 * k);
    out.emplace_back(base + ".txt", line(omega_level(a, k)));
    OmegaPm o = omega_pm(a);
    out.emplace_back(base + "_plus.txt", line(o.plus[k]));
    out.emplace_back(base + "_minus.txt", line(o.minus[k]));
  }
  // The alpha family through level 2.
  {
    XiContext a = XiContext::make(2);
    OmegaPm o = omega_pm(a);
    for (int l = 0; l <= 2; ++l) {
      std::string base = "alpha/alpha" + std::to_string(l);
      out.emplace_back(base + "_plus.txt", line(o.alpha_plus[l]));
      out.emplace_back(base + "_minus.txt", line(o.alpha_minus[l]));
    }
  }
  // Shift-family products with abstract coefficients.
  for (int n = 1; n <= 2; ++n) {
    ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
    std::string base = "chern/n" + std::to_string(n) + "/";
    out.emplace_back(base + "Pplus.txt", line(abstract_P(ci, true)));
    out.emplace_back(base + "Pminus.txt", line(abstract_P(ci, false)));
    out.emplace_back(base + "Qplus.txt", line(abstract_Q(ci, true)));
    out.emplace_back(base + "Qminus.txt", line(abstract_Q(ci, false)));
  }
  out.emplace_back("chern/n2/expressions.txt", render_expressions());
  out.emplace_back("chern/n2/dickson_in_d.txt", render_dickson_in_d());
  // Presentations of all four families at n = 1, 2.
  for (GroupKind g : {GroupKind::OOdd, GroupKind::OPlus, GroupKind::OMinus,
                      GroupKind::Sp})
    for (int n = 1; n <= 2; ++n)
      out.emplace_back(std::string("relations/") + group_kind_name(g) + "_n" +
                           std::to_string(n) + ".txt",
                       render_relation_system(g, n));
  return out;
}

void golden_check(const std::string& dir) {
  std::string bad;
  size_t nbad = 0;
  for (const auto& [rel, content] : golden_render_all()) {
    auto have = read_file(std::filesystem::path(dir) / rel);
    if (have && *have == content) continue;
    ++nbad;
    if (!bad.empty()) bad += ", ";
    bad += rel;
    bad += have ? " (differs)" : " (missing)";
  }
  if (nbad > 0)
    fail(Errc::GoldenMismatch,
         std::to_string(nbad) + " golden file(s) out of date: " + bad);
}

std::vector<GoldenDiff> golden_regenerate(const std::string& dir) {
  std::vector<GoldenDiff> diffs;
  for (const auto& [rel, content] : golden_render_all()) {
    std::filesystem::path p = std::filesystem::path(dir) / rel;
    GoldenDiff d;
    d.path = rel;
    d.new_bytes = content.size();
    auto old = read_file(p);
    if (!old) {
      d.created = true;
      d.changed = true;
    } else {
      d.old_bytes = old->size();
      d.changed = (*old != content);
    }
    std::filesystem::create_directories(p.parent_path());
    std::ofstream outf(p, std::ios::binary | std::ios::trunc);
    if (!outf) fail(Errc::InternalError, "cannot write " + p.string());
    outf << content;
    diffs.push_back(std::move(d));
  }
  return diffs;
}

std::string golden_default_dir() { return INVFORGE_GOLDEN_DIR; }

}  // namespace invforge
